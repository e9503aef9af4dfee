// Browser entry point: tab navigation and event wiring around the renderers.
// Everything displayed comes from API responses; see controller.ts for the
// revision/conflict protocol.

import { ApiClient, ApiFailure } from "./api.js";
import type { CriterionInfo, ProjectEnvelope } from "./api.js";
import { WhatIfBoard, renderBoard } from "./clusters.js";
import { WorkbenchController } from "./controller.js";
import { renderBottlenecks, renderHeatmap } from "./heatmap.js";
import { parseProposals } from "./state.js";
import type { View } from "./state.js";
import { renderConceptRanking, renderIssueBoard } from "./views.js";

const api = new ApiClient("");
const controller = new WorkbenchController(api);

const app = document.getElementById("app")!;
const banner = document.getElementById("banner")!;

function showBanner(text: string, kind: "error" | "info" = "error"): void {
  banner.textContent = text;
  banner.className = `banner ${kind}`;
  banner.hidden = false;
  setTimeout(() => {
    banner.hidden = true;
  }, 6000);
}

function anchorsPrompt(criterion: CriterionInfo | undefined): string {
  if (!criterion || !criterion.anchors) {
    return "Scores: 1 (optimal) to 5 (poor). Enter one value or a split like 2,4.";
  }
  const lines = Object.entries(criterion.anchors)
    .sort(([a], [b]) => Number(a) - Number(b))
    .map(([score, text]) => `${score} = ${text}`);
  return `${criterion.name}\n${lines.join("\n")}\nEnter one value or a split like 2,4.`;
}

async function showMsasm(): Promise<void> {
  const report = controller.report ?? (await controller.loadMsasm());
  app.innerHTML =
    `<h2>Module set assembly strategy</h2>${renderHeatmap(report)}` +
    `<h2>Bottlenecks</h2>${renderBottlenecks(report)}`;
  for (const cell of app.querySelectorAll<HTMLTableCellElement>("td.cell")) {
    cell.addEventListener("click", async () => {
      const setKey = cell.dataset.set;
      const criterionId = cell.dataset.criterion;
      if (!setKey || !criterionId || !controller.report) {
        return;
      }
      const criterion = controller.report.criteria.find((c) => c.id === criterionId);
      const input = window.prompt(anchorsPrompt(criterion));
      if (input === null) {
        return;
      }
      let proposals: number[];
      try {
        proposals = parseProposals(input);
      } catch (error) {
        showBanner((error as Error).message);
        return;
      }
      const [a, b] = setKey.split("-");
      await submitEdit({ a, b, criterion: criterionId, proposals });
    });
  }
}

async function submitEdit(edit: { a: string; b: string; criterion: string; proposals: number[] }): Promise<void> {
  try {
    const outcome = await controller.submitScore(edit);
    if (outcome.status === "conflict") {
      await showMsasm();
      const retry = window.confirm(
        `Someone else changed the project (${outcome.message}).\nThe grid was refreshed; apply your edit on top?`,
      );
      if (retry) {
        await controller.confirmConflictEdit();
      } else {
        controller.state.takeConflict();
      }
    }
    await showMsasm();
  } catch (error) {
    showBanner(error instanceof ApiFailure ? `${error.code}: ${error.message}` : String(error));
  }
}

async function showConcepts(): Promise<void> {
  const mode = (document.querySelector<HTMLInputElement>("input[name=mode]:checked")?.value ?? "pugh") as
    | "pugh"
    | "numeric";
  const response = await api.evaluateConcepts(mode);
  app.innerHTML =
    `<h2>Concept ranking</h2>` +
    `<form id="mode-form">` +
    `<label><input type="radio" name="mode" value="pugh" ${mode === "pugh" ? "checked" : ""}/> Pugh</label>` +
    `<label><input type="radio" name="mode" value="numeric" ${mode === "numeric" ? "checked" : ""}/> numeric</label>` +
    `</form>` +
    renderConceptRanking(response);
  document.getElementById("mode-form")!.addEventListener("change", () => void showConcepts());
}

async function showAdcd(): Promise<void> {
  const response = await api.adcdIssues();
  app.innerHTML = `<h2>Assembly directions and connections</h2>${renderIssueBoard(response)}`;
}

let board: WhatIfBoard | null = null;
let envelope: ProjectEnvelope | null = null;

async function showClusters(): Promise<void> {
  if (!board || !envelope) {
    envelope = await api.getProject();
    board = new WhatIfBoard(envelope.project.modules);
    await board.priceBaseline(api);
  }
  app.innerHTML =
    `<h2>What-if regrouping</h2>` +
    `<p>Select a solution, then a destination module. Apply commits the regrouping.</p>` +
    renderBoard(board) +
    `<button id="apply">apply regrouping</button> <button id="reset">reset</button>`;
  let picked: string | null = null;
  for (const item of app.querySelectorAll<HTMLLIElement>("li.solution")) {
    item.addEventListener("click", () => {
      picked = item.dataset.solution ?? null;
      for (const other of app.querySelectorAll("li.solution")) {
        other.classList.toggle("picked", other === item);
      }
    });
  }
  for (const block of app.querySelectorAll<HTMLDivElement>("div.block")) {
    block.addEventListener("click", async (event) => {
      if (!picked || !board || (event.target as HTMLElement).classList.contains("solution")) {
        return;
      }
      if (board.move(picked, block.dataset.module ?? "")) {
        picked = null;
        try {
          await board.priceCurrent(api);
        } catch (error) {
          showBanner(error instanceof ApiFailure ? error.message : String(error));
        }
        await showClusters();
      }
    });
  }
  document.getElementById("apply")!.addEventListener("click", async () => {
    if (!board || !envelope) {
      return;
    }
    try {
      const updated = board.applyTo(envelope.project);
      const response = await api.putProject(envelope.revision, updated);
      showBanner(`regrouping applied (revision ${response.revision})`, "info");
      envelope = null;
      board = null;
      await showClusters();
    } catch (error) {
      showBanner(error instanceof ApiFailure ? `${error.code}: ${error.message}` : String(error));
      envelope = null;
      board = null;
      await showClusters();
    }
  });
  document.getElementById("reset")!.addEventListener("click", async () => {
    envelope = null;
    board = null;
    await showClusters();
  });
}

const viewRenderers: Record<View, () => Promise<void>> = {
  msasm_grid: showMsasm,
  adcd_board: showAdcd,
  concepts: showConcepts,
  clusters: showClusters,
};

for (const tab of document.querySelectorAll<HTMLButtonElement>("nav button")) {
  tab.addEventListener("click", async () => {
    const view = tab.dataset.view as View;
    controller.state.activeView = view;
    for (const other of document.querySelectorAll("nav button")) {
      other.classList.toggle("active", other === tab);
    }
    try {
      await viewRenderers[view]();
    } catch (error) {
      showBanner(error instanceof ApiFailure ? `${error.code}: ${error.message}` : String(error));
    }
  });
}

void showMsasm().catch((error) =>
  showBanner(`cannot reach the engine: ${error instanceof Error ? error.message : error}`),
);
