// What-if module regrouping. The board holds a working copy of the module
// structure; every tentative arrangement is priced by the engine (objective
// only, nothing persisted) and the delta against the baseline is shown.
// An explicit apply writes the regrouped modules back through PUT.

import type { ApiClient, ProjectDocument } from "./api.js";
import { escapeHtml } from "./heatmap.js";

export interface BlockModel {
  id: string;
  name: string;
  members: string[];
}

export class WhatIfBoard {
  blocks: BlockModel[];
  baseline: number | null = null;
  current: number | null = null;

  constructor(modules: { id: string; name: string; members: string[] }[]) {
    this.blocks = modules.map((m) => ({ id: m.id, name: m.name, members: [...m.members] }));
  }

  partition(): string[][] {
    return this.blocks.filter((b) => b.members.length > 0).map((b) => [...b.members]);
  }

  locate(solution: string): number {
    return this.blocks.findIndex((b) => b.members.includes(solution));
  }

  move(solution: string, targetId: string): boolean {
    const from = this.locate(solution);
    const to = this.blocks.findIndex((b) => b.id === targetId);
    if (from < 0 || to < 0 || from === to) {
      return false;
    }
    this.blocks[from].members = this.blocks[from].members.filter((s) => s !== solution);
    this.blocks[to].members.push(solution);
    this.blocks[to].members.sort();
    return true;
  }

  async priceBaseline(api: ApiClient): Promise<number> {
    const response = await api.evaluatePartition(this.partition());
    this.baseline = response.objective;
    this.current = response.objective;
    return response.objective;
  }

  async priceCurrent(api: ApiClient): Promise<number> {
    const response = await api.evaluatePartition(this.partition());
    this.current = response.objective;
    return response.objective;
  }

  delta(): number | null {
    if (this.baseline === null || this.current === null) {
      return null;
    }
    return this.current - this.baseline;
  }

  applyTo(project: ProjectDocument): ProjectDocument {
    const modules = this.blocks
      .filter((b) => b.members.length > 0)
      .map((b) => ({ id: b.id, name: b.name, members: [...b.members].sort() }));
    return { ...project, modules };
  }
}

export function renderBoard(board: WhatIfBoard): string {
  const blocks = board.blocks
    .map((b) => {
      const members = b.members.map((s) => `<li class="solution" data-solution="${escapeHtml(s)}">${escapeHtml(s)}</li>`).join("");
      return `<div class="block" data-module="${escapeHtml(b.id)}"><h3>${escapeHtml(b.id)} ${escapeHtml(b.name)}</h3><ul>${members}</ul></div>`;
    })
    .join("");
  const delta = board.delta();
  const deltaText =
    delta === null ? "" : `<p class="delta ${delta >= 0 ? "gain" : "loss"}">objective delta: ${delta.toFixed(4)}</p>`;
  return `<div class="whatif">${blocks}</div>${deltaText}`;
}
