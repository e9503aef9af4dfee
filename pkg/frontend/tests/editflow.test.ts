// Score editing over the optimistic-concurrency protocol: success applies
// the server's refreshed aggregates; a 409 refreshes to server state and
// re-presents the edit for confirmation.

import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { WorkbenchController } from "../src/controller.js";
import { renderHeatmap } from "../src/heatmap.js";
import { parseProposals } from "../src/state.js";
import { aggregate, fixtureReport, makeFetch } from "./helpers.js";

function patchedReport() {
  const report = fixtureReport();
  const patched = aggregate({
    set: "M01-M04",
    total: 4,
    mean: 4.0,
    band: "critical",
    colour: "red",
    missing_criteria: ["attachment_interface_connections", "assembly_direction", "tool_requirements", "force_intensity", "connector_destruction"],
    cells: {
      accessibility: { score: 4, provenance: "conservative_default", note: "split opinion [2, 4]; worst case kept" },
    },
  });
  return { aggregates: [...report.aggregates, patched], bottlenecks: [patched, ...report.bottlenecks] };
}

describe("submitScore", () => {
  it("applies a split-opinion edit and shows the server-confirmed value with a conservative marker", async () => {
    const refreshed = patchedReport();
    const { fetchFn, calls } = makeFetch([
      { method: "GET", path: "/api/msasm/report", body: fixtureReport() },
      {
        method: "PATCH",
        path: "/api/msasm/scores",
        body: {
          revision: 2,
          records: [
            { set: "M01-M04", criterion: "accessibility", score: 4, provenance: "conservative_default", note: "split opinion [2, 4]; worst case kept" },
          ],
          aggregates: refreshed.aggregates,
          bottlenecks: refreshed.bottlenecks,
        },
      },
    ]);
    const controller = new WorkbenchController(new ApiClient("", fetchFn));
    await controller.loadMsasm();

    const outcome = await controller.submitScore({
      a: "M01",
      b: "M04",
      criterion: "accessibility",
      proposals: [2, 4],
    });

    expect(outcome.status).toBe("applied");
    const patch = calls.find((c) => c.method === "PATCH");
    expect(patch?.body).toEqual({
      revision: 1,
      scores: [{ a: "M01", b: "M04", criterion: "accessibility", proposals: [2, 4] }],
    });
    expect(controller.state.revision).toBe(2);
    expect(controller.state.pending).toEqual([]);

    const html = renderHeatmap(controller.report!);
    const cell = html.match(/<td[^>]*data-set="M01-M04"[^>]*data-criterion="accessibility"[^>]*>.*?<\/td>/);
    expect(cell?.[0]).toContain(">4<");
    expect(cell?.[0]).toContain("conservative");
    // the formerly unscored set now renders as a scored row
    expect(html).not.toContain('class="unscored" data-set="M01-M04"');
  });

  it("on 409 refreshes to the server state and re-presents the edit", async () => {
    const serverTruth = fixtureReport();
    serverTruth.revision = 5;
    const afterConfirm = patchedReport();
    const { fetchFn, calls } = makeFetch([
      { method: "GET", path: "/api/msasm/report", body: fixtureReport() },
      {
        method: "PATCH",
        path: "/api/msasm/scores",
        status: 409,
        body: { code: "stale_revision", message: "revision 1 is stale (current is 5)", details: null },
      },
      { method: "GET", path: "/api/msasm/report", body: serverTruth },
      {
        method: "PATCH",
        path: "/api/msasm/scores",
        body: { revision: 6, records: [], aggregates: afterConfirm.aggregates, bottlenecks: afterConfirm.bottlenecks },
      },
    ]);
    const controller = new WorkbenchController(new ApiClient("", fetchFn));
    await controller.loadMsasm();

    const edit = { a: "M01", b: "M04", criterion: "accessibility", proposals: [2, 4] };
    const outcome = await controller.submitScore(edit);

    expect(outcome.status).toBe("conflict");
    // converged to the server's truth: revision and report match the refetch
    expect(controller.state.revision).toBe(5);
    expect(controller.report!.revision).toBe(5);
    expect(controller.state.pending).toEqual([]);
    expect(controller.state.conflict).toEqual(edit);

    const confirmed = await controller.confirmConflictEdit();
    expect(confirmed?.status).toBe("applied");
    expect(controller.state.revision).toBe(6);
    const retry = calls.filter((c) => c.method === "PATCH")[1];
    expect((retry.body as { revision: number }).revision).toBe(5);
  });
});

describe("parseProposals", () => {
  it("accepts single and split entries", () => {
    expect(parseProposals("3")).toEqual([3]);
    expect(parseProposals("2,4")).toEqual([2, 4]);
    expect(parseProposals("2, 4 5")).toEqual([2, 4, 5]);
  });

  it("blocks out-of-range input before any request", () => {
    expect(() => parseProposals("7")).toThrow(/1-5/);
    expect(() => parseProposals("0")).toThrow(/1-5/);
    expect(() => parseProposals("2.5")).toThrow(/1-5/);
    expect(() => parseProposals("")).toThrow();
  });
});
