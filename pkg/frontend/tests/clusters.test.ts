// What-if regrouping: tentative partitions are priced by the engine only;
// the board never computes objectives itself.

import { describe, expect, it } from "vitest";

import { ApiClient, ApiFailure } from "../src/api.js";
import { WhatIfBoard, renderBoard } from "../src/clusters.js";
import { makeFetch } from "./helpers.js";

const MODULES = [
  { id: "M01", name: "Housing", members: ["TS01"] },
  { id: "M02", name: "Drive", members: ["TS02", "TS09"] },
];

describe("WhatIfBoard", () => {
  it("prices a no-op arrangement with delta 0", async () => {
    const { fetchFn, calls } = makeFetch([
      { method: "POST", path: "/api/cluster/propose", body: { revision: 1, partition: [["TS01"], ["TS02", "TS09"]], objective: 2.25 } },
      { method: "POST", path: "/api/cluster/propose", body: { revision: 1, partition: [["TS01"], ["TS02", "TS09"]], objective: 2.25 } },
    ]);
    const api = new ApiClient("", fetchFn);
    const board = new WhatIfBoard(MODULES);
    await board.priceBaseline(api);
    await board.priceCurrent(api);
    expect(board.delta()).toBe(0);
    expect(calls[0].body).toEqual({ partition: [["TS01"], ["TS02", "TS09"]] });
  });

  it("moves a solution and reports the engine objective delta", async () => {
    const { fetchFn, calls } = makeFetch([
      { method: "POST", path: "/api/cluster/propose", body: { revision: 1, partition: [], objective: 2.0 } },
      { method: "POST", path: "/api/cluster/propose", body: { revision: 1, partition: [], objective: 3.5 } },
    ]);
    const api = new ApiClient("", fetchFn);
    const board = new WhatIfBoard(MODULES);
    await board.priceBaseline(api);
    expect(board.move("TS09", "M01")).toBe(true);
    await board.priceCurrent(api);
    expect(board.delta()).toBeCloseTo(1.5, 12);
    expect(calls[1].body).toEqual({ partition: [["TS01", "TS09"], ["TS02"]] });
    const html = renderBoard(board);
    expect(html).toContain("objective delta: 1.5000");
    expect(html).toContain('class="delta gain"');
  });

  it("surfaces a coverage mismatch from the engine", async () => {
    const { fetchFn } = makeFetch([
      {
        method: "POST",
        path: "/api/cluster/propose",
        status: 422,
        body: { code: "coverage_mismatch", message: "partition covers [...] but the project has [...]", details: null },
      },
    ]);
    const api = new ApiClient("", fetchFn);
    const board = new WhatIfBoard([{ id: "M01", name: "Housing", members: ["TS01"] }]);
    await expect(board.priceBaseline(api)).rejects.toMatchObject({ code: "coverage_mismatch", status: 422 });
  });

  it("applies the regrouping onto the project document for PUT", () => {
    const board = new WhatIfBoard(MODULES);
    board.move("TS09", "M01");
    const updated = board.applyTo({ name: "p", modules: MODULES });
    expect(updated.modules).toEqual([
      { id: "M01", name: "Housing", members: ["TS01", "TS09"] },
      { id: "M02", name: "Drive", members: ["TS02"] },
    ]);
  });

  it("drops emptied modules from the applied document", () => {
    const board = new WhatIfBoard(MODULES);
    board.move("TS01", "M02");
    const updated = board.applyTo({ name: "p", modules: MODULES });
    expect(updated.modules.map((m) => m.id)).toEqual(["M02"]);
  });
});
