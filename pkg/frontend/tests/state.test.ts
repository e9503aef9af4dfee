import { describe, expect, it } from "vitest";

import { ViewState } from "../src/state.js";

const EDIT = { a: "M01", b: "M02", criterion: "accessibility", proposals: [3] };

describe("ViewState", () => {
  it("clears pending edits on a successful patch", () => {
    const state = new ViewState();
    state.revision = 1;
    state.queue(EDIT);
    expect(state.pending).toHaveLength(1);
    state.onPatchSuccess(2);
    expect(state.pending).toEqual([]);
    expect(state.revision).toBe(2);
    expect(state.conflict).toBeNull();
  });

  it("clears pending edits on a 409-triggered refresh and keeps the edit for confirmation", () => {
    const state = new ViewState();
    state.revision = 1;
    state.queue(EDIT);
    state.onConflictRefresh(5, EDIT);
    expect(state.pending).toEqual([]);
    expect(state.revision).toBe(5);
    expect(state.conflict).toEqual(EDIT);
    expect(state.takeConflict()).toEqual(EDIT);
    expect(state.conflict).toBeNull();
  });

  it("starts on the msasm grid view", () => {
    expect(new ViewState().activeView).toBe("msasm_grid");
  });
});
