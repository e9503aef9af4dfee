// Client-side session state: the revision token, the active view, and the
// buffer of edits awaiting server confirmation.

import type { ScoreEdit } from "./api.js";

export type View = "msasm_grid" | "adcd_board" | "concepts" | "clusters";

export class ViewState {
  revision = 0;
  activeView: View = "msasm_grid";
  pending: ScoreEdit[] = [];
  // An edit bounced by a 409 is re-presented for confirmation after refresh.
  conflict: ScoreEdit | null = null;

  queue(edit: ScoreEdit): void {
    this.pending.push(edit);
  }

  onPatchSuccess(revision: number): void {
    this.revision = revision;
    this.pending = [];
    this.conflict = null;
  }

  onConflictRefresh(revision: number, edit: ScoreEdit): void {
    this.revision = revision;
    this.pending = [];
    this.conflict = edit;
  }

  takeConflict(): ScoreEdit | null {
    const edit = this.conflict;
    this.conflict = null;
    return edit;
  }
}

// Score entry accepts one or more proposals ("3" or "2,4" for a split
// opinion); anything outside the 1-5 ordinal scale is blocked client-side.
export function parseProposals(text: string): number[] {
  const parts = text.split(/[,\s;]+/).filter((p) => p.length > 0);
  if (parts.length === 0) {
    throw new Error("enter at least one score (1-5)");
  }
  const proposals = parts.map((p) => Number(p));
  for (const value of proposals) {
    if (!Number.isInteger(value) || value < 1 || value > 5) {
      throw new Error(`score ${value} is outside the 1-5 scale`);
    }
  }
  return proposals;
}
