// Orchestration between the API client, the session state, and the renderers.
// Mutations follow the optimistic-concurrency protocol: send the last seen
// revision, and on 409 refresh to the server state and re-present the edit.

import { ApiClient, ApiFailure } from "./api.js";
import type { MsasmReport, ScoreEdit } from "./api.js";
import { ViewState } from "./state.js";

export type EditOutcome = { status: "applied" } | { status: "conflict"; message: string };

export class WorkbenchController {
  report: MsasmReport | null = null;

  constructor(
    public api: ApiClient,
    public state: ViewState = new ViewState(),
  ) {}

  async loadMsasm(): Promise<MsasmReport> {
    this.report = await this.api.msasmReport();
    this.state.revision = this.report.revision;
    return this.report;
  }

  async submitScore(edit: ScoreEdit): Promise<EditOutcome> {
    this.state.queue(edit);
    try {
      const response = await this.api.patchScores(this.state.revision, [edit]);
      this.state.onPatchSuccess(response.revision);
      if (this.report) {
        this.report = {
          ...this.report,
          revision: response.revision,
          aggregates: response.aggregates,
          bottlenecks: response.bottlenecks,
          unscored_sets: this.report.unscored_sets.filter(
            (ms) => !response.aggregates.some((a) => a.set === ms.set),
          ),
        };
      }
      return { status: "applied" };
    } catch (error) {
      if (error instanceof ApiFailure && error.status === 409) {
        // Refresh to the server's truth; the edit waits for confirmation.
        this.report = await this.api.msasmReport();
        this.state.onConflictRefresh(this.report.revision, edit);
        return { status: "conflict", message: error.message };
      }
      this.state.pending = this.state.pending.filter((p) => p !== edit);
      throw error;
    }
  }

  async confirmConflictEdit(): Promise<EditOutcome | null> {
    const edit = this.state.takeConflict();
    if (!edit) {
      return null;
    }
    return this.submitScore(edit);
  }
}
