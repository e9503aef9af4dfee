// Typed client for the mfdx HTTP API. Every number the UI shows comes out of
// these responses; the client never derives bands, totals, or objectives.

export interface CellInfo {
  score: number;
  provenance: string;
  note: string | null;
}

export interface AggregateRow {
  set: string;
  a: string;
  b: string;
  total: number;
  mean: number;
  band: string;
  colour: string;
  missing_criteria: string[];
  cells: Record<string, CellInfo>;
}

export interface CriterionInfo {
  id: string;
  name: string;
  anchors: Record<string, string> | null;
}

export interface MsasmReport {
  revision: number;
  criteria: CriterionInfo[];
  aggregates: AggregateRow[];
  bottlenecks: AggregateRow[];
  unscored_sets: { set: string; a: string; b: string }[];
}

export interface ScoreEdit {
  a: string;
  b: string;
  criterion: string;
  proposals: number[];
}

export interface PatchScoresResponse {
  revision: number;
  records: { set: string; criterion: string; score: number; provenance: string; note: string | null }[];
  aggregates: AggregateRow[];
  bottlenecks: AggregateRow[];
}

export interface ProjectEnvelope {
  revision: number;
  project: ProjectDocument;
}

// The project document is engine-owned; the UI treats it as opaque except for
// the module list it rearranges in what-if mode.
export interface ProjectDocument {
  name: string;
  modules: { id: string; name: string; members: string[] }[];
  [key: string]: unknown;
}

export interface ClusterResponse {
  revision: number;
  partition: string[][];
  objective: number;
  trace?: unknown[];
}

export interface ConceptRankingResponse {
  revision: number;
  mode: "pugh" | "numeric";
  ranking: { concept: string; net?: number; total?: number }[];
}

export interface IssueEntry {
  kind: string;
  location: string | null;
  severity: string;
  message: string;
}

export interface AdcdIssuesResponse {
  revision: number;
  validation: { severity: string; path: string; message: string }[];
  issues: IssueEntry[];
  sequence: { steps: { module: string; direction: string }[]; reorientations: number } | null;
}

export class ApiFailure extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public details: unknown = null,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (input, init) => globalThis.fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "content-type": "application/json" } };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.baseUrl + path, init);
    const payload = await response.json().catch(() => null);
    if (!response.ok) {
      const code = payload && typeof payload.code === "string" ? payload.code : "unknown";
      const message = payload && typeof payload.message === "string" ? payload.message : response.statusText;
      throw new ApiFailure(response.status, code, message, payload ? payload.details : null);
    }
    return payload as T;
  }

  getProject(): Promise<ProjectEnvelope> {
    return this.request("GET", "/api/project");
  }

  putProject(revision: number, project: ProjectDocument): Promise<{ revision: number }> {
    return this.request("PUT", "/api/project", { revision, project });
  }

  patchScores(revision: number, scores: ScoreEdit[]): Promise<PatchScoresResponse> {
    return this.request("PATCH", "/api/msasm/scores", { revision, scores });
  }

  msasmReport(): Promise<MsasmReport> {
    return this.request("GET", "/api/msasm/report");
  }

  adcdIssues(): Promise<AdcdIssuesResponse> {
    return this.request("GET", "/api/adcd/issues");
  }

  evaluateConcepts(mode: "pugh" | "numeric"): Promise<ConceptRankingResponse> {
    return this.request("POST", "/api/concepts/evaluate", { mode });
  }

  proposeCluster(options: { lambda?: number; max_blocks?: number | null; seed?: number }): Promise<ClusterResponse> {
    return this.request("POST", "/api/cluster/propose", options);
  }

  evaluatePartition(partition: string[][]): Promise<ClusterResponse> {
    return this.request("POST", "/api/cluster/propose", { partition });
  }
}
