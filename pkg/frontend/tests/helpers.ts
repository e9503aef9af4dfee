// Test doubles: a route-table fetch and canned engine payloads. The payload
// numbers mirror what the engine serves for the bundled fixtures; the UI
// must repeat them verbatim.

import type { AggregateRow, MsasmReport } from "../src/api.js";

export type Route = {
  method: string;
  path: string;
  status?: number;
  body: unknown;
};

export interface RecordedCall {
  method: string;
  path: string;
  body: unknown;
}

export function makeFetch(routes: Route[]): {
  fetchFn: (input: string, init?: RequestInit) => Promise<Response>;
  calls: RecordedCall[];
} {
  const queue = [...routes];
  const calls: RecordedCall[] = [];
  const fetchFn = async (input: string, init?: RequestInit): Promise<Response> => {
    const method = init?.method ?? "GET";
    calls.push({ method, path: input, body: init?.body ? JSON.parse(init.body as string) : undefined });
    const index = queue.findIndex((r) => r.method === method && input.endsWith(r.path));
    if (index < 0) {
      throw new Error(`no route for ${method} ${input}`);
    }
    const route = queue[index];
    queue.splice(index, 1);
    return new Response(JSON.stringify(route.body), {
      status: route.status ?? 200,
      headers: { "content-type": "application/json" },
    });
  };
  return { fetchFn, calls };
}

export function aggregate(partial: Partial<AggregateRow> & { set: string }): AggregateRow {
  const [a, b] = partial.set.split("-");
  return {
    a,
    b,
    total: 0,
    mean: 0,
    band: "optimal",
    colour: "green",
    missing_criteria: [],
    cells: {},
    ...partial,
  };
}

export const CRITERIA = [
  { id: "attachment_interface_connections", name: "Attachment interface connections", anchors: null },
  { id: "assembly_direction", name: "Assembly direction", anchors: null },
  {
    id: "accessibility",
    name: "Accessibility",
    anchors: {
      "1": "All parts visible and reachable from standard workstation",
      "3": "Partial obstruction; reaching inside housing",
      "5": "Inaccessible without disassembly or special tools",
    },
  },
  { id: "tool_requirements", name: "Tool requirements", anchors: null },
  { id: "force_intensity", name: "Force intensity", anchors: null },
  { id: "connector_destruction", name: "Connector destruction", anchors: null },
];

// Engine-confirmed rows: a partially scored revise set (mean 8/3), an all-5
// critical set, and a low-total optimal set.
export function fixtureReport(): MsasmReport {
  const reviseRow = aggregate({
    set: "M01-M07",
    total: 8,
    mean: 2.6666666666666665,
    band: "revise",
    colour: "yellow",
    missing_criteria: ["tool_requirements", "force_intensity", "connector_destruction"],
    cells: {
      attachment_interface_connections: { score: 3, provenance: "conservative_default", note: "split opinion [2, 3]; worst case kept" },
      assembly_direction: { score: 2, provenance: "consensus", note: null },
      accessibility: { score: 3, provenance: "consensus", note: null },
    },
  });
  const criticalRow = aggregate({
    set: "M01-M02",
    total: 30,
    mean: 5.0,
    band: "critical",
    colour: "red",
    cells: Object.fromEntries(
      CRITERIA.map((c) => [c.id, { score: 5, provenance: "consensus", note: null }]),
    ),
  });
  const optimalRow = aggregate({
    set: "M03-M08",
    total: 11,
    mean: 1.8333333333333333,
    band: "optimal",
    colour: "green",
    cells: Object.fromEntries(
      CRITERIA.map((c, i) => [c.id, { score: i === 5 ? 1 : 2, provenance: "consensus", note: null }]),
    ),
  });
  return {
    revision: 1,
    criteria: CRITERIA,
    aggregates: [criticalRow, reviseRow, optimalRow],
    bottlenecks: [criticalRow, reviseRow, optimalRow],
    unscored_sets: [{ set: "M01-M04", a: "M01", b: "M04" }],
  };
}
