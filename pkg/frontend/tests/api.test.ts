import { describe, expect, it } from "vitest";

import { ApiClient, ApiFailure } from "../src/api.js";
import { fixtureReport, makeFetch } from "./helpers.js";

describe("ApiClient", () => {
  it("fetches the msasm report", async () => {
    const { fetchFn, calls } = makeFetch([
      { method: "GET", path: "/api/msasm/report", body: fixtureReport() },
    ]);
    const client = new ApiClient("http://127.0.0.1:8323", fetchFn);
    const report = await client.msasmReport();
    expect(report.revision).toBe(1);
    expect(calls[0].path).toBe("http://127.0.0.1:8323/api/msasm/report");
  });

  it("turns error payloads into typed failures", async () => {
    const { fetchFn } = makeFetch([
      {
        method: "PUT",
        path: "/api/project",
        status: 422,
        body: {
          code: "validation_failed",
          message: "mutation leaves 1 validation error(s)",
          details: [{ severity: "error", path: "modules/M01/members", message: "unknown solution 'TS99'" }],
        },
      },
    ]);
    const client = new ApiClient("", fetchFn);
    try {
      await client.putProject(1, { name: "x", modules: [] });
      expect.unreachable("should have thrown");
    } catch (error) {
      expect(error).toBeInstanceOf(ApiFailure);
      const failure = error as ApiFailure;
      expect(failure.status).toBe(422);
      expect(failure.code).toBe("validation_failed");
      expect(Array.isArray(failure.details)).toBe(true);
    }
  });

  it("sends the revision token with mutations", async () => {
    const { fetchFn, calls } = makeFetch([
      { method: "PATCH", path: "/api/msasm/scores", body: { revision: 3, records: [], aggregates: [], bottlenecks: [] } },
    ]);
    const client = new ApiClient("", fetchFn);
    await client.patchScores(2, [{ a: "M01", b: "M02", criterion: "accessibility", proposals: [3] }]);
    expect((calls[0].body as { revision: number }).revision).toBe(2);
  });
});
