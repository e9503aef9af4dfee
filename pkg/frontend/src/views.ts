// Concept ranking and ADCD issue board renderers.

import type { AdcdIssuesResponse, ConceptRankingResponse } from "./api.js";
import { escapeHtml } from "./heatmap.js";

export function renderConceptRanking(response: ConceptRankingResponse): string {
  const valueHeader = response.mode === "pugh" ? "net vs datum" : "total (lower is better)";
  const rows = response.ranking
    .map((entry, i) => {
      const value = response.mode === "pugh" ? entry.net : entry.total;
      return `<tr><td>${i + 1}</td><td>${escapeHtml(entry.concept)}</td><td>${value}</td></tr>`;
    })
    .join("");
  return (
    `<table class="concepts"><thead><tr><th>rank</th><th>concept</th><th>${valueHeader}</th></tr></thead>` +
    `<tbody>${rows}</tbody></table>`
  );
}

export function renderIssueBoard(response: AdcdIssuesResponse): string {
  const validation = response.validation
    .map((v) => `<li class="sev-${escapeHtml(v.severity)}">${escapeHtml(v.path)}: ${escapeHtml(v.message)}</li>`)
    .join("");
  const issues = response.issues
    .map(
      (issue) =>
        `<li class="sev-${escapeHtml(issue.severity)}"><strong>${escapeHtml(issue.kind)}</strong>` +
        ` at ${escapeHtml(issue.location ?? "graph")}: ${escapeHtml(issue.message)}</li>`,
    )
    .join("");
  let sequence = "<p>No insertion order available.</p>";
  if (response.sequence) {
    const steps = response.sequence.steps.map((s) => `${escapeHtml(s.module)} (${escapeHtml(s.direction)})`).join(" → ");
    sequence = `<p class="sequence">${steps} — ${response.sequence.reorientations} reorientation(s)</p>`;
  }
  return `<ul class="validation">${validation}</ul><ul class="issues">${issues}</ul>${sequence}`;
}
