// MSASM heatmap rendering. Cells are shaded by their raw 1-5 score; the row
// gutter repeats the band name and colour token exactly as the engine sent
// them. No thresholds live here: an aggregate saying band "purple" would
// render purple.

import type { AggregateRow, CriterionInfo, MsasmReport } from "./api.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function anchorTitle(criterion: CriterionInfo): string {
  if (!criterion.anchors) {
    return criterion.name;
  }
  const lines = Object.entries(criterion.anchors)
    .sort(([a], [b]) => Number(a) - Number(b))
    .map(([score, text]) => `${score}: ${text}`);
  return `${criterion.name}\n${lines.join("\n")}`;
}

function cellHtml(row: AggregateRow, criterion: CriterionInfo): string {
  const cell = row.cells[criterion.id];
  if (!cell) {
    return `<td class="cell missing" data-set="${escapeHtml(row.set)}" data-criterion="${escapeHtml(criterion.id)}"></td>`;
  }
  const conservative =
    cell.provenance === "conservative_default"
      ? `<span class="marker conservative" title="${escapeHtml(cell.note ?? "conservative value")}">conservative</span>`
      : "";
  return (
    `<td class="cell score-${cell.score}" data-set="${escapeHtml(row.set)}" ` +
    `data-criterion="${escapeHtml(criterion.id)}" data-provenance="${escapeHtml(cell.provenance)}">` +
    `${cell.score}${conservative}</td>`
  );
}

function gutterHtml(row: AggregateRow): string {
  const missing = row.missing_criteria.length
    ? ` <span class="badge">${row.missing_criteria.length} missing</span>`
    : "";
  return (
    `<td class="gutter" data-band="${escapeHtml(row.band)}" style="background:${escapeHtml(row.colour)}">` +
    `${escapeHtml(row.band)} · total ${row.total} · mean ${row.mean.toFixed(2)}${missing}</td>`
  );
}

export function renderHeatmap(report: MsasmReport): string {
  const headers = report.criteria
    .map((c) => `<th title="${escapeHtml(anchorTitle(c))}">${escapeHtml(c.name)}</th>`)
    .join("");
  const rows = report.aggregates
    .map((row) => {
      const cells = report.criteria.map((c) => cellHtml(row, c)).join("");
      return `<tr data-set="${escapeHtml(row.set)}"><th>${escapeHtml(row.set)}</th>${cells}${gutterHtml(row)}</tr>`;
    })
    .join("");
  const unscored = report.unscored_sets
    .map(
      (ms) =>
        `<tr class="unscored" data-set="${escapeHtml(ms.set)}"><th>${escapeHtml(ms.set)}</th>` +
        `<td class="cell missing" colspan="${report.criteria.length}"><span class="badge">unscored</span></td>` +
        `<td class="gutter empty"></td></tr>`,
    )
    .join("");
  return (
    `<table class="heatmap"><thead><tr><th>module set</th>${headers}<th>band</th></tr></thead>` +
    `<tbody>${rows}${unscored}</tbody></table>`
  );
}

export function renderBottlenecks(report: Pick<MsasmReport, "bottlenecks">): string {
  const items = report.bottlenecks
    .map(
      (row) =>
        `<li data-set="${escapeHtml(row.set)}"><span class="swatch" style="background:${escapeHtml(row.colour)}"></span>` +
        `${escapeHtml(row.set)} — ${escapeHtml(row.band)} (total ${row.total}, mean ${row.mean.toFixed(2)})</li>`,
    )
    .join("");
  return `<ol class="bottlenecks">${items}</ol>`;
}
