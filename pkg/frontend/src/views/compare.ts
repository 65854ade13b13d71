// Run comparison: the five diff buckets straight from the report payload.

import type { ComparisonReport } from "../types.js";
import { esc } from "../render.js";

const BUCKETS: Array<[keyof ComparisonReport, string]> = [
  ["resolved", "Resolved (fail → pass)"],
  ["regressed", "Regressed (pass → fail)"],
  ["newly_covered", "Newly covered"],
  ["persistent_failures", "Persistent failures"],
  ["persistent_passes", "Persistent passes"],
];

export function renderComparison(report: ComparisonReport): string {
  const buckets = BUCKETS.map(([key, title]) => {
    const ids = report[key] as string[];
    const items = ids
      .map(
        (taskId) =>
          `<li><a href="#/runs/${esc(report.new_run)}/tasks/${esc(taskId)}">${esc(taskId)}</a></li>`,
      )
      .join("");
    return `
      <div class="bucket bucket-${esc(String(key))}">
        <h3>${esc(title)} <span class="bucket-count" data-bucket="${esc(String(key))}">${ids.length}</span></h3>
        <ul>${items || "<li class='none'>none</li>"}</ul>
      </div>`;
  }).join("");
  const dropped = report.dropped.length
    ? `<p class="dropped-note">${report.dropped.length} task(s) present in ${esc(report.base_run)} were dropped from ${esc(report.new_run)}: ${report.dropped.map(esc).join(", ")}</p>`
    : "";
  return `
    <section class="comparison">
      <h2>${esc(report.base_run)} vs ${esc(report.new_run)}</h2>
      <div class="buckets">${buckets}</div>
      ${dropped}
    </section>`;
}
