// Error-classification panel: shows existing labels for a task and posts
// new ones, refreshing the list in place (the page never reloads).

import type { Classification } from "../types.js";
import { InsightApi } from "../api.js";
import { esc } from "../render.js";

export function renderLabelChips(labels: Classification[], taskId: string): string {
  const mine = labels.filter((c) => c.task_id === taskId);
  if (mine.length === 0) {
    return `<p class="no-labels">No labels yet.</p>`;
  }
  return mine
    .map(
      (c) =>
        `<span class="label-chip" title="${esc(c.note)}">${esc(c.label)}` +
        (c.author ? ` <small>${esc(c.author)}</small>` : "") +
        `</span>`,
    )
    .join("");
}

export function renderClassifyPanel(
  runId: string,
  taskId: string,
  labels: Classification[],
  taxonomy: string[],
  validationError = "",
): string {
  const options = taxonomy
    .map((label) => `<option value="${esc(label)}">${esc(label)}</option>`)
    .join("");
  return `
    <aside class="classify-panel" data-run="${esc(runId)}" data-task="${esc(taskId)}">
      <h3>Error classification</h3>
      <div class="label-list">${renderLabelChips(labels, taskId)}</div>
      <form class="classify-form">
        <select name="label"><option value="">choose a label…</option>${options}</select>
        <input name="note" placeholder="note (optional)" />
        <input name="author" placeholder="author (optional)" />
        <button type="submit">Add label</button>
        ${validationError ? `<p class="validation-error">${esc(validationError)}</p>` : ""}
      </form>
    </aside>`;
}

export interface ClassifySubmission {
  label: string;
  note?: string;
  author?: string;
}

/** Posts a new label and returns the refreshed panel HTML; an empty label
 * short-circuits into an inline validation message without touching the
 * service. */
export async function submitClassification(
  api: InsightApi,
  runId: string,
  taskId: string,
  submission: ClassifySubmission,
  taxonomy: string[],
): Promise<string> {
  if (!submission.label.trim()) {
    const existing = await api.listClassifications(runId);
    return renderClassifyPanel(
      runId,
      taskId,
      existing.classifications.slice(),
      taxonomy,
      "Pick a label before submitting.",
    );
  }
  await api.postClassification({
    run_id: runId,
    task_id: taskId,
    label: submission.label,
    note: submission.note ?? "",
    author: submission.author ?? "",
  });
  const refreshed = await api.listClassifications(runId);
  return renderClassifyPanel(runId, taskId, refreshed.classifications.slice(), taxonomy);
}
