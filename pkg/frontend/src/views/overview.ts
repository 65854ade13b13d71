// Runs index and per-run overview: metrics figures straight from the
// service payload, a rate-over-runs series, and a task table whose rows
// link into the trajectory viewer.

import type { MetricsSummary, RunRecord, RunsPage } from "../types.js";
import { chip, emptyState, esc, pct } from "../render.js";

export function renderRunsIndex(page: RunsPage): string {
  if (page.runs.length === 0) {
    return emptyState("No runs recorded yet.");
  }
  const rows = page.runs
    .map(
      (run) => `
      <tr>
        <td><a href="#/runs/${esc(run.run_id)}">${esc(run.run_id)}</a></td>
        <td>${esc(run.agent_version)}</td>
        <td>${esc(run.sample.name)} (${run.sample.size})</td>
        <td class="num">${run.successes}/${run.total_tasks}</td>
        <td class="num">${pct(run.task_completion_rate)}</td>
      </tr>`,
    )
    .join("");
  return `
    <section class="runs-index">
      <h2>Runs</h2>
      ${renderRateSeries(page)}
      <table class="data-table">
        <thead><tr><th>Run</th><th>Version</th><th>Sample</th><th>Passed</th><th>Rate</th></tr></thead>
        <tbody>${rows}</tbody>
      </table>
    </section>`;
}

export function renderRateSeries(page: RunsPage): string {
  if (page.runs.length < 2) {
    return "";
  }
  const ordered = [...page.runs].sort((a, b) =>
    a.started_at.localeCompare(b.started_at),
  );
  const max = 100;
  const w = 420;
  const h = 120;
  const step = ordered.length > 1 ? w / (ordered.length - 1) : 0;
  const points = ordered
    .map(
      (run, i) =>
        `${(i * step).toFixed(1)},${(h - (run.task_completion_rate / max) * h).toFixed(1)}`,
    )
    .join(" ");
  const labels = ordered
    .map((run) => `<span class="series-label">${esc(run.run_id)}</span>`)
    .join("");
  return `
    <figure class="rate-series">
      <svg viewBox="0 0 ${w} ${h}" preserveAspectRatio="none">
        <polyline fill="none" stroke="currentColor" stroke-width="2" points="${points}" />
      </svg>
      <figcaption>Task completion rate over runs</figcaption>
      <div class="series-labels">${labels}</div>
    </figure>`;
}

export function renderMetricsCards(metrics: MetricsSummary): string {
  const perLevel = Object.entries(metrics.per_level)
    .map(([level, splits]) => {
      const cells = Object.entries(splits)
        .map(
          ([split, slice]) =>
            `<tr><td>${esc(level)}</td><td>${esc(split)}</td>` +
            `<td class="num">${pct(slice.tgc)}</td>` +
            `<td class="num">${pct(slice.sgc)}</td>` +
            `<td class="num">${slice.avg_interactions}</td></tr>`,
        )
        .join("");
      return cells;
    })
    .join("");
  const levelTable = perLevel
    ? `<table class="data-table level-table">
        <thead><tr><th>Level</th><th>Split</th><th>Task %</th><th>Scenario %</th><th>Avg steps</th></tr></thead>
        <tbody>${perLevel}</tbody>
      </table>`
    : "";
  return `
    <div class="metric-cards">
      <div class="metric-card"><div class="metric-value" data-metric="tcr">${pct(metrics.task_completion_rate)}</div><div class="metric-name">task completion</div></div>
      <div class="metric-card"><div class="metric-value" data-metric="scr">${pct(metrics.scenario_completion_rate)}</div><div class="metric-name">scenario completion</div></div>
      <div class="metric-card"><div class="metric-value" data-metric="avg">${metrics.avg_interactions}</div><div class="metric-name">avg interactions</div></div>
      <div class="metric-card"><div class="metric-value" data-metric="tasks">${metrics.total_tasks}</div><div class="metric-name">tasks</div></div>
    </div>
    ${levelTable}`;
}

export function renderRunOverview(run: RunRecord, metrics: MetricsSummary): string {
  const taskIds = Object.keys(run.results).sort();
  const rows = taskIds
    .map((taskId) => {
      const result = run.results[taskId];
      const link = `#/runs/${esc(run.run_id)}/tasks/${esc(taskId)}`;
      return `
      <tr class="status-${esc(result.status)}">
        <td><a href="${link}">${esc(taskId)}</a></td>
        <td>${chip(result.status)}</td>
        <td class="num">${result.steps}</td>
        <td>${esc(result.template_id)}</td>
        <td><a class="drill" href="${link}">trajectory</a></td>
      </tr>`;
    })
    .join("");
  const table =
    taskIds.length === 0
      ? emptyState("This run recorded no task results.")
      : `<table class="data-table task-table">
          <thead><tr><th>Task</th><th>Status</th><th>Steps</th><th>Template</th><th></th></tr></thead>
          <tbody>${rows}</tbody>
        </table>`;
  return `
    <section class="run-overview">
      <h2>${esc(run.run_id)} <small>${esc(run.agent_version)}</small></h2>
      ${renderMetricsCards(metrics)}
      ${table}
    </section>`;
}
