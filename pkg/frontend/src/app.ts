// Hash-routed single-page client over the insight service. All state lives
// server-side; the only mutating request the UI ever issues is
// POST /classifications.

import { InsightApi, ServiceError } from "./api.js";
import { errorBanner, esc, notFoundPage } from "./render.js";
import { renderRunOverview, renderRunsIndex } from "./views/overview.js";
import { renderTrajectory } from "./views/trajectory.js";
import { renderComparison } from "./views/compare.js";
import { renderClassifyPanel, submitClassification } from "./views/classify.js";
import type { TrajectoryPage } from "./types.js";

interface AppState {
  trajectory: TrajectoryPage | null;
  stepIndex: number;
  taxonomy: string[];
}

const state: AppState = { trajectory: null, stepIndex: 0, taxonomy: [] };

function serviceBaseUrl(): string {
  const configured = (window as unknown as { INSIGHT_BASE_URL?: string }).INSIGHT_BASE_URL;
  return configured ?? "";
}

const api = new InsightApi(serviceBaseUrl());

function mount(): HTMLElement {
  return document.getElementById("app") as HTMLElement;
}

async function route(): Promise<void> {
  const hash = window.location.hash.replace(/^#/, "") || "/";
  const parts = hash.split("/").filter(Boolean);
  try {
    if (parts.length === 0) {
      await showRunsIndex();
    } else if (parts[0] === "runs" && parts.length === 2) {
      await showRunOverview(parts[1]);
    } else if (parts[0] === "runs" && parts[2] === "tasks" && parts.length === 4) {
      await showTrajectory(parts[1], parts[3]);
    } else if (parts[0] === "compare" && parts.length === 3) {
      await showComparison(parts[1], parts[2]);
    } else {
      mount().innerHTML = notFoundPage(`No page at ${hash}`);
    }
  } catch (err) {
    if (err instanceof ServiceError && err.status === 404) {
      mount().innerHTML = notFoundPage(err.message);
    } else {
      mount().innerHTML = errorBanner(
        `Insight service unreachable or failing: ${String(err)}`,
      );
    }
  }
}

async function showRunsIndex(): Promise<void> {
  const page = await api.listRuns();
  const picker = `
    <form class="compare-picker">
      <select name="base">${page.runs.map((r) => `<option>${esc(r.run_id)}</option>`).join("")}</select>
      <span>vs</span>
      <select name="new">${page.runs.map((r) => `<option>${esc(r.run_id)}</option>`).join("")}</select>
      <button type="submit">Compare</button>
    </form>`;
  mount().innerHTML = renderRunsIndex(page) + (page.runs.length >= 2 ? picker : "");
}

async function showRunOverview(runId: string): Promise<void> {
  const [run, metrics] = await Promise.all([api.getRun(runId), api.getMetrics(runId)]);
  mount().innerHTML = renderRunOverview(run, metrics);
}

async function showTrajectory(runId: string, taskId: string): Promise<void> {
  const [page, labels, taxonomy] = await Promise.all([
    api.getTrajectory(runId, taskId),
    api.listClassifications(runId),
    state.taxonomy.length
      ? Promise.resolve({ labels: state.taxonomy })
      : api.taxonomy(),
  ]);
  state.trajectory = page;
  state.stepIndex = 0;
  state.taxonomy = taxonomy.labels;
  mount().innerHTML =
    renderTrajectory(page, state.stepIndex) +
    renderClassifyPanel(runId, taskId, labels.classifications.slice(), state.taxonomy);
}

async function showComparison(base: string, next: string): Promise<void> {
  const report = await api.compare(base, next);
  mount().innerHTML = renderComparison(report);
}

function rerenderTrajectoryStep(): void {
  const page = state.trajectory;
  if (!page) return;
  const section = document.querySelector(".trajectory");
  if (!section) return;
  const wrapper = document.createElement("div");
  wrapper.innerHTML = renderTrajectory(page, state.stepIndex);
  section.replaceWith(wrapper.firstElementChild as Element);
}

function wireEvents(): void {
  document.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    if (target.matches(".step-prev, .step-next") && !target.hasAttribute("disabled")) {
      state.stepIndex = Number(target.getAttribute("data-step"));
      rerenderTrajectoryStep();
    }
  });
  document.addEventListener("submit", (event) => {
    const form = event.target as HTMLFormElement;
    if (form.matches(".compare-picker")) {
      event.preventDefault();
      const data = new FormData(form);
      window.location.hash = `#/compare/${data.get("base")}/${data.get("new")}`;
    }
    if (form.matches(".classify-form")) {
      event.preventDefault();
      const panel = form.closest(".classify-panel") as HTMLElement;
      const runId = panel.getAttribute("data-run") as string;
      const taskId = panel.getAttribute("data-task") as string;
      const data = new FormData(form);
      void submitClassification(
        api,
        runId,
        taskId,
        {
          label: String(data.get("label") ?? ""),
          note: String(data.get("note") ?? ""),
          author: String(data.get("author") ?? ""),
        },
        state.taxonomy,
      ).then((html) => {
        const wrapper = document.createElement("div");
        wrapper.innerHTML = html;
        panel.replaceWith(wrapper.firstElementChild as Element);
      });
    }
  });
  window.addEventListener("hashchange", () => void route());
}

export function start(): void {
  wireEvents();
  void route();
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  start();
}
