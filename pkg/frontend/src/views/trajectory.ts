// Step-by-step trajectory viewer: one event at a time with panes for the
// screenshot reference, the accessibility tree (grounded node highlighted),
// the action instruction, and the raw payload. Panes render only when the
// event payload carries them.

import type { AxNodePayload, TrajectoryEvent, TrajectoryPage } from "../types.js";
import { esc } from "../render.js";

function groundedNodeId(event: TrajectoryEvent): number | null {
  const payload = event.payload as Record<string, unknown>;
  if (typeof payload["grounded_node"] === "number") {
    return payload["grounded_node"] as number;
  }
  const action = payload["action"] as Record<string, unknown> | undefined;
  if (action && typeof action["target"] === "number") {
    return action["target"] as number;
  }
  return null;
}

export function renderAxTreePane(nodes: AxNodePayload[], highlight: number | null): string {
  const lines = nodes
    .map((node) => {
      const classes = ["ax-node"];
      if (highlight !== null && node.node_id === highlight) {
        classes.push("ax-node-grounded");
      }
      if (node.occluded_by !== null) {
        classes.push("ax-node-occluded");
      }
      const value = node.value ? ` value=${esc(JSON.stringify(node.value))}` : "";
      return `<div class="${classes.join(" ")}" data-node-id="${node.node_id}">[${node.node_id}] ${esc(node.role)} ${esc(node.name)}${value}</div>`;
    })
    .join("");
  return `<div class="pane ax-pane"><h4>Accessibility tree</h4>${lines}</div>`;
}

export function renderStep(event: TrajectoryEvent, axContext: AxNodePayload[] | null): string {
  const payload = event.payload as Record<string, unknown>;
  const panes: string[] = [];
  const screenshot = payload["screenshot_ref"];
  if (typeof screenshot === "string") {
    panes.push(
      `<div class="pane shot-pane"><h4>Screenshot</h4><div class="shot-placeholder">${esc(screenshot)}</div></div>`,
    );
  }
  const tree = payload["ax_tree"];
  if (Array.isArray(tree)) {
    panes.push(renderAxTreePane(tree as AxNodePayload[], null));
  } else if (axContext && groundedNodeId(event) !== null) {
    panes.push(renderAxTreePane(axContext, groundedNodeId(event)));
  }
  const instruction = payload["instruction"];
  if (typeof instruction === "string" && instruction) {
    panes.push(
      `<div class="pane action-pane"><h4>Action instruction</h4><p>${esc(instruction)}</p></div>`,
    );
  }
  panes.push(
    `<div class="pane payload-pane"><h4>Payload</h4><pre>${esc(JSON.stringify(event.payload, null, 2))}</pre></div>`,
  );
  return `
    <article class="step" data-seq="${event.seq}">
      <header class="step-header">
        <span class="step-seq">#${event.seq}</span>
        <span class="step-agent">${esc(event.agent)}</span>
        <span class="step-kind">${esc(event.kind)}</span>
      </header>
      <div class="panes">${panes.join("")}</div>
    </article>`;
}

export function latestAxTreeBefore(events: TrajectoryEvent[], seq: number): AxNodePayload[] | null {
  for (let i = events.length - 1; i >= 0; i--) {
    const event = events[i];
    if (event.seq > seq) continue;
    const tree = (event.payload as Record<string, unknown>)["ax_tree"];
    if (Array.isArray(tree)) {
      return tree as AxNodePayload[];
    }
  }
  return null;
}

export function renderTrajectory(page: TrajectoryPage, current: number): string {
  const total = page.events.length;
  if (total === 0) {
    return `<section class="trajectory"><p>No events recorded.</p></section>`;
  }
  const index = Math.max(0, Math.min(current, total - 1));
  const event = page.events[index];
  const axContext = latestAxTreeBefore(page.events, event.seq);
  const stepper = `
    <nav class="stepper">
      <button class="step-prev" ${index === 0 ? "disabled" : ""} data-step="${index - 1}">&larr; prev</button>
      <span class="step-pos">step ${index + 1} of ${total}</span>
      <button class="step-next" ${index === total - 1 ? "disabled" : ""} data-step="${index + 1}">next &rarr;</button>
    </nav>`;
  return `
    <section class="trajectory" data-run="${esc(page.run_id)}" data-task="${esc(page.task_id)}">
      <h2>${esc(page.run_id)} / ${esc(page.task_id)}</h2>
      ${stepper}
      ${renderStep(event, axContext)}
    </section>`;
}
