// Shapes of the insight service payloads the dashboard consumes.

export interface RunSummary {
  run_id: string;
  agent_version: string;
  sample: { name: string; size: number; selection: string; seed: number };
  started_at: string;
  finished_at: string;
  total_tasks: number;
  successes: number;
  task_completion_rate: number;
}

export interface RunsPage {
  runs: RunSummary[];
  total: number;
  limit: number;
  offset: number;
}

export interface TaskResult {
  status: "success" | "failure" | "error";
  steps: number;
  duration_ms: number;
  template_id: string;
  level: number | null;
  split: string | null;
}

export interface RunRecord {
  run_id: string;
  agent_version: string;
  sample: RunSummary["sample"];
  results: Record<string, TaskResult>;
  started_at: string;
  finished_at: string;
}

export interface LevelSlice {
  tgc: number;
  sgc: number;
  avg_interactions: number;
}

export interface MetricsSummary {
  task_completion_rate: number;
  scenario_completion_rate: number;
  avg_interactions: number;
  total_tasks: number;
  total_templates: number;
  per_level: Record<string, Record<string, LevelSlice>>;
}

export interface AxNodePayload {
  node_id: number;
  role: string;
  name: string;
  value: string | null;
  bounds: number[];
  occluded_by: number | null;
}

export interface TrajectoryEvent {
  run_id: string;
  task_id: string;
  seq: number;
  agent: string;
  kind: string;
  payload: Record<string, unknown>;
  wall_ms: number;
}

export interface TrajectoryPage {
  run_id: string;
  task_id: string;
  total: number;
  limit: number;
  offset: number;
  events: TrajectoryEvent[];
}

export interface ComparisonReport {
  base_run: string;
  new_run: string;
  resolved: string[];
  regressed: string[];
  newly_covered: string[];
  persistent_failures: string[];
  persistent_passes: string[];
  dropped: string[];
}

export interface Classification {
  run_id: string;
  task_id: string;
  label: string;
  note: string;
  author: string;
  created_at: string;
}

export interface ClassificationsPage {
  run_id: string;
  total: number;
  limit: number;
  offset: number;
  classifications: Classification[];
}
