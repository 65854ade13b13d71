// Typed client over the insight HTTP endpoints. The fetch function is
// injectable so tests run against frozen payloads. The UI mutates nothing
// except POST /classifications.

import type {
  Classification,
  ClassificationsPage,
  ComparisonReport,
  MetricsSummary,
  RunRecord,
  RunsPage,
  TrajectoryPage,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
  }
}

export class InsightApi {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path);
    if (!resp.ok) {
      throw new ServiceError(resp.status, `GET ${path} -> ${resp.status}`);
    }
    return (await resp.json()) as T;
  }

  listRuns(limit = 100, offset = 0): Promise<RunsPage> {
    return this.get(`/runs?limit=${limit}&offset=${offset}`);
  }

  getRun(runId: string): Promise<RunRecord> {
    return this.get(`/runs/${encodeURIComponent(runId)}`);
  }

  getMetrics(runId: string): Promise<MetricsSummary> {
    return this.get(`/runs/${encodeURIComponent(runId)}/metrics`);
  }

  getTrajectory(runId: string, taskId: string, limit = 500, offset = 0): Promise<TrajectoryPage> {
    return this.get(
      `/runs/${encodeURIComponent(runId)}/tasks/${encodeURIComponent(taskId)}/trajectory?limit=${limit}&offset=${offset}`,
    );
  }

  compare(base: string, next: string): Promise<ComparisonReport> {
    return this.get(
      `/compare?base=${encodeURIComponent(base)}&new=${encodeURIComponent(next)}`,
    );
  }

  listClassifications(runId: string): Promise<ClassificationsPage> {
    return this.get(`/runs/${encodeURIComponent(runId)}/classifications`);
  }

  taxonomy(): Promise<{ labels: string[] }> {
    return this.get(`/taxonomy`);
  }

  async postClassification(body: {
    run_id: string;
    task_id: string;
    label: string;
    note?: string;
    author?: string;
  }): Promise<Classification> {
    const resp = await this.fetchFn(this.baseUrl + "/classifications", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!resp.ok) {
      throw new ServiceError(resp.status, `POST /classifications -> ${resp.status}`);
    }
    return (await resp.json()) as Classification;
  }
}
