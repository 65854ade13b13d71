import { describe, expect, it } from "vitest";

import { InsightApi, ServiceError } from "../src/api.js";
import { FIXTURES } from "./fixtures.js";
import { fakeFetch } from "./helpers.js";

describe("InsightApi", () => {
  it("fetches and parses the documented endpoints", async () => {
    const { fetchFn, calls } = fakeFetch({
      "/runs": FIXTURES.runs,
      "/runs/base-run": FIXTURES.run_base,
      "/runs/base-run/metrics": FIXTURES.metrics_base,
      "/compare": FIXTURES.compare,
      "/taxonomy": FIXTURES.taxonomy,
    });
    const api = new InsightApi("", fetchFn);
    expect((await api.listRuns()).total).toBe(FIXTURES.runs.total);
    expect((await api.getRun("base-run")).run_id).toBe("base-run");
    expect((await api.getMetrics("base-run")).task_completion_rate).toBe(
      FIXTURES.metrics_base.task_completion_rate,
    );
    expect((await api.compare("base-run", "new-run")).new_run).toBe("new-run");
    expect((await api.taxonomy()).labels.length).toBe(8);
    expect(calls.every((c) => c.method === "GET")).toBe(true);
  });

  it("throws ServiceError with status on 404", async () => {
    const { fetchFn } = fakeFetch({});
    const api = new InsightApi("", fetchFn);
    await expect(api.getRun("ghost")).rejects.toThrowError(ServiceError);
    await expect(api.getRun("ghost")).rejects.toMatchObject({ status: 404 });
  });

  it("issues no mutating request except POST /classifications", async () => {
    const { fetchFn, calls } = fakeFetch({
      "/runs": FIXTURES.runs,
      "/runs/base-run/tasks/T013-2/trajectory": FIXTURES.trajectory,
      "/runs/base-run/classifications": FIXTURES.classifications,
      "POST /classifications": FIXTURES.classification_posted,
    });
    const api = new InsightApi("", fetchFn);
    await api.listRuns();
    await api.getTrajectory("base-run", "T013-2");
    await api.listClassifications("base-run");
    await api.postClassification({
      run_id: "base-run",
      task_id: "T013-2",
      label: "popup-obstruction",
    });
    const mutations = calls.filter((c) => c.method !== "GET");
    expect(mutations).toHaveLength(1);
    expect(mutations[0].url.endsWith("/classifications")).toBe(true);
  });
});
