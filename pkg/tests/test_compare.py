import random

from planexec.evalkit.compare import compare_runs
from planexec.evalkit.records import RunRecord, SampleSpec, TaskResult


def run_of(statuses: dict[str, str], run_id: str) -> RunRecord:
    results = {
        tid: TaskResult(status=s, steps=1, duration_ms=1.0, template_id=tid)
        for tid, s in statuses.items()
    }
    return RunRecord(
        run_id=run_id,
        agent_version="v",
        sample=SampleSpec(name="adhoc", size=len(results), selection="all_tasks", seed=0),
        results=results,
    )


class TestHandChecked:
    def test_spec_example(self):
        base = run_of({"t1": "failure", "t2": "success"}, "base")
        new = run_of({"t1": "success", "t2": "success", "t3": "failure"}, "new")
        report = compare_runs(base, new)
        assert report.resolved == {"t1"}
        assert report.newly_covered == {"t3"}
        assert report.persistent_passes == {"t2"}
        assert report.regressed == set()
        assert report.persistent_failures == set()
        assert report.dropped == set()

    def test_identical_runs_only_persistent(self):
        statuses = {"a": "success", "b": "failure", "c": "error"}
        report = compare_runs(run_of(statuses, "x"), run_of(statuses, "y"))
        assert report.resolved == report.regressed == report.newly_covered == set()
        assert report.persistent_passes == {"a"}
        assert report.persistent_failures == {"b", "c"}

    def test_dropped_side_channel(self):
        base = run_of({"a": "success", "gone": "failure"}, "base")
        new = run_of({"a": "success"}, "new")
        assert compare_runs(base, new).dropped == {"gone"}


def oracle_buckets(base: dict[str, str], new: dict[str, str]):
    """Brute-force set algebra, independent of compare_runs internals."""
    passed_base = {t for t, s in base.items() if s == "success"}
    passed_new = {t for t, s in new.items() if s == "success"}
    in_both = set(base) & set(new)
    return {
        "resolved": (in_both - passed_base) & passed_new,
        "regressed": (in_both & passed_base) - passed_new,
        "newly_covered": set(new) - set(base),
        "persistent_failures": (in_both - passed_base) - passed_new,
        "persistent_passes": (in_both & passed_base) & passed_new,
        "dropped": set(base) - set(new),
    }


class TestRandomizedOracle:
    def test_randomized_pairs_match_oracle_and_partition(self):
        rng = random.Random(17)
        for _ in range(200):
            universe = [f"t{i}" for i in range(rng.randint(1, 60))]
            base = {
                t: rng.choice(["success", "failure", "error"])
                for t in universe
                if rng.random() < 0.8
            }
            new = {
                t: rng.choice(["success", "failure", "error"])
                for t in universe
                if rng.random() < 0.8
            }
            if not new:
                new = {universe[0]: "success"}
            report = compare_runs(run_of(base, "b"), run_of(new, "n"))
            expected = oracle_buckets(base, new)
            assert report.resolved == expected["resolved"]
            assert report.regressed == expected["regressed"]
            assert report.newly_covered == expected["newly_covered"]
            assert report.persistent_failures == expected["persistent_failures"]
            assert report.persistent_passes == expected["persistent_passes"]
            assert report.dropped == expected["dropped"]
            buckets = [
                report.resolved,
                report.regressed,
                report.newly_covered,
                report.persistent_failures,
                report.persistent_passes,
            ]
            union = set()
            total = 0
            for bucket in buckets:
                union |= bucket
                total += len(bucket)
            assert union == set(new)
            assert total == len(set(new))  # pairwise disjoint
