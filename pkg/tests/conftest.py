import pytest

from planexec.fixtures.apps import build_fixture_registry
from planexec.prompting import BundleBuilder
from planexec.reasoner import Script, ScriptedBackend

ACCEPTANCE_LABELS = {
    "test_end_to_end_scripted_scenario": "end-to-end scripted scenario",
    "test_metrics_oracle_on_published_figures": "metrics oracle",
    "test_comparison_correctness_randomized": "comparison correctness",
    "test_parallel_serial_equivalence_on_nano_fixture": "parallel/serial equivalence",
    "test_sample_ladder_sizes_and_nesting": "sample ladder",
    "test_interpreter_equivalence_ten_thousand_programs": "interpreter equivalence",
    "test_minimizer_bound_and_invocation_sufficiency": "minimizer bound + invocation sufficiency",
    "test_shortlister_recall_at_five": "shortlister recall",
    "test_popup_bypass_and_undismissable_cap": "popup bypass",
    "test_trajectory_durability_under_kill": "trajectory durability",
}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    label = ACCEPTANCE_LABELS.get(name)
    if label:
        verdict = "PASS" if report.passed else "FAIL"
        print(f"\n[{verdict}] acceptance: {label} ({report.duration:.2f}s)")


@pytest.fixture()
def fixture_registry():
    registry, servers = build_fixture_registry()
    return registry, servers


@pytest.fixture()
def bundles():
    return BundleBuilder("task-1")


def scripted(sequences=None, entries=None, default=None) -> ScriptedBackend:
    return ScriptedBackend(Script(entries=entries, sequences=sequences, default=default))
