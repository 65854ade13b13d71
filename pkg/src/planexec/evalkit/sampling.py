"""Progressive sample ladder with stratified template representatives.

For a fixed seed the levels nest: initial ⊆ nano ⊆ micro ⊆ mini ⊆ full.
Template order is a per-domain seeded shuffle interleaved round-robin, so
every prefix is spread across domains; each template's representative
instance is chosen once per seed and reused at every level.
"""

from __future__ import annotations

import random

from ..fixtures.bench import ManifestTask, TaskManifest
from .records import SampleSpec


class ManifestTooSmallError(Exception):
    """The manifest cannot satisfy the requested sample size."""


def _template_order(manifest: TaskManifest, seed: int) -> list[str]:
    grouped = manifest.by_template()
    by_domain: dict[str, list[str]] = {}
    for template_id, instances in grouped.items():
        by_domain.setdefault(instances[0].domain, []).append(template_id)
    for domain in by_domain:
        by_domain[domain].sort()
        random.Random(f"{seed}:{domain}").shuffle(by_domain[domain])
    order: list[str] = []
    domains = sorted(by_domain)
    idx = 0
    while any(by_domain[d] for d in domains):
        domain = domains[idx % len(domains)]
        if by_domain[domain]:
            order.append(by_domain[domain].pop(0))
        idx += 1
    return order


def _representative(template_id: str, instances: list[ManifestTask], seed: int) -> ManifestTask:
    rng = random.Random(f"{seed}:rep:{template_id}")
    return rng.choice(instances)


def draw_sample(manifest: TaskManifest, spec: SampleSpec) -> list[ManifestTask]:
    grouped = manifest.by_template()
    if spec.selection == "all_tasks":
        if len(manifest.tasks) < spec.size:
            raise ManifestTooSmallError(
                f"manifest has {len(manifest.tasks)} tasks, need {spec.size}"
            )
        return sorted(manifest.tasks, key=lambda t: t.task_id)
    if spec.size > len(grouped):
        raise ManifestTooSmallError(
            f"manifest has {len(grouped)} templates, need {spec.size}"
        )
    order = _template_order(manifest, spec.seed)
    chosen = order[: spec.size]
    sample = [_representative(t, grouped[t], spec.seed) for t in chosen]
    sample.sort(key=lambda t: t.task_id)
    return sample
