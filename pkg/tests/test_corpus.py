import json

from planexec.fixtures.corpus import (
    build_corpus_registry,
    corpus_app_ids,
    corpus_document,
    labeled_queries,
)
from planexec.jsonutil import canonical_json
from planexec.registry.ingest import iter_source_operations


def sample_args(tool):
    samples = {"string": "sample", "number": 1, "boolean": True, "list": [], "record": {}}
    return {p.name: samples[p.type_tag] for p in tool.params if p.required}


class TestCorpusShape:
    def test_scale(self):
        registry, _ = build_corpus_registry()
        assert len(registry.app_ids) >= 20
        total_ops = sum(len(registry.manifest(a).tools) for a in registry.app_ids)
        assert total_ops >= 200

    def test_minimization_bound_total(self):
        registry, _ = build_corpus_registry()
        source_total = 0
        minimized_total = 0
        for app_id in corpus_app_ids():
            doc = corpus_document(app_id)
            for op in iter_source_operations(doc):
                source_total += len(canonical_json(op))
            for tool in registry.manifest(app_id).tools:
                minimized_total += len(canonical_json(tool.to_dict()))
        assert minimized_total <= 0.5 * source_total, (
            f"minimized {minimized_total} vs source {source_total}"
        )

    def test_minimization_bound_per_operation(self):
        app_id = corpus_app_ids()[0]
        doc = corpus_document(app_id)
        registry, _ = build_corpus_registry()
        tools = registry.manifest(app_id).tools
        sources = iter_source_operations(doc)
        assert len(tools) == len(sources)
        for tool, op in zip(tools, sources):
            assert len(canonical_json(tool.to_dict())) <= 0.5 * len(canonical_json(op))


class TestInvocationSufficiency:
    def test_every_tool_invocable_from_its_spec_alone(self):
        registry, _ = build_corpus_registry()
        for app_id in registry.app_ids:
            for tool in registry.manifest(app_id).tools:
                resp = registry.invoke(tool.tool_id, sample_args(tool))
                assert 200 <= resp.status_code < 300, (
                    f"{tool.tool_id} -> {resp.status_code}: {resp.body}"
                )


class TestShortlisterRecall:
    def test_recall_at_5(self):
        registry, _ = build_corpus_registry()
        queries = labeled_queries(100)
        hits_at_5 = 0
        for query, expected in queries:
            hits = registry.search(query, k=5)
            if expected in {h.tool_id for h in hits}:
                hits_at_5 += 1
        recall = hits_at_5 / len(queries)
        assert recall >= 0.9, f"recall@5 = {recall}"
