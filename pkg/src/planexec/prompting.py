"""Prompt bundle assembly with per-agent step cursors."""

from __future__ import annotations

from collections import Counter

from .reasoner import PromptBundle

Fragment = tuple[str, str]


class BundleBuilder:
    """Builds PromptBundles for one task, advancing a cursor per agent so
    successive calls by the same agent get distinct fingerprints."""

    def __init__(self, task_id: str, base_fragments: list[Fragment] | None = None):
        self.task_id = task_id
        self.base_fragments = list(base_fragments or [])
        self._cursors: Counter[str] = Counter()

    def next(
        self,
        agent: str,
        role_preamble: str,
        instructions: str,
        output_schema: dict,
        fragments: list[Fragment] | None = None,
        include_base: bool = True,
    ) -> PromptBundle:
        cursor = self._cursors[agent]
        self._cursors[agent] += 1
        all_fragments: list[Fragment] = []
        if include_base:
            all_fragments.extend(self.base_fragments)
        all_fragments.extend(fragments or [])
        return PromptBundle(
            agent=agent,
            task_id=self.task_id,
            cursor=cursor,
            role_preamble=role_preamble,
            instructions=instructions,
            context_fragments=tuple(all_fragments),
            output_schema=output_schema,
        )
