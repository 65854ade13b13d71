"""Typed named values handed between sub-tasks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator

TYPE_TAGS = ("string", "number", "boolean", "list", "record", "null")


class VariableCollisionError(Exception):
    """A produced name is already bound by a different producer."""

    def __init__(self, name: str, existing_producer: str, new_producer: str):
        super().__init__(
            f"variable {name!r} already bound by {existing_producer!r}, "
            f"refusing rebind from {new_producer!r}"
        )
        self.name = name


def type_tag_of(value: Any) -> str:
    """Classify a structured value (scalar | list | record, recursively)."""
    if value is None:
        return "null"
    if isinstance(value, bool):  # bool before int: bool is an int subclass
        return "boolean"
    if isinstance(value, (int, float)):
        return "number"
    if isinstance(value, str):
        return "string"
    if isinstance(value, (list, tuple)):
        return "list"
    if isinstance(value, dict):
        return "record"
    raise TypeError(f"unsupported variable value type: {type(value).__name__}")


@dataclass(frozen=True)
class Variable:
    """A named structured value plus the sub-task that produced it."""

    name: str
    value: Any
    producer: str = "initial"
    type_tag: str = field(default="")

    def __post_init__(self):
        if not self.name or not self.name.replace("_", "a").replace("#", "a").isalnum():
            raise ValueError(f"invalid variable name: {self.name!r}")
        tag = type_tag_of(self.value)
        if self.type_tag and self.type_tag != tag:
            raise ValueError(
                f"type_tag {self.type_tag!r} inconsistent with value shape {tag!r}"
            )
        object.__setattr__(self, "type_tag", tag)


class VariableStore:
    """Name-unique variable bindings; collisions across producers are errors."""

    def __init__(self, initial: list[Variable] | None = None):
        self._vars: dict[str, Variable] = {}
        for var in initial or []:
            self.bind(var)

    def bind(self, var: Variable) -> None:
        existing = self._vars.get(var.name)
        if existing is not None and existing.producer != var.producer:
            raise VariableCollisionError(var.name, existing.producer, var.producer)
        self._vars[var.name] = var

    def get(self, name: str) -> Variable:
        return self._vars[name]

    def value_of(self, name: str) -> Any:
        return self._vars[name].value

    def has(self, name: str) -> bool:
        return name in self._vars

    def names(self) -> list[str]:
        return list(self._vars)

    def values_map(self) -> dict[str, Any]:
        return {name: var.value for name, var in self._vars.items()}

    def view(self, names: list[str], aliases: dict[str, str] | None = None) -> "VariableStore":
        """Sub-store holding `names`, optionally renamed through `aliases`."""
        aliases = aliases or {}
        out = VariableStore()
        for name in names:
            var = self._vars[name]
            alias = aliases.get(name)
            if alias:
                var = Variable(alias, var.value, producer=var.producer)
            out.bind(var)
        return out

    def __iter__(self) -> Iterator[Variable]:
        return iter(self._vars.values())

    def __len__(self) -> int:
        return len(self._vars)

    def __contains__(self, name: str) -> bool:
        return name in self._vars
