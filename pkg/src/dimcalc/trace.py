"""Derivation traces: which rule produced a value and which hypotheses it checked."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .model import DimValue, TriState


@dataclass(frozen=True)
class Check:
    condition: str
    passed: bool


@dataclass(frozen=True)
class Trace:
    rule: str
    value: Any
    checks: tuple[Check, ...] = ()
    children: tuple["Trace", ...] = ()
    notes: tuple[str, ...] = ()
    # rules that were tried first and whose hypotheses failed
    rejected: tuple["Trace", ...] = ()

    def with_rejected(self, rejected) -> "Trace":
        return Trace(self.rule, self.value, self.checks, self.children,
                     self.notes, tuple(rejected) + self.rejected)

    def with_value(self, value, note: str | None = None, check: Check | None = None) -> "Trace":
        notes = self.notes + ((note,) if note else ())
        checks = self.checks + ((check,) if check else ())
        return Trace(self.rule, value, checks, self.children, notes, self.rejected)

    def applied_nodes(self):
        """Every node on the applied derivation, rejected branches excluded."""
        yield self
        for c in self.children:
            yield from c.applied_nodes()

    def is_sound(self) -> bool:
        return all(ch.passed for node in self.applied_nodes() for ch in node.checks)

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "value": value_to_json(self.value),
            "hypothesisChecks": [{"condition": c.condition, "passed": c.passed}
                                 for c in self.checks],
            "notes": list(self.notes),
            "children": [c.to_json() for c in self.children],
            "rejected": [r.to_json() for r in self.rejected],
        }

    def render(self, indent: int = 0, show_rejected: bool = True) -> str:
        pad = "  " * indent
        lines = [f"{pad}{self.rule} = {value_to_text(self.value)}"]
        for c in self.checks:
            mark = "ok" if c.passed else "FAILED"
            lines.append(f"{pad}  - {c.condition} [{mark}]")
        for n in self.notes:
            lines.append(f"{pad}  * {n}")
        if show_rejected:
            for r in self.rejected:
                failed = ", ".join(c.condition for c in r.checks if not c.passed)
                lines.append(f"{pad}  x {r.rule} not applicable, failed: {failed}")
        for c in self.children:
            lines.append(c.render(indent + 1, show_rejected))
        return "\n".join(lines)


def value_to_json(value) -> Any:
    if isinstance(value, DimValue):
        return value.to_json()
    if isinstance(value, TriState):
        return {"tristate": value.value}
    if isinstance(value, tuple):
        return [value_to_json(v) for v in value]
    if hasattr(value, "to_json"):
        return value.to_json()
    return value


def value_to_text(value) -> str:
    if isinstance(value, tuple):
        return "(" + ", ".join(value_to_text(v) for v in value) + ")"
    return str(value)


def rejected(rule: str, checks: list[Check]) -> Trace:
    return Trace(rule, None, tuple(checks))
