"""Size reports emitted by the kernelization drivers.

Every driver returns, next to the kernel instance and its trace, a report
of explicit inequalities (actual value vs. bound) so callers and tests can
check the guaranteed kernel shape without re-deriving it. Reports never
raise; a violated bound simply shows up as ``ok=False``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class BoundCheck:
    name: str
    value: int
    bound: int

    @property
    def ok(self) -> bool:
        return self.value <= self.bound

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "bound": self.bound,
            "ok": self.ok,
        }


@dataclass(frozen=True)
class SizeReport:
    kind: str
    n_before: int
    n_after: int
    budget_before: int
    budget_after: int
    no_instance: bool = False
    modulator_size: Optional[int] = None
    pattern_count: Optional[int] = None
    path_count: Optional[int] = None
    max_leaf: Optional[int] = None
    checks: tuple[BoundCheck, ...] = field(default_factory=tuple)

    def check(self, name: str) -> BoundCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def all_ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n_before": self.n_before,
            "n_after": self.n_after,
            "budget_before": self.budget_before,
            "budget_after": self.budget_after,
            "no_instance": self.no_instance,
            "modulator_size": self.modulator_size,
            "pattern_count": self.pattern_count,
            "path_count": self.path_count,
            "max_leaf": self.max_leaf,
            "checks": [c.as_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2) + "\n"

    def summary_lines(self) -> list[str]:
        lines = [
            f"kernel kind: {self.kind}",
            f"vertices: {self.n_before} -> {self.n_after}",
            f"budget: {self.budget_before} -> {self.budget_after}",
        ]
        if self.no_instance:
            lines.append("budget exhausted: replaced by the canonical NO instance")
        if self.modulator_size is not None:
            lines.append(f"modulator size: {self.modulator_size}")
        if self.pattern_count is not None:
            lines.append(f"patterns: {self.pattern_count}")
        if self.path_count is not None:
            lines.append(f"subdivision paths: {self.path_count}")
        if self.max_leaf is not None:
            lines.append(f"max leaf number: {self.max_leaf}")
        for c in self.checks:
            status = "ok" if c.ok else "VIOLATED"
            lines.append(f"bound {c.name}: {c.value} <= {c.bound} [{status}]")
        return lines
