"""Pass/fail reports for diagram checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .exactlin import DenseMap


@dataclass(frozen=True)
class CheckEntry:
    """One verified diagram: its name, the law it encodes, and the outcome.

    counterexample, when present, is (row, col, lhs, rhs): the first matrix
    entry where the two boundary paths differ, i.e. the coefficient of output
    basis vector `row` on input basis vector `col`.
    """

    name: str
    law: str
    passed: bool
    counterexample: Optional[tuple] = None


@dataclass(frozen=True)
class CheckReport:
    kind: str
    entries: tuple

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self):
        return [e for e in self.entries if not e.passed]

    def entry(self, name: str) -> CheckEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)


def make_report(kind: str, entries: Sequence[CheckEntry]) -> CheckReport:
    # deterministic ordering regardless of how the entries were produced
    return CheckReport(kind, tuple(sorted(entries, key=lambda e: e.name)))


def compare_entry(name: str, law: str, lhs: DenseMap, rhs: DenseMap) -> CheckEntry:
    diff = lhs.first_difference(rhs)
    return CheckEntry(name, law, diff is None, diff)
