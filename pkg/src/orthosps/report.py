from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

#: Witnesses kept per check; the failure count is always exact.
MAX_WITNESSES = 5


@dataclass
class Check:
    name: str
    checked: int = 0
    failures: int = 0
    witnesses: list[dict[str, Any]] = field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, witness: Callable[[], dict[str, Any]] | None = None) -> bool:
        """Count one evaluation; ``witness`` is only called on failure."""
        self.checked += 1
        if not ok:
            self.failures += 1
            if witness is not None and len(self.witnesses) < MAX_WITNESSES:
                self.witnesses.append(witness())
        return ok

    def to_dict(self) -> dict[str, Any]:
        d = {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            "witnesses": self.witnesses,
        }
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    info: dict[str, Any] = field(default_factory=dict)

    def check(self, name: str, note: str = "") -> Check:
        c = Check(name, note=note)
        self.checks.append(c)
        return c

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def counterexamples(self) -> int:
        return sum(c.failures for c in self.checks)

    def to_dict(self) -> dict[str, Any]:
        return {
            "title": self.title,
            "passed": self.passed,
            "info": self.info,
            "checks": [c.to_dict() for c in self.checks],
        }

    def lines(self) -> list[str]:
        out = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            status = "pass" if c.passed else f"FAIL ({c.failures} counterexamples)"
            out.append(f"  {c.name:<28} {status}  [{c.checked} evaluated]")
            for w in c.witnesses:
                out.append(f"      witness: {w}")
        return out
