"""Verdicts, checks and reports shared by every checker."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


def combine(verdicts) -> str:
    verdicts = list(verdicts)
    if FAIL in verdicts:
        return FAIL
    if INCONCLUSIVE in verdicts:
        return INCONCLUSIVE
    return PASS


@dataclass
class Check:
    name: str
    verdict: str
    witness: Any = None
    counterexamples: list = field(default_factory=list)
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS


@dataclass
class Report:
    command: str
    probe_universe: str
    checks: list[Check] = field(default_factory=list)
    detail: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        """Combined verdict of the checks, leaving out those marked out of scope."""
        return combine(c.verdict for c in self.checks if not c.detail.get("out_of_scope"))

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.verdict, c.witness, c.counterexamples, c.detail))

    def summary(self) -> str:
        lines = [f"{self.command}: {self.verdict}  [probes: {self.probe_universe}]"]
        for c in sorted(self.checks, key=lambda c: c.name):
            extra = f"  ({len(c.counterexamples)} counterexamples)" if c.counterexamples else ""
            lines.append(f"  {c.verdict:<12} {c.name}{extra}")
        return "\n".join(lines)


def checklist(name: str, failures: list, inconclusive: list | None = None, **detail) -> Check:
    """A check from a list of counterexamples (and optional guard hits)."""
    inconclusive = inconclusive or []
    if failures:
        verdict = FAIL
    elif inconclusive:
        verdict = INCONCLUSIVE
    else:
        verdict = PASS
    if inconclusive:
        detail["guard_hits"] = len(inconclusive)
    return Check(name, verdict, failures[0] if failures else None, list(failures), detail)


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
