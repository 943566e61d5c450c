from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Violation:
    """One failed condition of a check."""
    kind: str
    detail: str
    where: tuple = ()

    def __str__(self) -> str:
        if self.where:
            return f"{self.kind} at {', '.join(str(w) for w in self.where)}: {self.detail}"
        return f"{self.kind}: {self.detail}"


@dataclass(frozen=True)
class CheckReport:
    """Result of a report-style check; passes when there are no violations."""
    name: str
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def lines(self) -> list[str]:
        if self.ok:
            return [f"{self.name}: pass"]
        return [f"{self.name}: FAIL"] + [f"  {v}" for v in self.violations]


@dataclass(frozen=True)
class SweepSummary:
    """Outcome of running a construction over a family of inputs."""
    name: str
    checked: int
    succeeded: int
    failures: tuple[str, ...] = ()
    skipped: int = 0  # inputs outside the construction's precondition

    @property
    def passed(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        head = f"{self.name}: {self.succeeded}/{self.checked} {'pass' if self.passed else 'FAIL'}"
        if self.skipped:
            head += f" ({self.skipped} skipped)"
        return [head] + [f"  {f}" for f in self.failures]


@dataclass(frozen=True)
class FixtureVerdict:
    """What a reconstructed fixture is expected to show next to what it shows."""
    name: str
    expected: str
    observed: str

    @property
    def discrepancy(self) -> bool:
        return self.expected != self.observed

    def manifest(self) -> dict[str, object]:
        return {
            "name": self.name,
            "expected": self.expected,
            "observed": self.observed,
            "discrepancy": self.discrepancy,
        }


@dataclass(frozen=True)
class PatternSummary:
    """Every check run on one pattern."""
    reports: tuple[CheckReport, ...]

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.reports)

    def report(self, name: str) -> CheckReport:
        for r in self.reports:
            if r.name == name:
                return r
        raise KeyError(name)

    def lines(self) -> list[str]:
        return [line for r in self.reports for line in r.lines()]

    def to_dict(self) -> dict[str, object]:
        return {
            "passed": self.passed,
            "checks": {r.name: [str(v) for v in r.violations] for r in self.reports},
        }
