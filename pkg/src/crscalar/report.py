"""Verification reports: named checks with exact expected/actual strings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .exactalg.grammar import format_poly
from .exactalg.numbers import GaussianRational, format_rational
from .exactalg.poly import Poly

__all__ = ["SCHEMA_VERSION", "PROVENANCES", "Check", "Report", "exact_str"]

SCHEMA_VERSION = 1
PROVENANCES = ("paper", "trivial", "derived")


def exact_str(x) -> str:
    """Exact text for rationals, Gaussian rationals, polynomials and containers of them."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, Fraction)):
        return format_rational(x)
    if isinstance(x, GaussianRational):
        return str(x)
    if isinstance(x, Poly):
        # constants are reported as Gaussian rationals, everything else in the grammar
        return str(x.constant_value()) if x.is_constant() else format_poly(x)
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(exact_str(v) for v in x) + "]"
    if isinstance(x, dict):
        return "{" + ", ".join(f"{exact_str(k)}: {exact_str(v)}" for k, v in sorted(x.items())) + "}"
    if isinstance(x, (set, frozenset)):
        return "{" + ", ".join(sorted(exact_str(v) for v in x)) + "}"
    return str(x)


@dataclass
class Check:
    name: str
    passed: bool
    expected: str
    actual: str
    provenance: str

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def as_dict(self):
        return {
            "name": self.name,
            "status": self.status,
            "expected": self.expected,
            "actual": self.actual,
            "provenance": self.provenance,
        }


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)
    seconds: float = 0.0
    seed: int | None = None

    def add(self, name, expected, actual, provenance, passed=None) -> Check:
        """Record a check; by default it passes when expected == actual."""
        if passed is None:
            passed = expected == actual
        c = Check(name, bool(passed), exact_str(expected), exact_str(actual), provenance)
        self.checks.append(c)
        return c

    def extend(self, other: "Report"):
        self.checks.extend(other.checks)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def as_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "seed": self.seed,
            "status": "pass" if self.passed else "fail",
            "checks": [c.as_dict() for c in self.checks],
            "timing": {"seconds": round(self.seconds, 3)},
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2) + "\n"
