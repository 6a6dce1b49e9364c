"""Terminal response force and plastic-regime feasibility of the bridge.

Under displacement-controlled stretching the response force grows until
a terminal value that depends on which springs end up plastic.  Two
regimes are covered: springs {1,3,5} plastic (domain D135) with force
c1+c3+c5, and springs {2,3,4} plastic (domain D234) with force c2+c3+c4.
Each regime is valid on a polyhedral domain of elastic limits; the
domains map onto each other under the index permutation ``mirror``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .circuit import as_springs, conductance, resistance

__all__ = [
    "EvalRecord",
    "FeasibilityReport",
    "PlasticDomain",
    "evaluate_all",
    "fabrication_cost",
    "feasibility",
    "feasibility_slacks",
    "mirror",
    "terminal_force",
]

DEFAULT_BOUNDARY_TOL = 1e-9


class PlasticDomain(enum.Enum):
    """Which spring set reaches the plastic mode terminally."""

    D135 = "d135"
    D234 = "d234"

    @classmethod
    def parse(cls, text: str) -> "PlasticDomain":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown domain {text!r}; expected 'd135' or 'd234'") from None

    @property
    def plastic_springs(self) -> tuple[int, int, int]:
        return (1, 3, 5) if self is PlasticDomain.D135 else (2, 3, 4)


@dataclass(frozen=True)
class FeasibilityReport:
    """Slack values of the four domain inequalities plus derived flags."""

    slacks: tuple[float, float, float, float]
    feasible: bool
    on_boundary: bool


def mirror(c: Sequence[float]) -> np.ndarray:
    """Swap springs 1<->2 and 4<->5: maps one plastic domain onto the other.

    The permutation leaves the resistance invariant and exchanges the
    two terminal-force formulas, so it is an involution between the
    D135 and D234 optimization problems.
    """
    arr = np.asarray(c, dtype=float)
    return arr[[1, 0, 2, 4, 3]]


def terminal_force(c: Sequence[float], domain: PlasticDomain) -> float:
    """Terminal response force, assuming ``domain``'s regime applies.

    Callers own the feasibility check; compose with :func:`feasibility`.
    """
    arr = as_springs(c)
    if domain is PlasticDomain.D135:
        return float(arr[0] + arr[2] + arr[4])
    return float(arr[1] + arr[2] + arr[3])


def fabrication_cost(c: Sequence[float]) -> float:
    """Total material budget c1+...+c5."""
    return float(np.sum(as_springs(c)))


def feasibility_slacks(c: Sequence[float], domain: PlasticDomain) -> tuple[float, float, float, float]:
    """Slacks of the four regime inequalities (nonnegative means satisfied).

    D135: -c2 <= c3+c5 <= c2 and -c4 <= c1+c3 <= c4.
    D234: -c1 <= c3+c4 <= c1 and -c5 <= c2+c3 <= c5.
    """
    c1, c2, c3, c4, c5 = as_springs(c)
    if domain is PlasticDomain.D135:
        return (c2 + c3 + c5, c2 - c3 - c5, c4 + c1 + c3, c4 - c1 - c3)
    return (c1 + c3 + c4, c1 - c3 - c4, c5 + c2 + c3, c5 - c2 - c3)


def feasibility(
    c: Sequence[float],
    domain: PlasticDomain,
    tol: float = DEFAULT_BOUNDARY_TOL,
) -> FeasibilityReport:
    """Closed-domain membership report with boundary detection.

    Optima routinely sit exactly on the domain boundary, so membership
    is tested against ``slack >= -tol`` and ``on_boundary`` flags any
    slack within ``tol`` of zero.
    """
    if tol < 0.0:
        raise ValueError("tolerance must be nonnegative")
    slacks = feasibility_slacks(c, domain)
    feasible = all(s >= -tol for s in slacks)
    on_boundary = any(abs(s) <= tol for s in slacks)
    return FeasibilityReport(slacks=slacks, feasible=feasible, on_boundary=on_boundary)


@dataclass(frozen=True)
class EvalRecord:
    """All functionals of one design: force, resistance, conductance, cost."""

    c: tuple[float, float, float, float, float]
    domain: PlasticDomain
    F: float
    R: float
    G: float
    C: float
    feasibility: FeasibilityReport

    def as_dict(self) -> dict:
        return {
            "c": list(self.c),
            "domain": self.domain.value,
            "F": self.F,
            "R": None if math.isinf(self.R) else self.R,
            "G": self.G,
            "C": self.C,
            "feasible": self.feasibility.feasible,
            "on_boundary": self.feasibility.on_boundary,
            "slacks": list(self.feasibility.slacks),
        }


def evaluate_all(
    c: Sequence[float],
    domain: PlasticDomain,
    tol: float = DEFAULT_BOUNDARY_TOL,
) -> EvalRecord:
    """Bundle terminal force, resistance, conductance, cost and feasibility."""
    arr = as_springs(c)
    return EvalRecord(
        c=tuple(float(x) for x in arr),
        domain=domain,
        F=terminal_force(arr, domain),
        R=resistance(arr),
        G=conductance(arr),
        C=fabrication_cost(arr),
        feasibility=feasibility(arr, domain, tol),
    )
