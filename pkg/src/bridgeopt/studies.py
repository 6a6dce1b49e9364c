"""The four design studies over the weight plane (k1, k2).

A: maximize k1*F + k2*R   subject to cost <= 2 and F >= 0.75
B: maximize k1*F + k2*G   subject to cost <= 2 and F >= 0.75
C: minimize cost          subject to F >= 0.75 and k1*F + k2*R >= 0.5
D: minimize cost          subject to F >= 0.75 and k1*F + k2*G >= 0.5

plus, always, the plastic-regime inequalities of the chosen domain and
the box 0 <= c_i <= 2.  Designs with infinite resistance are treated as
violating an implicit connectivity constraint whenever the resistance
enters a functional with positive weight, so the search cannot ride the
resistance term to infinity by disconnecting the bridge.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .circuit import resistance, resistance_batch
from .optimize import OptProblem
from .plasticity import PlasticDomain

__all__ = [
    "COST_CAP",
    "FUNCTIONAL_FLOOR",
    "STRENGTH_FLOOR",
    "GridSpec",
    "StudyId",
    "StudySpec",
    "build_problem",
    "coarse_grid",
    "fine_grid",
]

COST_CAP = 2.0
STRENGTH_FLOOR = 0.75
FUNCTIONAL_FLOOR = 0.5


class StudyId(enum.Enum):
    A = "a"
    B = "b"
    C = "c"
    D = "d"

    @classmethod
    def parse(cls, text: str) -> "StudyId":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown study {text!r}; expected one of a, b, c, d") from None

    @property
    def sense(self) -> str:
        return "maximize" if self in (StudyId.A, StudyId.B) else "minimize"

    @property
    def uses_resistance(self) -> bool:
        return self in (StudyId.A, StudyId.C)


@dataclass(frozen=True)
class GridSpec:
    """Inclusive (k1, k2) grid with a common step."""

    k1_start: float = 0.1
    k1_stop: float = 1.0
    k2_start: float = 0.1
    k2_stop: float = 1.0
    step: float = 0.1

    def __post_init__(self) -> None:
        if self.step <= 0.0:
            raise ValueError("grid step must be positive")
        if self.k1_stop < self.k1_start or self.k2_stop < self.k2_start:
            raise ValueError("grid ranges must be nonempty")

    def k1_values(self) -> tuple[float, ...]:
        return _inclusive_range(self.k1_start, self.k1_stop, self.step)

    def k2_values(self) -> tuple[float, ...]:
        return _inclusive_range(self.k2_start, self.k2_stop, self.step)

    def cells(self) -> tuple[tuple[float, float], ...]:
        return tuple((k1, k2) for k1 in self.k1_values() for k2 in self.k2_values())

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """Parse 'start:stop:step' (square grid) into a spec."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid must look like start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        return cls(k1_start=start, k1_stop=stop, k2_start=start, k2_stop=stop, step=step)


def _inclusive_range(start: float, stop: float, step: float) -> tuple[float, ...]:
    count = int(round((stop - start) / step)) + 1
    values = tuple(round(start + i * step, 12) for i in range(count))
    return tuple(v for v in values if v <= stop + 1e-9)


def coarse_grid() -> GridSpec:
    return GridSpec()


def fine_grid() -> GridSpec:
    """Zoom used for the cost studies near small weights."""
    return GridSpec(k1_start=0.1, k1_stop=0.4, k2_start=0.1, k2_stop=0.2, step=0.02)


@dataclass(frozen=True)
class StudySpec:
    """A study id, the weight grid to sweep, and the domains to solve."""

    study: StudyId
    grid: GridSpec
    domains: tuple[PlasticDomain, ...] = (PlasticDomain.D135, PlasticDomain.D234)

    def __post_init__(self) -> None:
        if not self.domains:
            raise ValueError("need at least one plastic domain")


def _force_row(domain: PlasticDomain) -> np.ndarray:
    row = np.zeros(5)
    if domain is PlasticDomain.D135:
        row[[0, 2, 4]] = 1.0
    else:
        row[[1, 2, 3]] = 1.0
    return row


def _domain_rows(domain: PlasticDomain) -> list[tuple[tuple[float, ...], float]]:
    """The four regime inequalities as rows with row . c <= 0."""
    if domain is PlasticDomain.D135:
        rows = [
            (0.0, -1.0, 1.0, 0.0, 1.0),   # c3 + c5 <= c2
            (0.0, -1.0, -1.0, 0.0, -1.0),  # -(c2 + c3 + c5) <= 0
            (1.0, 0.0, 1.0, -1.0, 0.0),   # c1 + c3 <= c4
            (-1.0, 0.0, -1.0, -1.0, 0.0),  # -(c1 + c3 + c4) <= 0
        ]
    else:
        rows = [
            (-1.0, 0.0, 1.0, 1.0, 0.0),   # c3 + c4 <= c1
            (-1.0, 0.0, -1.0, -1.0, 0.0),  # -(c1 + c3 + c4) <= 0
            (0.0, 1.0, 1.0, 0.0, -1.0),   # c2 + c3 <= c5
            (0.0, -1.0, -1.0, 0.0, -1.0),  # -(c2 + c3 + c5) <= 0
        ]
    return [(row, 0.0) for row in rows]


def build_problem(
    study: StudyId,
    k1: float,
    k2: float,
    domain: PlasticDomain,
    box_upper: float = COST_CAP,
) -> OptProblem:
    """Assemble the :class:`OptProblem` for one study at one weight pair."""
    if k1 < 0.0 or k2 < 0.0 or not (math.isfinite(k1) and math.isfinite(k2)):
        raise ValueError("weights must be finite and nonnegative")
    force = _force_row(domain)
    linear: list[tuple[tuple[float, ...], float]] = list(_domain_rows(domain))
    linear.append((tuple(-force), -STRENGTH_FLOOR))  # F >= 0.75
    if study in (StudyId.A, StudyId.B):
        linear.append(((1.0,) * 5, COST_CAP))

    def force_of(c: np.ndarray) -> float:
        return float(np.dot(force, c))

    if study is StudyId.A:
        def objective(c: np.ndarray) -> float:
            r = resistance(c)
            return k1 * force_of(c) + (k2 * r if math.isfinite(r) else 0.0)

        def batch_objective(pop: np.ndarray) -> np.ndarray:
            r = resistance_batch(pop)
            return k1 * (pop @ force) + k2 * np.where(np.isfinite(r), r, 0.0)
    elif study is StudyId.B:
        def objective(c: np.ndarray) -> float:
            r = resistance(c)
            g = 0.0 if math.isinf(r) else 1.0 / r
            return k1 * force_of(c) + k2 * g

        def batch_objective(pop: np.ndarray) -> np.ndarray:
            r = resistance_batch(pop)
            g = np.where(np.isfinite(r) & (r > 0.0), 1.0 / np.where(r > 0.0, r, 1.0), 0.0)
            return k1 * (pop @ force) + k2 * g
    else:
        def objective(c: np.ndarray) -> float:
            return float(np.sum(c))

        def batch_objective(pop: np.ndarray) -> np.ndarray:
            return pop.sum(axis=1)

    nonlinear: list = []
    if study is StudyId.A:
        def connectivity(c: np.ndarray) -> float:
            return 0.0 if math.isfinite(resistance(c)) else -1.0

        nonlinear.append(connectivity)
    elif study is StudyId.C:
        def functional_floor_r(c: np.ndarray) -> float:
            r = resistance(c)
            if math.isinf(r):
                return -1.0
            return k1 * force_of(c) + k2 * r - FUNCTIONAL_FLOOR

        nonlinear.append(functional_floor_r)
    elif study is StudyId.D:
        def functional_floor_g(c: np.ndarray) -> float:
            r = resistance(c)
            g = 0.0 if math.isinf(r) else 1.0 / r
            return k1 * force_of(c) + k2 * g - FUNCTIONAL_FLOOR

        nonlinear.append(functional_floor_g)

    rows = np.array([row for row, _ in linear])
    bounds = np.array([b for _, b in linear])

    def batch_violation(pop: np.ndarray) -> np.ndarray:
        lin = pop @ rows.T - bounds
        total = np.maximum(lin, 0.0).sum(axis=1)
        if study is StudyId.A:
            total = total + np.where(np.isfinite(resistance_batch(pop)), 0.0, 1.0)
        elif study is StudyId.C:
            r = resistance_batch(pop)
            fr = k1 * (pop @ force) + k2 * np.where(np.isfinite(r), r, 0.0)
            miss = np.where(np.isfinite(r), np.maximum(FUNCTIONAL_FLOOR - fr, 0.0), 1.0)
            total = total + miss
        elif study is StudyId.D:
            r = resistance_batch(pop)
            g = np.where(np.isfinite(r) & (r > 0.0), 1.0 / np.where(r > 0.0, r, 1.0), 0.0)
            fg = k1 * (pop @ force) + k2 * g
            total = total + np.maximum(FUNCTIONAL_FLOOR - fg, 0.0)
        return total

    return OptProblem(
        objective=objective,
        sense=study.sense,
        lower=(0.0,) * 5,
        upper=(box_upper,) * 5,
        linear_constraints=tuple((tuple(row), float(b)) for row, b in linear),
        nonlinear_constraints=tuple(nonlinear),
        domain=domain,
        batch_objective=batch_objective,
        batch_violation=batch_violation,
    )
