"""Conic admissibility of signed spring index sets.

A set of signed indices {(sign, j)} is admissible when the loading
direction lies in the convex cone spanned by the correspondingly signed
columns of the problem matrix, and irreducible when no proper subset is
admissible.  The irreducible admissible sets enumerate the candidate
terminal plastic regimes of the network.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .simplex import solve_nonneg_system

__all__ = [
    "AdmissibilityProblem",
    "SignedIndex",
    "benchmark_problem",
    "cone_member",
    "enumerate_irreducible",
]

_TOL = 1e-9

# Stacked loading/equilibrium matrix of the five-spring bridge and the
# loading direction it must positively span.
_BENCHMARK_MATRIX = (
    (1.0, 0.0, 1.0, 0.0, 1.0),
    (0.0, 0.0, 1.0, -1.0, 1.0),
    (1.0, -1.0, 1.0, 0.0, 0.0),
)
_BENCHMARK_TARGET = (1.0, 0.0, 0.0)


@dataclass(frozen=True, order=True)
class SignedIndex:
    """A spring index with an orientation sign."""

    sign: int
    spring: int

    def __post_init__(self) -> None:
        if self.sign not in (-1, 1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if self.spring < 1:
            raise ValueError("spring indices are 1-based")

    def __str__(self) -> str:
        return f"({'+' if self.sign > 0 else '-'},{self.spring})"

    def as_dict(self) -> dict:
        return {"sign": self.sign, "spring": self.spring}


@dataclass(frozen=True)
class AdmissibilityProblem:
    """Cone-inclusion data: a matrix whose signed columns are generators."""

    matrix: tuple[tuple[float, ...], ...]
    target: tuple[float, ...]

    def __post_init__(self) -> None:
        widths = {len(row) for row in self.matrix}
        if len(widths) != 1:
            raise ValueError("matrix rows must have equal length")
        if len(self.matrix) != len(self.target):
            raise ValueError("target length must match the matrix row count")

    @property
    def n_springs(self) -> int:
        return len(self.matrix[0])

    def generator(self, index: SignedIndex) -> np.ndarray:
        if index.spring > self.n_springs:
            raise ValueError(f"spring {index.spring} out of range 1..{self.n_springs}")
        col = np.array([row[index.spring - 1] for row in self.matrix])
        return index.sign * col

    def signed_indices(self) -> tuple[SignedIndex, ...]:
        return tuple(
            SignedIndex(sign, j)
            for j in range(1, self.n_springs + 1)
            for sign in (1, -1)
        )


def benchmark_problem() -> AdmissibilityProblem:
    """The five-spring bridge instance."""
    return AdmissibilityProblem(matrix=_BENCHMARK_MATRIX, target=_BENCHMARK_TARGET)


def cone_member(
    target: Sequence[float],
    generators: Iterable[Sequence[float]],
    tol: float = _TOL,
) -> bool:
    """True iff ``target`` = sum of nonnegative multiples of ``generators``.

    Decided by phase-one simplex feasibility.  An empty generator list
    spans only the origin, so the answer is then ``target == 0``.
    """
    tvec = np.asarray(target, dtype=float)
    gens = [np.asarray(g, dtype=float) for g in generators]
    if not gens:
        return bool(np.all(np.abs(tvec) <= tol))
    gmat = np.column_stack(gens)
    if gmat.shape[0] != tvec.size:
        raise ValueError("generator dimension does not match target")
    return solve_nonneg_system(gmat, tvec, tol=tol) is not None


def _admissible(problem: AdmissibilityProblem, subset: tuple[SignedIndex, ...], tol: float) -> bool:
    return cone_member(problem.target, [problem.generator(s) for s in subset], tol)


def enumerate_irreducible(
    problem: AdmissibilityProblem,
    tol: float = _TOL,
) -> list[frozenset[SignedIndex]]:
    """All irreducible admissible sets, smallest cardinality first.

    Enumerates subsets of the signed index pairs by increasing size,
    skipping any superset of an already-found admissible set (such a
    superset cannot be irreducible).  Minimality of every emitted set is
    guaranteed by the order of enumeration.  The result is canonically
    sorted, so it is independent of any internal iteration order.
    """
    indices = problem.signed_indices()
    found: list[frozenset[SignedIndex]] = []
    max_size = len(indices)
    for size in range(1, max_size + 1):
        for combo in combinations(indices, size):
            subset = frozenset(combo)
            if any(prev <= subset for prev in found):
                continue
            if _admissible(problem, combo, tol):
                found.append(subset)
    return sorted(
        found,
        key=lambda s: (len(s), sorted((idx.spring, -idx.sign) for idx in s)),
    )
