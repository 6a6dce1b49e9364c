"""Equivalent resistance and conductance of the five-spring bridge network.

Spring i doubles as a resistor with resistance 1/c_i, where c_i is the
spring's elastic limit.  The bridge lives on four nodes: the loaded
terminals are node 1 (source) and node 4 (sink), springs connect
1-2, 1-3, 2-3, 2-4, 3-4 in that order.  Everything here is pure and
stateless; all functions accept any sequence of five nonnegative floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "BRIDGE_EDGES",
    "NumericalSolveError",
    "ResistorNetwork",
    "as_springs",
    "bridge_network",
    "conductance",
    "cross_term_gap",
    "resistance",
    "resistance_batch",
    "solve_network",
]

# (node_a, node_b) for springs 1..5 on nodes 1..4 (0-indexed here).
BRIDGE_EDGES = ((0, 1), (0, 2), (1, 2), (1, 3), (2, 3))

_SOURCE = 0
_SINK = 3


class NumericalSolveError(RuntimeError):
    """Node-potential system is singular although the terminals are connected."""


def as_springs(c: Sequence[float]) -> np.ndarray:
    """Validate and return the elastic limits as a float array of shape (5,)."""
    arr = np.asarray(c, dtype=float)
    if arr.shape != (5,):
        raise ValueError(f"expected 5 elastic limits, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("elastic limits must be finite")
    if np.any(arr < 0.0):
        raise ValueError(f"elastic limits must be nonnegative, got {arr.tolist()}")
    return arr


def _closed_form_terms(c: np.ndarray) -> tuple[float, float, float]:
    """Numerator, denominator and the c1*c3*(c4+c5) denominator term.

    Denominators are cleared, so c_i = 0 never produces an intermediate
    division by zero.  The denominator is the spanning-tree polynomial of
    the bridge graph; the numerator sums the two-tree forests separating
    the terminals.
    """
    c1, c2, c3, c4, c5 = c
    num = c3 * c4 + c2 * (c3 + c4) + c3 * c5 + c4 * c5 + c1 * (c2 + c3 + c5)
    cross = c1 * c3 * (c4 + c5)
    den = c1 * c4 * c5 + c2 * c4 * c5 + c1 * c2 * (c4 + c5) + c2 * c3 * (c4 + c5) + cross
    return num, den, cross


def resistance(c: Sequence[float], include_cross_term: bool = True) -> float:
    """Equivalent resistance between the two loaded terminals.

    Returns ``math.inf`` when the terminals are disconnected.  The
    denominator vanishes whenever the graph of positive springs is
    disconnected as a whole, which includes configurations whose
    terminals are still joined by a two-spring series path; those are
    reduced to the surviving path instead of being reported as open.

    ``include_cross_term=False`` drops the c1*c3*(c4+c5) denominator
    term, selecting an alternate published closed form that agrees with
    the full one exactly when c1*c3 == 0 (see :func:`cross_term_gap`).
    """
    arr = as_springs(c)
    num, den, cross = _closed_form_terms(arr)
    if not include_cross_term:
        den -= cross
    if den > 0.0:
        return num / den
    # Denominator zero: no spanning tree.  The terminals may still be
    # connected through one of the two series paths (node 3 or node 2
    # dangling); everything else is an open circuit.
    c1, c2, c3, c4, c5 = arr
    if c1 > 0.0 and c4 > 0.0:
        return 1.0 / c1 + 1.0 / c4
    if c2 > 0.0 and c5 > 0.0:
        return 1.0 / c2 + 1.0 / c5
    return math.inf


def conductance(c: Sequence[float]) -> float:
    """Equivalent conductance: 1/resistance, and 0 for an open circuit."""
    r = resistance(c)
    return 0.0 if math.isinf(r) else 1.0 / r


def cross_term_gap(c: Sequence[float]) -> float:
    """Absolute disagreement between the two closed forms at ``c``.

    Zero whenever c1*c3 == 0; positive otherwise, flagging points where
    the cross-term-free variant is wrong.
    """
    with_term = resistance(c, include_cross_term=True)
    without = resistance(c, include_cross_term=False)
    if math.isinf(with_term) and math.isinf(without):
        return 0.0
    return abs(with_term - without)


def resistance_batch(pop: np.ndarray) -> np.ndarray:
    """Vectorized :func:`resistance` over an (n, 5) array of spring sets."""
    c1, c2, c3, c4, c5 = (pop[:, i] for i in range(5))
    num = c3 * c4 + c2 * (c3 + c4) + c3 * c5 + c4 * c5 + c1 * (c2 + c3 + c5)
    den = c1 * c4 * c5 + c2 * c4 * c5 + c1 * c2 * (c4 + c5) + c2 * c3 * (c4 + c5) + c1 * c3 * (c4 + c5)
    out = np.full(pop.shape[0], np.inf)
    ok = den > 0.0
    out[ok] = num[ok] / den[ok]
    series14 = ~ok & (c1 > 0.0) & (c4 > 0.0)
    out[series14] = 1.0 / c1[series14] + 1.0 / c4[series14]
    series25 = ~ok & (c2 > 0.0) & (c5 > 0.0)
    out[series25] = 1.0 / c2[series25] + 1.0 / c5[series25]
    return out


@dataclass(frozen=True)
class ResistorNetwork:
    """A resistor network given by edge conductances between two terminals."""

    node_count: int
    edges: tuple[tuple[int, int, float], ...]
    source: int
    sink: int

    def __post_init__(self) -> None:
        if self.node_count < 2:
            raise ValueError("need at least two nodes")
        if not (0 <= self.source < self.node_count) or not (0 <= self.sink < self.node_count):
            raise ValueError("terminal ids out of range")
        if self.source == self.sink:
            raise ValueError("source and sink must differ")
        for a, b, g in self.edges:
            if not (0 <= a < self.node_count and 0 <= b < self.node_count):
                raise ValueError(f"edge ({a},{b}) out of range")
            if not math.isfinite(g) or g < 0.0:
                raise ValueError(f"conductance must be finite and nonnegative, got {g}")


def bridge_network(c: Sequence[float]) -> ResistorNetwork:
    """The five-spring bridge as a :class:`ResistorNetwork` (springs -> conductances)."""
    arr = as_springs(c)
    edges = tuple((a, b, float(g)) for (a, b), g in zip(BRIDGE_EDGES, arr))
    return ResistorNetwork(node_count=4, edges=edges, source=_SOURCE, sink=_SINK)


def _reachable(net: ResistorNetwork, start: int) -> set[int]:
    adjacency: dict[int, list[int]] = {}
    for a, b, g in net.edges:
        if g > 0.0:
            adjacency.setdefault(a, []).append(b)
            adjacency.setdefault(b, []).append(a)
    seen = {start}
    stack = [start]
    while stack:
        node = stack.pop()
        for nxt in adjacency.get(node, ()):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def solve_network(net: ResistorNetwork) -> float:
    """Equivalent resistance of ``net`` via the node-potential linear system.

    The sink is grounded at potential 0 and the source held at 1; the
    junction law at every other node gives a linear system for the
    internal potentials, and the equivalent conductance is the current
    leaving the source.  Returns ``math.inf`` when the terminals are
    disconnected.  Raises :class:`NumericalSolveError` if the reduced
    system is singular even though the terminals are connected.
    """
    component = _reachable(net, net.source)
    if net.sink not in component:
        return math.inf
    internal = sorted(component - {net.source, net.sink})
    index = {node: i for i, node in enumerate(internal)}
    n = len(internal)
    lap = np.zeros((n, n))
    rhs = np.zeros(n)
    source_degree = 0.0
    for a, b, g in net.edges:
        if g <= 0.0 or a not in component:
            continue
        for u, v in ((a, b), (b, a)):
            if u in index:
                lap[index[u], index[u]] += g
                if v in index:
                    lap[index[u], index[v]] -= g
                elif v == net.source:
                    rhs[index[u]] += g
        if net.source in (a, b):
            source_degree += g
    if n == 0:
        potentials = np.zeros(0)
    else:
        try:
            potentials = np.linalg.solve(lap, rhs)
        except np.linalg.LinAlgError as exc:
            raise NumericalSolveError("singular node-potential system with connected terminals") from exc
    current = 0.0
    for a, b, g in net.edges:
        if g <= 0.0 or net.source not in (a, b):
            continue
        other = b if a == net.source else a
        v_other = 0.0 if other == net.sink else potentials[index[other]]
        current += g * (1.0 - v_other)
    if current <= 0.0:
        raise NumericalSolveError("no current despite connected terminals")
    return 1.0 / current
