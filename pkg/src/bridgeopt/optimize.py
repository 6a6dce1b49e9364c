"""Constrained global optimizers over five-spring designs.

Two stochastic methods, both deterministic for a fixed seed:

* :func:`differential_evolution` - DE/rand/1/bin with box clipping and
  feasibility-first (Deb) selection.
* :func:`random_search` - multi-start pattern search over coordinate and
  pairwise-exchange directions, same selection order.

Constraint handling never trades feasibility against the objective:
candidates are ranked feasible-before-infeasible, then by total
constraint violation, then by objective.  A fixed penalty weight would
be unsound here because the resistance term of the objective is
unbounded near disconnected designs.

Ties in the objective (within a 1e-7 quantum, comfortably above the
constraint tolerance) are broken toward the smaller Euclidean norm and
then lexicographically.  Several of the studies have whole segments of
equally good designs; the tie rules, together with a polish step that
offers the symmetry images of a converged point (index mirror and
spring-order reversal), make the reported representative deterministic
and symmetric whenever the optimal set is itself symmetric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize as _scipy_minimize

from .plasticity import PlasticDomain, evaluate_all, mirror

__all__ = [
    "DEConfig",
    "OptProblem",
    "OptResult",
    "best_of",
    "differential_evolution",
    "evaluate_point",
    "polish",
    "random_search",
]

VALUE_QUANTUM = 1e-7

# Poll directions for the pattern search: +-e_i plus all pairwise
# exchanges +-(e_i - e_j).  Exchanges let the search slide along
# activity boundaries (constant-cost trades) that coordinate moves
# alone cannot follow.
def _poll_directions(n: int) -> np.ndarray:
    dirs = []
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        dirs.append(e.copy())
        dirs.append(-e)
    for i in range(n):
        for j in range(i + 1, n):
            d = np.zeros(n)
            d[i], d[j] = 1.0, -1.0
            dirs.append(d.copy())
            dirs.append(-d)
    return np.array(dirs)


_DIRS5 = _poll_directions(5)


@dataclass(frozen=True)
class OptProblem:
    """Objective, sense, box and constraints for one design problem.

    ``linear_constraints`` rows mean ``coef . c <= bound``.  Each entry
    of ``nonlinear_constraints`` returns a slack that is nonnegative for
    feasible points.  The optional batch callables evaluate a whole
    population at once ((n, 5) -> (n,)) and must agree with the scalar
    ones; ``batch_violation`` returns the total violation.
    """

    objective: Callable[[np.ndarray], float]
    sense: str = "maximize"
    lower: tuple[float, ...] = (0.0,) * 5
    upper: tuple[float, ...] = (2.0,) * 5
    linear_constraints: tuple[tuple[tuple[float, ...], float], ...] = ()
    nonlinear_constraints: tuple[Callable[[np.ndarray], float], ...] = ()
    domain: PlasticDomain = PlasticDomain.D135
    batch_objective: Callable[[np.ndarray], np.ndarray] | None = None
    batch_violation: Callable[[np.ndarray], np.ndarray] | None = None

    def __post_init__(self) -> None:
        if self.sense not in ("maximize", "minimize"):
            raise ValueError(f"sense must be 'maximize' or 'minimize', got {self.sense!r}")
        lo, hi = np.asarray(self.lower), np.asarray(self.upper)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise ValueError("box bounds must be equal-length vectors")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise ValueError("box bounds must be finite")
        if np.any(lo > hi):
            raise ValueError("lower bound exceeds upper bound")

    @property
    def dim(self) -> int:
        return len(self.lower)

    @property
    def sign(self) -> float:
        """Multiplier turning the objective into an internal minimization."""
        return -1.0 if self.sense == "maximize" else 1.0


@dataclass(frozen=True)
class DEConfig:
    """Differential-evolution parameters (population 10n for n=5)."""

    population: int = 50
    mutation: float = 0.7
    crossover: float = 0.9
    max_generations: int = 2000
    stagnation_tol: float = 1e-6
    stagnation_window: int = 200
    constraint_tol: float = 1e-8

    def __post_init__(self) -> None:
        if self.population < 4:
            raise ValueError("population must be at least 4")
        if not 0.0 < self.mutation < 2.0:
            raise ValueError("mutation factor must lie in (0, 2)")
        if not 0.0 <= self.crossover <= 1.0:
            raise ValueError("crossover rate must lie in [0, 1]")


@dataclass(frozen=True)
class OptResult:
    """A solved point with its functionals and provenance."""

    c_star: tuple[float, ...]
    value: float
    F: float
    R: float
    G: float
    C: float
    feasible: bool
    max_violation: float
    method: str
    seed: int
    generations: int
    sense: str = "maximize"

    def as_dict(self) -> dict:
        return {
            "c": list(self.c_star),
            "value": self.value,
            "F": self.F,
            "R": None if math.isinf(self.R) else self.R,
            "G": self.G,
            "C": self.C,
            "feasible": self.feasible,
            "max_violation": self.max_violation,
            "method": self.method,
            "seed": self.seed,
            "generations": self.generations,
        }


def _violations(problem: OptProblem, c: np.ndarray) -> tuple[float, float]:
    """(total, max) constraint violation at ``c``."""
    total = 0.0
    worst = 0.0
    for coef, bound in problem.linear_constraints:
        v = max(0.0, float(np.dot(coef, c)) - bound)
        total += v
        worst = max(worst, v)
    for fn in problem.nonlinear_constraints:
        v = max(0.0, -float(fn(c)))
        total += v
        worst = max(worst, v)
    return total, worst


def evaluate_point(problem: OptProblem, c: Sequence[float]) -> tuple[float, float, float]:
    """(objective, total violation, max violation) at ``c``."""
    arr = np.asarray(c, dtype=float)
    total, worst = _violations(problem, arr)
    return float(problem.objective(arr)), total, worst


def _selection_key(problem: OptProblem, c: np.ndarray, tol: float) -> tuple:
    """Feasibility-first comparison key; smaller is better."""
    obj, total, _ = evaluate_point(problem, c)
    if total > tol:
        return (1, total, 0, 0.0, ())
    q = int(round(problem.sign * obj / VALUE_QUANTUM))
    norm = float(np.dot(c, c))
    return (0, 0.0, q, norm, tuple(c.tolist()))


def _batch_eval(problem: OptProblem, pop: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(signed objective quantized, total violation) for a population."""
    if problem.batch_violation is not None:
        viol = problem.batch_violation(pop)
    else:
        viol = np.array([_violations(problem, row)[0] for row in pop])
    if problem.batch_objective is not None:
        obj = problem.batch_objective(pop)
    else:
        obj = np.array([float(problem.objective(row)) for row in pop])
    signed = problem.sign * obj
    signed = np.where(np.isfinite(signed), signed, np.inf)
    quantized = np.where(np.isfinite(signed), np.round(signed / VALUE_QUANTUM), 2**62)
    return quantized.astype(np.int64), viol


def _result_from(problem: OptProblem, c: np.ndarray, method: str, seed: int,
                 generations: int, tol: float) -> OptResult:
    obj, _, worst = evaluate_point(problem, c)
    clipped = np.clip(c, problem.lower, problem.upper)
    if problem.dim == 5 and np.all(np.asarray(problem.lower) >= 0.0):
        record = evaluate_all(clipped, problem.domain)
        f, r, g, cost = record.F, record.R, record.G, record.C
    else:
        f = r = g = cost = float("nan")
    return OptResult(
        c_star=tuple(float(v) for v in c),
        value=obj,
        F=f,
        R=r,
        G=g,
        C=cost,
        feasible=worst <= tol,
        max_violation=worst,
        method=method,
        seed=int(seed),
        generations=generations,
        sense=problem.sense,
    )


def _distinct_triples(rng: np.random.Generator, n_pop: int) -> np.ndarray:
    """For each i, three indices distinct from i and from each other."""
    idx = rng.integers(0, n_pop, size=(n_pop, 3))
    targets = np.arange(n_pop)
    while True:
        bad = (
            (idx[:, 0] == targets)
            | (idx[:, 1] == targets)
            | (idx[:, 2] == targets)
            | (idx[:, 0] == idx[:, 1])
            | (idx[:, 0] == idx[:, 2])
            | (idx[:, 1] == idx[:, 2])
        )
        if not bad.any():
            return idx
        idx[bad] = rng.integers(0, n_pop, size=(int(bad.sum()), 3))


def differential_evolution(
    problem: OptProblem,
    config: DEConfig = DEConfig(),
    seed: int = 0,
    do_polish: bool = True,
) -> OptResult:
    """Global search by DE/rand/1/bin under feasibility-first selection.

    Deterministic for fixed (problem, config, seed).  Stops early when
    the best value stagnates within ``stagnation_tol`` for
    ``stagnation_window`` consecutive generations.
    """
    rng = np.random.default_rng(seed)
    n = problem.dim
    lo = np.asarray(problem.lower)
    hi = np.asarray(problem.upper)
    n_pop = config.population
    tol = config.constraint_tol

    pop = rng.uniform(lo, hi, size=(n_pop, n))
    objq, viol = _batch_eval(problem, pop)
    feas = viol <= tol
    norm = np.einsum("ij,ij->i", pop, pop)

    best_track: float | None = None
    stall = 0
    gens = 0
    for gen in range(config.max_generations):
        gens = gen + 1
        idx = _distinct_triples(rng, n_pop)
        mutant = pop[idx[:, 0]] + config.mutation * (pop[idx[:, 1]] - pop[idx[:, 2]])
        cross = rng.random((n_pop, n)) < config.crossover
        cross[np.arange(n_pop), rng.integers(0, n, size=n_pop)] = True
        trial = np.clip(np.where(cross, mutant, pop), lo, hi)

        t_objq, t_viol = _batch_eval(problem, trial)
        t_feas = t_viol <= tol
        t_norm = np.einsum("ij,ij->i", trial, trial)

        # trial <= incumbent in (feasible, violation, objective, norm) order
        accept = (t_feas & ~feas) | (
            (t_feas == feas)
            & (
                (~t_feas & (t_viol <= viol))
                | (
                    t_feas
                    & ((t_objq < objq) | ((t_objq == objq) & (t_norm <= norm)))
                )
            )
        )
        pop[accept] = trial[accept]
        objq[accept] = t_objq[accept]
        viol[accept] = t_viol[accept]
        feas[accept] = t_feas[accept]
        norm[accept] = t_norm[accept]

        if feas.any():
            best_now = float(objq[feas].min()) * VALUE_QUANTUM
            if best_track is not None and abs(best_now - best_track) < config.stagnation_tol:
                stall += 1
                if stall >= config.stagnation_window:
                    break
            else:
                stall = 0
            best_track = best_now

    order = np.lexsort((norm, objq, viol, ~feas))
    # Re-rank the head of the population with the full key so exact ties
    # in value and norm resolve lexicographically.
    head = [pop[i] for i in order[: min(8, n_pop)]]
    best = min(head, key=lambda x: _selection_key(problem, x, tol)).copy()
    if do_polish:
        best = polish(problem, best, tol)
    return _result_from(problem, best, "DE", seed, gens, tol)


def _pattern_descent(
    problem: OptProblem,
    starts: np.ndarray,
    step0: float,
    step_tol: float,
    tol: float,
    max_rounds: int = 400,
    rng: np.random.Generator | None = None,
    n_random_dirs: int = 8,
) -> np.ndarray:
    """Lock-step pattern search on several starts at once.

    Best-improvement polling over coordinate and exchange directions;
    the step of a start is halved whenever its whole poll fails.  When
    ``rng`` is given, every round also polls ``n_random_dirs`` fresh
    random unit directions per start (dense polling): the fixed cone
    alone can stall on curved constraint ridges whose descent directions
    mix three or more coordinates.  The number of random draws per round
    is data-independent, so runs stay deterministic for a fixed seed.
    Returns the final points (one per start).
    """
    fixed = _DIRS5 if problem.dim == 5 else _poll_directions(problem.dim)
    lo = np.asarray(problem.lower)
    hi = np.asarray(problem.upper)
    pts = np.clip(np.asarray(starts, dtype=float), lo, hi)
    n_starts, n = pts.shape

    objq, viol = _batch_eval(problem, pts)
    feas = viol <= tol
    norm = np.einsum("ij,ij->i", pts, pts)
    steps = np.full(n_starts, step0)

    for _ in range(max_rounds):
        live = steps > step_tol
        if not live.any():
            break
        if rng is not None and n_random_dirs > 0:
            extra = rng.standard_normal((n_starts, n_random_dirs, n))
            lengths = np.linalg.norm(extra, axis=2, keepdims=True)
            extra /= np.where(lengths > 0, lengths, 1.0)
            cand = np.concatenate(
                (
                    pts[:, None, :] + steps[:, None, None] * fixed[None, :, :],
                    pts[:, None, :] + steps[:, None, None] * extra,
                ),
                axis=1,
            )
        else:
            cand = pts[:, None, :] + steps[:, None, None] * fixed[None, :, :]
        n_dirs = cand.shape[1]
        np.clip(cand, lo, hi, out=cand)
        flat = cand.reshape(n_starts * n_dirs, n)
        c_objq, c_viol = _batch_eval(problem, flat)
        c_feas = c_viol <= tol
        c_norm = np.einsum("ij,ij->i", flat, flat)

        # Strictly-better mask against each candidate's own start.
        r_feas = np.repeat(feas, n_dirs)
        r_viol = np.repeat(viol, n_dirs)
        r_objq = np.repeat(objq, n_dirs)
        r_norm = np.repeat(norm, n_dirs)
        better = (c_feas & ~r_feas) | (
            (c_feas == r_feas)
            & (
                (~c_feas & (c_viol < r_viol))
                | (c_feas & ((c_objq < r_objq) | ((c_objq == r_objq) & (c_norm < r_norm - 1e-15))))
            )
        )
        better &= np.repeat(live, n_dirs)
        better_grid = better.reshape(n_starts, n_dirs)

        # Rank candidates per start: violation first among infeasible,
        # objective then norm among feasible.
        rank_viol = np.where(c_feas, -1.0, c_viol).reshape(n_starts, n_dirs)
        rank_obj = np.where(c_feas, c_objq.astype(float), np.inf).reshape(n_starts, n_dirs)
        rank_norm = c_norm.reshape(n_starts, n_dirs)

        for s in range(n_starts):
            if not live[s]:
                continue
            choices = np.nonzero(better_grid[s])[0]
            if choices.size == 0:
                steps[s] *= 0.5
                continue
            cv = rank_viol[s, choices]
            co = rank_obj[s, choices]
            cn = rank_norm[s, choices]
            pick = choices[np.lexsort((cn, co, cv))[0]]
            k = s * n_dirs + pick
            pts[s] = flat[k]
            objq[s] = c_objq[k]
            viol[s] = c_viol[k]
            feas[s] = c_feas[k]
            norm[s] = c_norm[k]
    return pts


def _zero_snaps(c: np.ndarray) -> list[np.ndarray]:
    out = []
    for thresh in (1e-8, 1e-6, 1e-4, 1e-3):
        snapped = np.where(np.abs(c) < thresh, 0.0, c)
        if not np.array_equal(snapped, c):
            out.append(snapped)
    return out


def _symmetry_images(c: np.ndarray) -> list[np.ndarray]:
    """Images of ``c`` under the bridge's exact symmetries, plus averages.

    The index mirror (1<->2, 4<->5) and the spring-order reversal
    (relabel the terminals) both leave resistance and cost invariant;
    averaging with them lands on the symmetric representative when the
    surrounding optimal set is itself symmetric (otherwise the average
    simply fails the value/feasibility screen and is discarded).
    """
    images = [mirror(c), c[::-1].copy(), mirror(c[::-1])]
    out = list(images)
    out.extend(0.5 * (c + img) for img in images)
    out.append(0.25 * (c + images[0] + images[1] + images[2]))
    return out


def _smooth_refine(problem: OptProblem, x0: np.ndarray) -> np.ndarray | None:
    """One sequential-quadratic-programming step from a near-optimum.

    The direct searches track curved active-constraint ridges only
    slowly; an SLSQP refinement from an already connected, near-feasible
    point follows them to the bottom.  Returns None when the solver
    fails; any result is re-screened by the caller, so this can only
    ever improve a point.
    """
    sign = problem.sign

    def objective(x: np.ndarray) -> float:
        val = problem.objective(x)
        return sign * val if math.isfinite(val) else 1e9

    constraints = []
    for coef, bound in problem.linear_constraints:
        arr = np.asarray(coef, dtype=float)
        constraints.append({"type": "ineq", "fun": (lambda x, a=arr, b=bound: b - float(np.dot(a, x)))})
    for fn in problem.nonlinear_constraints:
        def slack(x: np.ndarray, f=fn) -> float:
            val = f(x)
            return val if math.isfinite(val) else -1e9
        constraints.append({"type": "ineq", "fun": slack})
    try:
        res = _scipy_minimize(
            objective,
            np.asarray(x0, dtype=float),
            method="SLSQP",
            bounds=list(zip(problem.lower, problem.upper)),
            constraints=constraints,
            options={"maxiter": 200, "ftol": 1e-12},
        )
    except (ValueError, OverflowError):
        return None
    if not np.all(np.isfinite(res.x)):
        return None
    return np.clip(res.x, problem.lower, problem.upper)


def polish(problem: OptProblem, c: Sequence[float], tol: float = 1e-8) -> np.ndarray:
    """Deterministic cleanup of a converged point.

    Tries value-preserving canonical candidates (tiny components snapped
    to zero; symmetry images and their averages), then a gradient-based
    refinement and a short pattern-search refinement.  Candidates are
    only accepted when they are feasible and not worse in the selection
    order, so a polish can never degrade a result.
    """
    base = np.asarray(c, dtype=float)
    key0 = _selection_key(problem, base, tol)

    def try_candidates(current: np.ndarray, current_key: tuple) -> tuple[np.ndarray, tuple]:
        cands: list[np.ndarray] = []
        cands.extend(_zero_snaps(current))
        if problem.dim == 5:
            for img in _symmetry_images(current):
                cands.append(img)
                cands.extend(_zero_snaps(img))
        best, best_key = current, current_key
        for cand in cands:
            cand = np.clip(cand, problem.lower, problem.upper)
            k = _selection_key(problem, cand, tol)
            if k < best_key:
                best, best_key = cand, k
        return best, best_key

    best, best_key = try_candidates(base, key0)
    smooth = _smooth_refine(problem, best)
    if smooth is not None:
        k_smooth = _selection_key(problem, smooth, tol)
        if k_smooth < best_key:
            best, best_key = smooth, k_smooth
    refined = _pattern_descent(
        problem,
        best[None, :],
        step0=0.1,
        step_tol=1e-8,
        tol=tol,
        rng=np.random.default_rng(0x5EED),
    )[0]
    k_ref = _selection_key(problem, refined, tol)
    if k_ref < best_key:
        best, best_key = refined, k_ref
    best, _ = try_candidates(best, best_key)
    return best


def random_search(
    problem: OptProblem,
    n_starts: int = 16,
    seed: int = 0,
    step_tol: float = 1e-8,
    do_polish: bool = True,
) -> OptResult:
    """Best of ``n_starts`` local pattern-search descents from random starts.

    Each start descends with the feasibility-first comparison; the best
    converged point (objective, then norm, then lexicographic order)
    wins.  Deterministic for a fixed seed.
    """
    if n_starts < 1:
        raise ValueError("n_starts must be positive")
    rng = np.random.default_rng(seed)
    lo = np.asarray(problem.lower)
    hi = np.asarray(problem.upper)
    tol = 1e-8
    starts = rng.uniform(lo, hi, size=(n_starts, problem.dim))
    finals = _pattern_descent(problem, starts, step0=0.25, step_tol=step_tol, tol=tol, rng=rng)
    keys = [_selection_key(problem, row, tol) for row in finals]
    best = finals[min(range(n_starts), key=lambda i: keys[i])]
    if do_polish:
        best = polish(problem, best, tol)
    return _result_from(problem, best, "RandomSearch", seed, n_starts, tol)


def best_of(results: Sequence[OptResult], problem: OptProblem | None = None) -> OptResult:
    """Deb-rule best of several results; ties go to the lower seed.

    All results must come from the same problem.  When ``problem`` is
    given the points are re-ranked with its full selection key;
    otherwise the stored fields (feasibility, violation, signed value)
    are compared.
    """
    if not results:
        raise ValueError("need at least one result")
    if len({r.sense for r in results}) != 1:
        raise ValueError("results mix maximization and minimization")

    def key(r: OptResult):
        if problem is not None:
            return _selection_key(problem, np.asarray(r.c_star), 1e-8) + (r.seed,)
        sign = -1.0 if r.sense == "maximize" else 1.0
        value_q = round(sign * r.value / VALUE_QUANTUM)
        return ((0 if r.feasible else 1), r.max_violation, value_q, r.seed)

    return min(results, key=key)
