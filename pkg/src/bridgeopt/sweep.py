"""Grid sweeps of the four studies, classification and threshold fitting.

Each (k1, k2) cell of a study is solved independently on each requested
plastic domain with both optimizers; the better result is kept.  Cell
seeds derive from the master seed and the cell coordinates, so the
report is reproducible regardless of execution order or worker count.
The mirror map between the two domains is exploited once more after the
independent solves: the mirrored best of one domain is offered to the
other and kept only when strictly better there.
"""

from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Mapping

import numpy as np

from .optimize import DEConfig, OptResult, best_of, differential_evolution, evaluate_point, polish, random_search
from .plasticity import PlasticDomain, evaluate_all, mirror
from .studies import STRENGTH_FLOOR, GridSpec, StudyId, StudySpec, build_problem

__all__ = [
    "ChecklistItem",
    "SweepCell",
    "SweepReport",
    "ThresholdFit",
    "cell_seed",
    "classify_cells",
    "detect_threshold",
    "report_from_dict",
    "report_to_dict",
    "run_study",
    "verify_propositions",
]

COST_FLOOR = 2.0 * STRENGTH_FLOOR  # cheapest design meeting the strength floor

# Canonical optimal patterns of study A, used as classification anchors.
ANCHOR_BRIDGED = (0.0, 0.75, 0.5, 0.5, 0.25)   # (F, R) = (0.75, 10/3), label "red"
ANCHOR_BALANCED = (0.5, 0.5, 0.0, 0.5, 0.5)    # (F, R) = (1, 2),      label "blue"

NEAR_TIE_GAP = 0.005
CLUSTER_TOL = 0.03


@dataclass(frozen=True)
class SweepCell:
    """One grid cell solved on one plastic domain."""

    k1: float
    k2: float
    domain: PlasticDomain
    result: OptResult
    label: str = ""
    cluster: int = -1


@dataclass(frozen=True)
class SweepReport:
    study: StudyId
    grid: GridSpec
    master_seed: int
    cells: tuple[SweepCell, ...]

    def domain_cells(self, domain: PlasticDomain) -> tuple[SweepCell, ...]:
        return tuple(c for c in self.cells if c.domain is domain)

    def cell(self, k1: float, k2: float, domain: PlasticDomain) -> SweepCell:
        for c in self.cells:
            if c.domain is domain and abs(c.k1 - k1) < 1e-9 and abs(c.k2 - k2) < 1e-9:
                return c
        raise KeyError(f"no cell at ({k1}, {k2}, {domain.value})")


@dataclass(frozen=True)
class ThresholdFit:
    """Maximum-margin separating line k2 = slope * k1 + intercept."""

    slope: float
    intercept: float
    separable: bool
    margin: float

    def side(self, k1: float, k2: float) -> float:
        """Signed offset of a point from the line (positive = above)."""
        if math.isinf(self.slope):
            return k1 - self.intercept
        return k2 - (self.slope * k1 + self.intercept)


@dataclass(frozen=True)
class ChecklistItem:
    clause: str
    status: str  # "pass" | "fail" | "not evaluated"
    details: str = ""


def cell_seed(master_seed: int, k1: float, k2: float, domain: PlasticDomain, method: str) -> int:
    """Schedule-independent 63-bit seed for one optimizer call."""
    tag = f"{master_seed}|{k1:.6f}|{k2:.6f}|{domain.value}|{method}"
    digest = hashlib.sha256(tag.encode()).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def _solve_cell(args: tuple) -> tuple:
    study_value, k1, k2, domain_value, master_seed, methods, de_config = args
    study = StudyId(study_value)
    domain = PlasticDomain(domain_value)
    problem = build_problem(study, k1, k2, domain)
    runs: list[OptResult] = []
    if "de" in methods:
        runs.append(
            differential_evolution(
                problem, de_config, seed=cell_seed(master_seed, k1, k2, domain, "de")
            )
        )
    if "rs" in methods:
        runs.append(
            random_search(problem, seed=cell_seed(master_seed, k1, k2, domain, "rs"))
        )
    best = best_of(runs, problem)
    return (k1, k2, domain_value, best)


def run_study(
    spec: StudySpec,
    de_config: DEConfig = DEConfig(),
    master_seed: int = 0,
    n_jobs: int = 1,
    methods: tuple[str, ...] = ("de", "rs"),
    mirror_exchange: bool = True,
) -> SweepReport:
    """Solve every cell of ``spec`` and return the classified report.

    ``n_jobs`` > 1 distributes cells over worker processes; results are
    assembled in a fixed order so the report is identical for any job
    count.  With ``mirror_exchange`` each domain's solution is offered,
    mirrored, to the other domain after the independent solves, and is
    adopted only when strictly better under that domain's constraints.
    """
    if not methods:
        raise ValueError("need at least one method")
    jobs = [
        (spec.study.value, k1, k2, domain.value, master_seed, tuple(methods), de_config)
        for (k1, k2) in spec.grid.cells()
        for domain in spec.domains
    ]
    if n_jobs > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            raw = list(pool.map(_solve_cell, jobs, chunksize=4))
    else:
        raw = [_solve_cell(j) for j in jobs]
    raw.sort(key=lambda t: (t[0], t[1], t[2]))

    solved: dict[tuple[float, float, str], OptResult] = {
        (k1, k2, dv): result for k1, k2, dv, result in raw
    }
    if mirror_exchange and len(spec.domains) == 2:
        solved = _mirror_exchange(spec.study, solved)

    cells = tuple(
        SweepCell(k1=k1, k2=k2, domain=PlasticDomain(dv), result=res)
        for (k1, k2, dv), res in sorted(solved.items())
    )
    report = SweepReport(study=spec.study, grid=spec.grid, master_seed=master_seed, cells=cells)
    return classify_cells(report)


def _mirror_exchange(
    study: StudyId, solved: Mapping[tuple[float, float, str], OptResult]
) -> dict[tuple[float, float, str], OptResult]:
    """Adopt the mirrored partner solution where it is strictly better."""
    out = dict(solved)
    partner = {
        PlasticDomain.D135.value: PlasticDomain.D234.value,
        PlasticDomain.D234.value: PlasticDomain.D135.value,
    }
    for (k1, k2, dv), res in solved.items():
        other = solved.get((k1, k2, partner[dv]))
        if other is None:
            continue
        problem = build_problem(study, k1, k2, PlasticDomain(dv))
        candidate = np.clip(mirror(np.asarray(other.c_star)), problem.lower, problem.upper)
        cand_obj, cand_total, _ = evaluate_point(problem, candidate)
        if cand_total > 1e-8:
            continue
        own_better = res.feasible and problem.sign * res.value <= problem.sign * cand_obj + 1e-9
        if own_better:
            continue
        polished = polish(problem, candidate)
        obj, _, worst = evaluate_point(problem, polished)
        record = evaluate_all(polished, problem.domain)
        out[(k1, k2, dv)] = OptResult(
            c_star=tuple(float(v) for v in polished),
            value=obj,
            F=record.F,
            R=record.R,
            G=record.G,
            C=record.C,
            feasible=worst <= 1e-8,
            max_violation=worst,
            method=res.method + "+mirror",
            seed=res.seed,
            generations=res.generations,
            sense=res.sense,
        )
    return out


def _study_signature(study: StudyId, result: OptResult) -> tuple[float, ...]:
    if study is StudyId.A:
        return (result.F, result.R)
    if study is StudyId.B:
        return (result.F, result.G)
    return (result.C,)


def _label_cell(study: StudyId, cell: SweepCell, value_tol: float) -> str:
    res = cell.result
    if not res.feasible:
        return "infeasible"
    if study in (StudyId.A, StudyId.B):
        red = evaluate_point(build_problem(study, cell.k1, cell.k2, cell.domain), np.asarray(ANCHOR_BRIDGED))[0]
        blue = evaluate_point(build_problem(study, cell.k1, cell.k2, cell.domain), np.asarray(ANCHOR_BALANCED))[0]
        if study is StudyId.A and abs(red - blue) < NEAR_TIE_GAP:
            return "degenerate"
        sig = _study_signature(study, res)
        anchor_red = (0.75, 10.0 / 3.0) if study is StudyId.A else (0.75, 0.3)
        anchor_blue = (1.0, 2.0) if study is StudyId.A else (1.0, 0.5)
        if all(abs(s - a) <= value_tol for s, a in zip(sig, anchor_red)):
            return "red"
        if all(abs(s - a) <= value_tol for s, a in zip(sig, anchor_blue)):
            return "blue"
        return "other"
    # Cost studies: the floor class is the cheapest strength-feasible cost.
    return "floor" if abs(res.C - COST_FLOOR) <= value_tol else "above"


def classify_cells(report: SweepReport, value_tol: float = 0.02) -> SweepReport:
    """Label cells by outcome signature and cluster equal designs.

    Designs are clustered by componentwise distance <= 0.03 (covers the
    reference solver noise); cluster ids are assigned in cell order.
    """
    labeled: list[SweepCell] = []
    centroids: list[np.ndarray] = []
    for cell in report.cells:
        label = _label_cell(report.study, cell, value_tol)
        c = np.asarray(cell.result.c_star)
        cluster = -1
        if cell.result.feasible:
            for i, ref in enumerate(centroids):
                if np.max(np.abs(ref - c)) <= CLUSTER_TOL:
                    cluster = i
                    break
            if cluster < 0:
                centroids.append(c)
                cluster = len(centroids) - 1
        labeled.append(replace(cell, label=label, cluster=cluster))
    return replace(report, cells=tuple(labeled))


# -- maximum-margin separating line ----------------------------------------

def _convex_hull(points: np.ndarray) -> np.ndarray:
    """Monotone-chain hull (counterclockwise, no duplicate endpoint)."""
    pts = np.unique(points, axis=0)
    if len(pts) <= 2:
        return pts
    pts = pts[np.lexsort((pts[:, 1], pts[:, 0]))]

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[np.ndarray] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[np.ndarray] = []
    for p in pts[::-1]:
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1])


def _segment_distance(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> tuple[float, np.ndarray]:
    ab = b - a
    denom = float(ab @ ab)
    t = 0.0 if denom == 0.0 else float(np.clip((p - a) @ ab / denom, 0.0, 1.0))
    q = a + t * ab
    return float(np.linalg.norm(p - q)), q


def _segments(hull: np.ndarray) -> list[tuple[np.ndarray, np.ndarray]]:
    if len(hull) == 1:
        return [(hull[0], hull[0])]
    return [(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull))]


def _hulls_intersect(h1: np.ndarray, h2: np.ndarray) -> bool:
    def inside(pt, hull):
        if len(hull) == 1:
            return bool(np.allclose(pt, hull[0]))
        if len(hull) == 2:
            d, _ = _segment_distance(pt, hull[0], hull[1])
            return d < 1e-12
        sign = 0.0
        for a, b in _segments(hull):
            cr = (b[0] - a[0]) * (pt[1] - a[1]) - (b[1] - a[1]) * (pt[0] - a[0])
            if abs(cr) < 1e-15:
                continue
            if sign == 0.0:
                sign = math.copysign(1.0, cr)
            elif math.copysign(1.0, cr) != sign:
                return False
        return True

    def seg_cross(p1, p2, p3, p4):
        d1 = (p2[0] - p1[0]) * (p3[1] - p1[1]) - (p2[1] - p1[1]) * (p3[0] - p1[0])
        d2 = (p2[0] - p1[0]) * (p4[1] - p1[1]) - (p2[1] - p1[1]) * (p4[0] - p1[0])
        d3 = (p4[0] - p3[0]) * (p1[1] - p3[1]) - (p4[1] - p3[1]) * (p1[0] - p3[0])
        d4 = (p4[0] - p3[0]) * (p2[1] - p3[1]) - (p4[1] - p3[1]) * (p2[0] - p3[0])
        if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)):
            return True
        return False

    for a, b in _segments(h1):
        for u, v in _segments(h2):
            if seg_cross(a, b, u, v):
                return True
    return any(inside(p, h2) for p in h1) or any(inside(p, h1) for p in h2)


def detect_threshold(report: SweepReport, class_a: str, class_b: str) -> ThresholdFit:
    """Maximum-margin line between two label classes in the weight plane.

    The separator is the perpendicular bisector of the closest pair of
    points between the two classes' convex hulls.  Returns a fit with
    ``separable=False`` when the hulls overlap.  Raises ``ValueError``
    when either class is empty.
    """
    pa = np.array([(c.k1, c.k2) for c in report.cells if c.label == class_a])
    pb = np.array([(c.k1, c.k2) for c in report.cells if c.label == class_b])
    if len(pa) == 0 or len(pb) == 0:
        raise ValueError(f"need two nonempty classes, got {len(pa)} and {len(pb)} cells")
    ha, hb = _convex_hull(pa), _convex_hull(pb)
    if _hulls_intersect(ha, hb):
        return ThresholdFit(slope=math.nan, intercept=math.nan, separable=False, margin=0.0)

    best: tuple[float, np.ndarray, np.ndarray] | None = None
    for p in ha:
        for a, b in _segments(hb):
            d, q = _segment_distance(p, a, b)
            if best is None or d < best[0]:
                best = (d, p.astype(float), q)
    for p in hb:
        for a, b in _segments(ha):
            d, q = _segment_distance(p, a, b)
            if best is None or d < best[0]:
                best = (d, q, p.astype(float))
    assert best is not None
    dist, pt_a, pt_b = best
    if dist < 1e-12:
        return ThresholdFit(slope=math.nan, intercept=math.nan, separable=False, margin=0.0)
    mid = 0.5 * (pt_a + pt_b)
    normal = pt_b - pt_a  # points from class a toward class b
    if abs(normal[1]) < 1e-12:
        return ThresholdFit(slope=math.inf, intercept=float(mid[0]), separable=True, margin=dist / 2)
    slope = -normal[0] / normal[1]
    intercept = float(mid[1] - slope * mid[0])
    return ThresholdFit(slope=float(slope), intercept=intercept, separable=True, margin=dist / 2)


# -- proposition checklist ---------------------------------------------------

def _close(x: float, target: float, tol: float) -> bool:
    return abs(x - target) <= tol


def _mirror_set_clause(study: StudyId, report: SweepReport) -> tuple[bool, str]:
    """Set-level mirror correspondence between the two domains' optima.

    Single representatives need not be mirror images (several optima are
    two-point ties whose canonical representative is chosen per domain),
    but the mirror image of one domain's optimum must be optimal for the
    partner domain: feasible there and matching its value within 2e-3.
    """
    partner = {PlasticDomain.D135: PlasticDomain.D234, PlasticDomain.D234: PlasticDomain.D135}
    bad: list[tuple] = []
    by_key = {(c.k1, c.k2, c.domain): c for c in report.cells}
    for cell in report.cells:
        other = by_key.get((cell.k1, cell.k2, partner[cell.domain]))
        if other is None or not cell.result.feasible:
            continue
        problem = build_problem(study, cell.k1, cell.k2, partner[cell.domain])
        obj, total, _ = evaluate_point(problem, mirror(np.asarray(cell.result.c_star)))
        if total > 1e-6 or abs(obj - other.result.value) > 2e-3:
            bad.append((cell.k1, cell.k2, cell.domain.value))
    return not bad, (f"offending cells: {bad[:5]}" if bad else "")


def verify_propositions(reports: Mapping[StudyId, SweepReport]) -> list[ChecklistItem]:
    """Evaluate the headline claims of the four studies against sweep data.

    Returns one pass/fail/not-evaluated item per clause; clauses whose
    study is missing from ``reports`` are marked not evaluated.
    """
    items: list[ChecklistItem] = []

    def add(clause: str, ok: bool | None, details: str = "") -> None:
        status = "not evaluated" if ok is None else ("pass" if ok else "fail")
        items.append(ChecklistItem(clause=clause, status=status, details=details))

    for study in StudyId:
        rep = reports.get(study)
        clause = f"{study.value.upper()}: mirrored optima transfer between domains"
        if rep is None or not rep.cells or len({c.domain for c in rep.cells}) < 2:
            add(clause, None)
        else:
            ok, details = _mirror_set_clause(study, rep)
            add(clause, ok, details)

    rep_a = reports.get(StudyId.A)
    if rep_a is None or not rep_a.cells:
        add("A: every cell is red or blue (near-tie cells may degenerate)", None)
        add("A: red and blue classes are linearly separable", None)
    else:
        bad = [
            (c.k1, c.k2, c.domain.value)
            for c in rep_a.cells
            if c.label not in ("red", "blue", "degenerate")
        ]
        add(
            "A: every cell is red or blue (near-tie cells may degenerate)",
            not bad,
            f"offending cells: {bad}" if bad else "",
        )
        try:
            fit = detect_threshold(rep_a, "red", "blue")
            add(
                "A: red and blue classes are linearly separable",
                fit.separable,
                f"slope={fit.slope:.4f} intercept={fit.intercept:.4f}",
            )
        except ValueError as exc:
            add("A: red and blue classes are linearly separable", False, str(exc))

    rep_b = reports.get(StudyId.B)
    if rep_b is None or not rep_b.cells:
        add("B: optimum is the balanced half-budget design at every cell", None)
        add("B: (F, G) = (1, 0.5) at every cell", None)
        add("B: c3 = 0 at every cell", None)
    else:
        anchor = np.asarray(ANCHOR_BALANCED)
        bad_c = [
            (c.k1, c.k2, c.domain.value)
            for c in rep_b.cells
            if np.max(np.abs(np.asarray(c.result.c_star) - anchor)) > 0.02
        ]
        add(
            "B: optimum is the balanced half-budget design at every cell",
            not bad_c,
            f"offending cells: {bad_c[:5]}" if bad_c else "",
        )
        bad_fg = [
            (c.k1, c.k2)
            for c in rep_b.cells
            if not (_close(c.result.F, 1.0, 0.01) and _close(c.result.G, 0.5, 0.01))
        ]
        add("B: (F, G) = (1, 0.5) at every cell", not bad_fg)
        bad_c3 = [(c.k1, c.k2) for c in rep_b.cells if c.result.c_star[2] > 0.02]
        add("B: c3 = 0 at every cell", not bad_c3)

    rep_c = reports.get(StudyId.C)
    if rep_c is None or not rep_c.cells:
        add("C: cost floor 1.5 with F = 0.75 above the threshold", None)
        add("C: strength-resistance functional sits at 0.5 below the threshold", None)
        add("C: threshold slope is about -1/2", None)
        add("C: cost exceeds the floor exactly where c3 > 0 (exceptions listed)", None)
    else:
        above, below = _split_by_threshold(rep_c)
        ok_above = all(
            _close(c.result.C, COST_FLOOR, 0.01) and _close(c.result.F, STRENGTH_FLOOR, 0.01)
            for c in above
        ) and bool(above)
        add("C: cost floor 1.5 with F = 0.75 above the threshold", ok_above, f"{len(above)} cells above")
        fr_vals = [_functional_value(rep_c.study, c) for c in below]
        ok_below = all(_close(v, 0.5, 0.01) for v in fr_vals) and bool(below)
        add(
            "C: strength-resistance functional sits at 0.5 below the threshold",
            ok_below,
            f"{len(below)} cells below",
        )
        fit = _threshold_or_none(rep_c)
        add(
            "C: threshold slope is about -1/2",
            None if fit is None else (fit.separable and -0.75 <= fit.slope <= -0.25),
            "no two-class split" if fit is None else f"slope={fit.slope:.4f}",
        )
        exceptions = [
            (c.k1, c.k2, c.domain.value, round(c.result.C, 4))
            for c in rep_c.cells
            if c.label == "above" and c.result.c_star[2] <= 0.02
        ]
        add(
            "C: cost exceeds the floor exactly where c3 > 0 (exceptions listed)",
            not exceptions,
            f"exceptions: {exceptions}" if exceptions else "",
        )

    rep_d = reports.get(StudyId.D)
    if rep_d is None or not rep_d.cells:
        add("D: cost floor with F = 0.75, G = 0.375 above the threshold", None)
        add("D: strength-conductance functional sits at 0.5 below the threshold", None)
        add("D: c3 = 0 and c1 = c4, c2 = c5 everywhere", None)
        add("D: threshold slope is about -2", None)
    else:
        above, below = _split_by_threshold(rep_d)
        ok_above = all(
            _close(c.result.C, COST_FLOOR, 0.01)
            and _close(c.result.F, STRENGTH_FLOOR, 0.01)
            and _close(c.result.G, 0.375, 0.01)
            for c in above
        ) and bool(above)
        add("D: cost floor with F = 0.75, G = 0.375 above the threshold", ok_above)
        ok_below = all(
            _close(_functional_value(rep_d.study, c), 0.5, 0.01) for c in below
        ) and bool(below)
        add("D: strength-conductance functional sits at 0.5 below the threshold", ok_below)
        bad_shape = [
            (c.k1, c.k2)
            for c in rep_d.cells
            if c.result.feasible
            and not (
                c.result.c_star[2] <= 0.02
                and abs(c.result.c_star[0] - c.result.c_star[3]) <= CLUSTER_TOL
                and abs(c.result.c_star[1] - c.result.c_star[4]) <= CLUSTER_TOL
            )
        ]
        add("D: c3 = 0 and c1 = c4, c2 = c5 everywhere", not bad_shape, f"{bad_shape[:5]}")
        fit = _threshold_or_none(rep_d)
        add(
            "D: threshold slope is about -2",
            None if fit is None else (fit.separable and -2.5 <= fit.slope <= -1.5),
            "no two-class split" if fit is None else f"slope={fit.slope:.4f}",
        )

    return items


def _functional_value(study: StudyId, cell: SweepCell) -> float:
    res = cell.result
    if study is StudyId.C:
        return cell.k1 * res.F + cell.k2 * (res.R if math.isfinite(res.R) else 0.0)
    if study is StudyId.D:
        return cell.k1 * res.F + cell.k2 * res.G
    return res.value


def _split_by_threshold(report: SweepReport) -> tuple[list[SweepCell], list[SweepCell]]:
    fit = _threshold_or_none(report)
    feasible = [c for c in report.cells if c.result.feasible]
    if fit is None or not fit.separable:
        floor_cells = [c for c in feasible if c.label == "floor"]
        other = [c for c in feasible if c.label == "above"]
        return floor_cells, other
    above = [c for c in feasible if fit.side(c.k1, c.k2) >= 0.0]
    below = [c for c in feasible if fit.side(c.k1, c.k2) < 0.0]
    if any(c.label == "floor" for c in below):
        above, below = below, above
    return above, below


def _threshold_or_none(report: SweepReport) -> ThresholdFit | None:
    labels = {c.label for c in report.cells}
    if "floor" not in labels or "above" not in labels:
        return None
    return detect_threshold(report, "floor", "above")


# -- serialization -----------------------------------------------------------

def report_to_dict(report: SweepReport) -> dict:
    return {
        "study": report.study.value,
        "grid": {
            "k1_start": report.grid.k1_start,
            "k1_stop": report.grid.k1_stop,
            "k2_start": report.grid.k2_start,
            "k2_stop": report.grid.k2_stop,
            "step": report.grid.step,
        },
        "master_seed": report.master_seed,
        "cells": [
            {
                "k1": cell.k1,
                "k2": cell.k2,
                "domain": cell.domain.value,
                "c": list(cell.result.c_star),
                "F": cell.result.F,
                "R": None if math.isinf(cell.result.R) else cell.result.R,
                "G": cell.result.G,
                "C": cell.result.C,
                "value": cell.result.value,
                "label": cell.label,
                "cluster": cell.cluster,
                "feasible": cell.result.feasible,
                "method": cell.result.method,
                "seed": cell.result.seed,
                "sense": cell.result.sense,
            }
            for cell in report.cells
        ],
    }


def report_to_json(report: SweepReport) -> str:
    """Deterministic JSON rendering (sorted keys, fixed separators)."""
    return json.dumps(report_to_dict(report), sort_keys=True, separators=(",", ":")) + "\n"


def report_from_dict(data: Mapping) -> SweepReport:
    grid = GridSpec(**data["grid"])
    cells = []
    for raw in data["cells"]:
        res = OptResult(
            c_star=tuple(raw["c"]),
            value=raw["value"],
            F=raw["F"],
            R=math.inf if raw["R"] is None else raw["R"],
            G=raw["G"],
            C=raw["C"],
            feasible=raw["feasible"],
            max_violation=0.0 if raw["feasible"] else math.nan,
            method=raw["method"],
            seed=raw["seed"],
            generations=0,
            sense=raw.get("sense", "maximize"),
        )
        cells.append(
            SweepCell(
                k1=raw["k1"],
                k2=raw["k2"],
                domain=PlasticDomain(raw["domain"]),
                result=res,
                label=raw["label"],
                cluster=raw["cluster"],
            )
        )
    return SweepReport(
        study=StudyId(data["study"]),
        grid=grid,
        master_seed=data["master_seed"],
        cells=tuple(cells),
    )
