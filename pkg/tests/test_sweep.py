import json
import math

import numpy as np
import pytest

from bridgeopt.optimize import OptResult
from bridgeopt.plasticity import PlasticDomain
from bridgeopt.studies import GridSpec, StudyId, StudySpec
from bridgeopt.sweep import (
    SweepCell,
    SweepReport,
    cell_seed,
    classify_cells,
    detect_threshold,
    report_from_dict,
    report_to_dict,
    report_to_json,
    run_study,
    verify_propositions,
)

D135 = PlasticDomain.D135
D234 = PlasticDomain.D234

TINY_GRID = GridSpec(k1_start=0.2, k1_stop=0.4, k2_start=0.2, k2_stop=0.4, step=0.2)


def make_cell(k1, k2, *, F=1.0, R=2.0, G=0.5, C=2.0, value=1.0, label="", feasible=True,
              c=(0.5, 0.5, 0.0, 0.5, 0.5), domain=D135, sense="maximize"):
    res = OptResult(tuple(c), value, F, R, G, C, feasible, 0.0 if feasible else 1.0,
                    "DE", 0, 100, sense)
    return SweepCell(k1=k1, k2=k2, domain=domain, result=res, label=label)


def synthetic_report(cells, study=StudyId.A, grid=None):
    return SweepReport(
        study=study,
        grid=grid or GridSpec(),
        master_seed=0,
        cells=tuple(cells),
    )


class TestCellSeeds:
    def test_deterministic(self):
        a = cell_seed(7, 0.1, 0.2, D135, "de")
        assert a == cell_seed(7, 0.1, 0.2, D135, "de")

    def test_distinct_across_axes(self):
        base = cell_seed(7, 0.1, 0.2, D135, "de")
        assert base != cell_seed(8, 0.1, 0.2, D135, "de")
        assert base != cell_seed(7, 0.2, 0.1, D135, "de")
        assert base != cell_seed(7, 0.1, 0.2, D234, "de")
        assert base != cell_seed(7, 0.1, 0.2, D135, "rs")

    def test_fits_in_63_bits(self):
        assert 0 <= cell_seed(123456, 0.9, 0.9, D234, "rs") < 2**63


class TestRunStudy:
    def test_small_sweep_deterministic_across_job_counts(self):
        spec = StudySpec(study=StudyId.B, grid=TINY_GRID)
        r1 = run_study(spec, master_seed=3, n_jobs=1)
        r2 = run_study(spec, master_seed=3, n_jobs=2)
        assert report_to_json(r1) == report_to_json(r2)

    def test_balanced_design_found_everywhere(self):
        spec = StudySpec(study=StudyId.B, grid=TINY_GRID)
        rep = run_study(spec, master_seed=3)
        assert len(rep.cells) == len(TINY_GRID.cells()) * 2
        for cell in rep.cells:
            assert np.allclose(cell.result.c_star, (0.5, 0.5, 0, 0.5, 0.5), atol=0.02)
            assert cell.label == "blue"

    def test_single_domain(self):
        spec = StudySpec(study=StudyId.B, grid=TINY_GRID, domains=(D135,))
        rep = run_study(spec, master_seed=3, methods=("de",))
        assert {c.domain for c in rep.cells} == {D135}

    def test_requires_methods(self):
        spec = StudySpec(study=StudyId.B, grid=TINY_GRID)
        with pytest.raises(ValueError):
            run_study(spec, methods=())

    def test_cell_lookup(self):
        spec = StudySpec(study=StudyId.B, grid=TINY_GRID, domains=(D135,))
        rep = run_study(spec, master_seed=3, methods=("de",))
        cell = rep.cell(0.2, 0.4, D135)
        assert cell.k1 == pytest.approx(0.2)
        with pytest.raises(KeyError):
            rep.cell(0.9, 0.9, D135)

    def test_reported_optima_satisfy_constraints(self):
        from bridgeopt.optimize import evaluate_point
        from bridgeopt.studies import build_problem

        spec = StudySpec(study=StudyId.D, grid=TINY_GRID)
        rep = run_study(spec, master_seed=6)
        for cell in rep.cells:
            problem = build_problem(rep.study, cell.k1, cell.k2, cell.domain)
            _, total, _ = evaluate_point(problem, np.asarray(cell.result.c_star))
            assert total <= 1e-6


class TestClassification:
    def test_study_a_labels(self):
        cells = [
            make_cell(0.3, 0.3, F=0.7501, R=3.3329, label=""),
            make_cell(0.9, 0.1, F=0.9998, R=2.001, label=""),
            make_cell(0.3, 0.5, F=0.9, R=2.5, label=""),
        ]
        rep = classify_cells(synthetic_report(cells))
        assert rep.cells[0].label == "red"
        assert rep.cells[1].label == "blue"
        assert rep.cells[2].label == "other"

    def test_near_tie_is_degenerate(self):
        # On the tie line 0.25 k1 = (4/3) k2 the two candidate values match.
        cell = make_cell(0.4, 0.075, F=0.75, R=10 / 3)
        rep = classify_cells(synthetic_report([cell]))
        assert rep.cells[0].label == "degenerate"

    def test_infeasible_label(self):
        rep = classify_cells(synthetic_report([make_cell(0.1, 0.1, feasible=False)]))
        assert rep.cells[0].label == "infeasible"
        assert rep.cells[0].cluster == -1

    def test_cost_labels(self):
        cells = [
            make_cell(0.3, 0.2, C=1.5004, sense="minimize"),
            make_cell(0.2, 0.1, C=2.3, sense="minimize"),
        ]
        rep = classify_cells(synthetic_report(cells, study=StudyId.C))
        assert rep.cells[0].label == "floor"
        assert rep.cells[1].label == "above"

    def test_identical_designs_share_cluster(self):
        cells = [
            make_cell(0.2, 0.2, c=(0.5, 0.5, 0, 0.5, 0.5)),
            make_cell(0.3, 0.3, c=(0.51, 0.49, 0, 0.5, 0.5)),
            make_cell(0.4, 0.4, c=(0.1, 0.9, 0, 0.1, 0.9)),
        ]
        rep = classify_cells(synthetic_report(cells))
        assert rep.cells[0].cluster == rep.cells[1].cluster
        assert rep.cells[0].cluster != rep.cells[2].cluster


class TestDetectThreshold:
    def test_separable_classes(self):
        cells = [make_cell(x, 0.1, label="blue") for x in (0.6, 0.7, 0.8)]
        cells += [make_cell(x, y, label="red") for x in (0.1, 0.2, 0.3) for y in (0.1, 0.4)]
        fit = detect_threshold(synthetic_report(cells), "red", "blue")
        assert fit.separable
        assert fit.margin > 0
        # red on one side, blue on the other
        sides_red = {fit.side(c.k1, c.k2) > 0 for c in cells if c.label == "red"}
        sides_blue = {fit.side(c.k1, c.k2) > 0 for c in cells if c.label == "blue"}
        assert len(sides_red) == 1 and len(sides_blue) == 1
        assert sides_red != sides_blue

    def test_slope_of_diagonal_split(self):
        cells = [make_cell(x, y, label="floor") for x, y in [(0.2, 0.8), (0.4, 0.6), (0.6, 0.4), (0.8, 0.2)]]
        cells += [make_cell(x, y, label="above") for x, y in [(0.1, 0.3), (0.2, 0.2), (0.3, 0.1)]]
        fit = detect_threshold(synthetic_report(cells), "floor", "above")
        assert fit.separable
        assert fit.slope == pytest.approx(-1.0, abs=0.3)

    def test_not_separable(self):
        cells = [
            make_cell(0.2, 0.2, label="red"),
            make_cell(0.4, 0.4, label="red"),
            make_cell(0.3, 0.3, label="blue"),
        ]
        fit = detect_threshold(synthetic_report(cells), "red", "blue")
        assert not fit.separable

    def test_single_class_errors(self):
        cells = [make_cell(0.2, 0.2, label="red")]
        with pytest.raises(ValueError):
            detect_threshold(synthetic_report(cells), "red", "blue")

    def test_vertical_separator(self):
        cells = [make_cell(0.2, y, label="red") for y in (0.1, 0.5, 0.9)]
        cells += [make_cell(0.8, y, label="blue") for y in (0.1, 0.5, 0.9)]
        fit = detect_threshold(synthetic_report(cells), "red", "blue")
        assert fit.separable
        assert math.isinf(fit.slope)
        assert fit.intercept == pytest.approx(0.5, abs=1e-9)


class TestVerifyPropositions:
    def test_empty_reports_not_evaluated(self):
        items = verify_propositions({})
        assert items
        assert all(item.status == "not evaluated" for item in items)

    def test_balanced_study_passes(self):
        cells = [
            make_cell(k1, k2, F=1.0, G=0.5, label="blue")
            for k1 in (0.2, 0.4)
            for k2 in (0.2, 0.4)
        ]
        items = verify_propositions({StudyId.B: synthetic_report(cells, study=StudyId.B)})
        by_clause = {i.clause: i.status for i in items}
        assert by_clause["B: optimum is the balanced half-budget design at every cell"] == "pass"
        assert by_clause["B: (F, G) = (1, 0.5) at every cell"] == "pass"
        assert by_clause["B: c3 = 0 at every cell"] == "pass"

    def test_balanced_study_failure_detected(self):
        cells = [make_cell(0.2, 0.2, F=0.9, G=0.45, label="blue", c=(0.3, 0.7, 0, 0.3, 0.7))]
        items = verify_propositions({StudyId.B: synthetic_report(cells, study=StudyId.B)})
        by_clause = {i.clause: i.status for i in items}
        assert by_clause["B: optimum is the balanced half-budget design at every cell"] == "fail"


class TestSerialization:
    def test_round_trip(self):
        spec = StudySpec(study=StudyId.B, grid=TINY_GRID, domains=(D135,))
        rep = run_study(spec, master_seed=11, methods=("de",))
        data = json.loads(report_to_json(rep))
        back = report_from_dict(data)
        assert report_to_dict(back) == report_to_dict(rep)

    def test_json_is_stable(self):
        spec = StudySpec(study=StudyId.B, grid=TINY_GRID, domains=(D135,))
        rep = run_study(spec, master_seed=11, methods=("de",))
        assert report_to_json(rep) == report_to_json(rep)

    def test_infinite_resistance_serializes_as_null(self):
        cell = make_cell(0.2, 0.2, R=math.inf, label="other")
        data = report_to_dict(synthetic_report([cell]))
        assert data["cells"][0]["R"] is None
        back = report_from_dict(data)
        assert math.isinf(back.cells[0].result.R)
