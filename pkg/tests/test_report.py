import math
import re
import xml.etree.ElementTree as ET

import pytest

from bridgeopt.report import (
    CSV_COLUMNS,
    PlotSpec,
    emit_svg,
    emit_tables,
    exception_rows,
    read_cells_csv,
)
from bridgeopt.studies import GridSpec, StudyId
from bridgeopt.sweep import SweepReport, detect_threshold

from test_sweep import make_cell, synthetic_report


def study_b_like_report():
    cells = [
        make_cell(k1, k2, F=1.0, G=0.5, value=k1 + 0.5 * k2, label="blue")
        for k1 in (0.2, 0.4, 0.6)
        for k2 in (0.2, 0.4, 0.6)
    ]
    return synthetic_report(cells, study=StudyId.B)


class TestSvg:
    def test_deterministic_bytes(self, tmp_path):
        rep = study_b_like_report()
        p1, p2 = tmp_path / "a.svg", tmp_path / "b.svg"
        emit_svg(rep, PlotSpec(), p1)
        emit_svg(rep, PlotSpec(), p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_disc_count_and_single_color(self, tmp_path):
        rep = study_b_like_report()
        path = tmp_path / "plot.svg"
        emit_svg(rep, PlotSpec(), path)
        text = path.read_text()
        gids = re.findall(r'id="cell-[^"]+"', text)
        assert len(gids) == 9
        # all discs share the blue class color
        assert text.count("#3050c0") >= 1
        assert "#c03030" not in text

    def test_valid_xml_and_empty_report(self, tmp_path):
        rep = SweepReport(study=StudyId.A, grid=GridSpec(), master_seed=0, cells=())
        path = tmp_path / "empty.svg"
        emit_svg(rep, PlotSpec(), path)
        root = ET.parse(path).getroot()
        assert root.tag.endswith("svg")
        assert 'id="cell-' not in path.read_text()

    def test_counts_match_classification(self, tmp_path):
        cells = [
            make_cell(0.2, 0.2, label="red"),
            make_cell(0.4, 0.2, label="red"),
            make_cell(0.6, 0.2, label="blue"),
            make_cell(0.8, 0.2, label="degenerate"),
        ]
        rep = synthetic_report(cells)
        path = tmp_path / "mix.svg"
        emit_svg(rep, PlotSpec(), path)
        text = path.read_text()
        assert len(re.findall(r'id="cell-[^"]+"', text)) == 4

    def test_threshold_overlay(self, tmp_path):
        cells = [make_cell(0.2, 0.2, label="red"), make_cell(0.8, 0.8, label="blue")]
        rep = synthetic_report(cells)
        fit = detect_threshold(rep, "red", "blue")
        path = tmp_path / "fit.svg"
        emit_svg(rep, PlotSpec(threshold=fit), path)
        assert path.exists()

    def test_infeasible_marker(self, tmp_path):
        rep = synthetic_report([make_cell(0.2, 0.2, feasible=False, label="infeasible")])
        path = tmp_path / "inf.svg"
        emit_svg(rep, PlotSpec(), path)
        assert 'id="cell-0.2-0.2-d135"' in path.read_text()

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            PlotSpec(radius_scale=0.0)


class TestTables:
    def test_round_trip_exact(self, tmp_path):
        rep = study_b_like_report()
        path = tmp_path / "cells.csv"
        emit_tables(rep, path)
        rows = read_cells_csv(path)
        assert len(rows) == len(rep.cells)
        for row, cell in zip(rows, rep.cells):
            assert row["k1"] == cell.k1
            assert row["value"] == cell.result.value  # exact, not approximate
            assert row["label"] == cell.label
            for i in range(5):
                assert row[f"c{i+1}"] == cell.result.c_star[i]

    def test_column_order(self, tmp_path):
        rep = study_b_like_report()
        path = tmp_path / "cells.csv"
        emit_tables(rep, path)
        header = path.read_text().splitlines()[0]
        assert header == ",".join(CSV_COLUMNS)

    def test_infinite_resistance_round_trip(self, tmp_path):
        rep = synthetic_report([make_cell(0.2, 0.2, R=math.inf, label="other")])
        path = tmp_path / "cells.csv"
        emit_tables(rep, path)
        rows = read_cells_csv(path)
        assert math.isinf(rows[0]["R"])

    def test_exception_rows(self):
        cells = [
            make_cell(0.22, 0.1, C=3.51, label="above", c=(0.88, 0.88, 0.0, 0.88, 0.88), sense="minimize"),
            make_cell(0.3, 0.1, C=1.59, label="above", c=(0.0, 0.75, 0.09, 0.09, 0.66), sense="minimize"),
            make_cell(0.4, 0.2, C=1.5, label="floor", sense="minimize"),
        ]
        rep = synthetic_report(cells, study=StudyId.C)
        rows = exception_rows(rep)
        assert [(r["k1"], r["k2"]) for r in rows] == [(0.22, 0.1)]

    def test_markdown_table(self, tmp_path):
        cells = [
            make_cell(0.22, 0.1, C=3.51, F=1.75, R=1.14, label="above",
                      c=(0.88, 0.88, 0.0, 0.88, 0.88), sense="minimize"),
        ]
        rep = synthetic_report(cells, study=StudyId.C)
        csv_path, md_path = tmp_path / "cells.csv", tmp_path / "exceptions.md"
        emit_tables(rep, csv_path, md_path)
        text = md_path.read_text()
        assert "| (0.22,0.1) |" in text
        assert "3.51" in text

    def test_empty_exceptions_table_still_valid(self, tmp_path):
        rep = synthetic_report([make_cell(0.4, 0.2, C=1.5, label="floor", sense="minimize")], study=StudyId.C)
        csv_path, md_path = tmp_path / "cells.csv", tmp_path / "exceptions.md"
        emit_tables(rep, csv_path, md_path)
        lines = md_path.read_text().splitlines()
        assert len(lines) == 2  # header + separator only
        assert csv_path.read_text().count("\n") == 2  # header + one row
