"""Human-readable artifacts from sweep reports: SVG plots, CSV, markdown.

The plot mimics the disc convention of the study figures: one disc per
grid cell, radius proportional to the cell's optimal value, color by
class label, with an optional fitted threshold line overlay.  Output is
byte-deterministic for a fixed report (fixed hash salt, pinned SVG
metadata), which makes the files diffable in tests.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Circle

from .sweep import SweepReport, ThresholdFit

__all__ = [
    "CSV_COLUMNS",
    "PlotSpec",
    "emit_svg",
    "emit_tables",
    "exception_rows",
]

CSV_COLUMNS = (
    "k1", "k2", "domain",
    "c1", "c2", "c3", "c4", "c5",
    "F", "R", "G", "C",
    "value", "label", "cluster",
)

DEFAULT_COLORS = {
    "red": "#c03030",
    "blue": "#3050c0",
    "floor": "#c03030",
    "above": "#3050c0",
    "degenerate": "#30a050",
    "other": "#303030",
    "infeasible": "#a0a0a0",
}


@dataclass(frozen=True)
class PlotSpec:
    """Disc scaling, colors, axes and overlays for :func:`emit_svg`."""

    radius_scale: float = 0.04
    colors: dict = field(default_factory=lambda: dict(DEFAULT_COLORS))
    x_range: tuple[float, float] | None = None
    y_range: tuple[float, float] | None = None
    threshold: ThresholdFit | None = None
    title: str = ""

    def __post_init__(self) -> None:
        if self.radius_scale <= 0.0:
            raise ValueError("radius scale must be positive")

    def color_for(self, label: str) -> str:
        return self.colors.get(label, "#303030")


def _axis_ranges(report: SweepReport, spec: PlotSpec) -> tuple[tuple[float, float], tuple[float, float]]:
    if spec.x_range is not None and spec.y_range is not None:
        return spec.x_range, spec.y_range
    pad = report.grid.step
    xr = (report.grid.k1_start - pad, report.grid.k1_stop + pad)
    yr = (report.grid.k2_start - pad, report.grid.k2_stop + pad)
    return (spec.x_range or xr), (spec.y_range or yr)


def emit_svg(report: SweepReport, spec: PlotSpec, path: str | Path) -> None:
    """Write the disc plot of ``report`` to ``path`` as deterministic SVG.

    Cells missing a label (empty reports included) still produce a valid
    axes-only document.  Infeasible cells are drawn as small hollow
    markers.  Every disc carries a ``gid`` of the form
    ``cell-<k1>-<k2>-<domain>`` so tests can count and inspect them.
    """
    plt.rcParams["svg.hashsalt"] = "bridgeopt"
    xr, yr = _axis_ranges(report, spec)
    fig, ax = plt.subplots(figsize=(6.4, 4.8), dpi=100)
    try:
        values = [abs(c.result.value) for c in report.cells if c.result.feasible]
        vmax = max(values) if values else 1.0
        for cell in sorted(report.cells, key=lambda c: (c.k1, c.k2, c.domain.value)):
            gid = f"cell-{cell.k1:g}-{cell.k2:g}-{cell.domain.value}"
            if not cell.result.feasible:
                disc = Circle(
                    (cell.k1, cell.k2),
                    radius=spec.radius_scale * 0.25,
                    fill=False,
                    edgecolor=spec.color_for("infeasible"),
                    linewidth=0.8,
                )
            else:
                radius = spec.radius_scale * abs(cell.result.value) / vmax
                disc = Circle(
                    (cell.k1, cell.k2),
                    radius=max(radius, 1e-4),
                    facecolor=spec.color_for(cell.label),
                    edgecolor="none",
                    alpha=0.85,
                )
            disc.set_gid(gid)
            ax.add_patch(disc)
        if spec.threshold is not None and spec.threshold.separable:
            fit = spec.threshold
            if math.isinf(fit.slope):
                ax.plot([fit.intercept, fit.intercept], yr, color="#707070", linewidth=1.0, linestyle="--")
            else:
                xs = (xr[0], xr[1])
                ys = tuple(fit.slope * x + fit.intercept for x in xs)
                ax.plot(xs, ys, color="#707070", linewidth=1.0, linestyle="--")
        ax.set_xlim(*xr)
        ax.set_ylim(*yr)
        ax.set_xlabel("k1")
        ax.set_ylabel("k2")
        ax.set_aspect("equal")
        title = spec.title or f"study {report.study.value.upper()}"
        ax.set_title(title)
        fig.savefig(path, format="svg", metadata={"Date": None})
    finally:
        plt.close(fig)


def _fmt(value: float) -> str:
    """Shortest exact decimal for a float; empty for missing values."""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return repr(float(value))


def rows_for_csv(report: SweepReport) -> list[dict]:
    rows = []
    for cell in report.cells:
        c = cell.result.c_star
        rows.append(
            {
                "k1": _fmt(cell.k1),
                "k2": _fmt(cell.k2),
                "domain": cell.domain.value,
                "c1": _fmt(c[0]),
                "c2": _fmt(c[1]),
                "c3": _fmt(c[2]),
                "c4": _fmt(c[3]),
                "c5": _fmt(c[4]),
                "F": _fmt(cell.result.F),
                "R": _fmt(cell.result.R),
                "G": _fmt(cell.result.G),
                "C": _fmt(cell.result.C),
                "value": _fmt(cell.result.value),
                "label": cell.label,
                "cluster": str(cell.cluster),
            }
        )
    return rows


def exception_rows(report: SweepReport, c3_tol: float = 0.02) -> list[dict]:
    """Cost-study cells whose cost exceeds the floor although c3 = 0.

    These are the counterexamples to 'cost above the floor implies an
    active bridge spring'; the markdown table mirrors their layout in
    the study write-ups.
    """
    out = []
    for cell in report.cells:
        if cell.label == "above" and cell.result.feasible and cell.result.c_star[2] <= c3_tol:
            out.append(
                {
                    "k1": cell.k1,
                    "k2": cell.k2,
                    "domain": cell.domain.value,
                    "c": cell.result.c_star,
                    "F": cell.result.F,
                    "R": cell.result.R,
                    "C": cell.result.C,
                }
            )
    return out


def emit_tables(report: SweepReport, csv_path: str | Path, markdown_path: str | Path | None = None) -> None:
    """Write the cell CSV (fixed column order) and the exceptions table.

    The CSV uses shortest-round-trip float formatting, so re-parsing
    recovers the report values exactly.
    """
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(CSV_COLUMNS), lineterminator="\r\n")
    writer.writeheader()
    for row in rows_for_csv(report):
        writer.writerow(row)
    Path(csv_path).write_text(buf.getvalue(), encoding="utf-8", newline="")

    if markdown_path is None:
        return
    lines = [
        "| (k1,k2) | domain | (c1,c2,c3,c4,c5) | F | R | C |",
        "|---|---|---|---|---|---|",
    ]
    for row in exception_rows(report):
        cs = ", ".join(f"{v:.3g}" for v in row["c"])
        r_txt = "inf" if math.isinf(row["R"]) else f"{row['R']:.3g}"
        lines.append(
            f"| ({row['k1']:g},{row['k2']:g}) | {row['domain']} | ({cs}) "
            f"| {row['F']:.3g} | {r_txt} | {row['C']:.3g} |"
        )
    Path(markdown_path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_cells_csv(path: str | Path) -> list[dict]:
    """Parse a CSV written by :func:`emit_tables` back into typed rows."""
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        for raw in csv.DictReader(fh):
            row: dict = dict(raw)
            for key in ("k1", "k2", "c1", "c2", "c3", "c4", "c5", "F", "R", "G", "C", "value"):
                text = raw[key]
                row[key] = math.inf if text == "inf" else (float(text) if text else math.nan)
            row["cluster"] = int(raw["cluster"])
            out.append(row)
    return out
