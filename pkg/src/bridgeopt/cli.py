"""Command-line interface.

Subcommands mirror the library surface: ``resistance`` and ``evaluate``
for single designs, ``admissible`` for the cone enumeration,
``optimize`` for one study cell, ``sweep`` for a whole grid, and
``report`` to render a stored sweep as SVG/CSV/markdown.  All outputs
are JSON on stdout unless a file path is given.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__
from .admissibility import AdmissibilityProblem, benchmark_problem, enumerate_irreducible
from .circuit import bridge_network, conductance, resistance, solve_network
from .optimize import DEConfig, best_of, differential_evolution, random_search
from .plasticity import PlasticDomain, evaluate_all
from .report import PlotSpec, emit_svg, emit_tables
from .studies import GridSpec, StudyId, StudySpec, build_problem, coarse_grid, fine_grid
from .sweep import report_from_dict, report_to_json, run_study


def _parse_springs(text: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",")]
    except ValueError:
        raise SystemExit(f"error: could not parse spring limits from {text!r}")
    if len(values) != 5:
        raise SystemExit(f"error: expected 5 comma-separated limits, got {len(values)}")
    return values


def _print_json(payload) -> None:
    json.dump(payload, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def _cmd_resistance(args: argparse.Namespace) -> int:
    c = _parse_springs(args.c)
    if args.oracle:
        r = solve_network(bridge_network(c))
        g = 0.0 if math.isinf(r) else 1.0 / r
    else:
        r = resistance(c)
        g = conductance(c)
    _print_json({"R": None if math.isinf(r) else r, "G": g})
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    record = evaluate_all(_parse_springs(args.c), PlasticDomain.parse(args.domain))
    _print_json(record.as_dict())
    return 0


def _cmd_admissible(args: argparse.Namespace) -> int:
    if args.benchmark:
        problem = benchmark_problem()
    elif args.matrix_file:
        data = json.loads(Path(args.matrix_file).read_text(encoding="utf-8"))
        problem = AdmissibilityProblem(
            matrix=tuple(tuple(float(v) for v in row) for row in data["matrix"]),
            target=tuple(float(v) for v in data["target"]),
        )
    else:
        raise SystemExit("error: pass --benchmark or --matrix-file")
    sets = enumerate_irreducible(problem)
    _print_json([[idx.as_dict() for idx in sorted(s)] for s in sets])
    return 0


def _cmd_optimize(args: argparse.Namespace) -> int:
    study = StudyId.parse(args.study)
    domain = PlasticDomain.parse(args.domain)
    problem = build_problem(study, args.k1, args.k2, domain)
    runs = []
    if args.method in ("de", "both"):
        runs.append(differential_evolution(problem, DEConfig(), seed=args.seed))
    if args.method in ("rs", "both"):
        runs.append(random_search(problem, seed=args.seed))
    result = best_of(runs, problem)
    payload = result.as_dict()
    payload.update({"study": study.value, "k1": args.k1, "k2": args.k2, "domain": domain.value})
    _print_json(payload)
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    study = StudyId.parse(args.study)
    if args.fine:
        grid = fine_grid()
    elif args.grid:
        grid = GridSpec.parse(args.grid)
    else:
        grid = fine_grid() if study is StudyId.C else coarse_grid()
    domains = (
        (PlasticDomain.parse(args.domains),)
        if args.domains != "both"
        else (PlasticDomain.D135, PlasticDomain.D234)
    )
    spec = StudySpec(study=study, grid=grid, domains=domains)
    report = run_study(spec, master_seed=args.seed, n_jobs=args.jobs)
    text = report_to_json(report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.csv:
        emit_tables(report, args.csv)
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    data = json.loads(Path(args.infile).read_text(encoding="utf-8"))
    report = report_from_dict(data)
    if args.svg:
        emit_svg(report, PlotSpec(), args.svg)
    if args.csv or args.md:
        emit_tables(report, args.csv or Path(args.md).with_suffix(".csv"), args.md)
    if not (args.svg or args.csv or args.md):
        raise SystemExit("error: nothing to emit; pass --svg, --csv or --md")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bridgeopt", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("resistance", help="equivalent resistance/conductance of a design")
    p.add_argument("--c", required=True, help="five comma-separated elastic limits")
    p.add_argument("--oracle", action="store_true", help="use the node-potential solver instead of the closed form")
    p.set_defaults(func=_cmd_resistance)

    p = sub.add_parser("evaluate", help="all functionals of a design")
    p.add_argument("--c", required=True)
    p.add_argument("--domain", default="d135", choices=("d135", "d234"))
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("admissible", help="enumerate irreducible admissible index sets")
    p.add_argument("--matrix-file", help="JSON file with 'matrix' and 'target'")
    p.add_argument("--benchmark", action="store_true", help="use the built-in five-spring instance")
    p.set_defaults(func=_cmd_admissible)

    p = sub.add_parser("optimize", help="solve one study cell")
    p.add_argument("--study", required=True, choices=("a", "b", "c", "d"))
    p.add_argument("--k1", type=float, required=True)
    p.add_argument("--k2", type=float, required=True)
    p.add_argument("--domain", default="d135", choices=("d135", "d234"))
    p.add_argument("--method", default="both", choices=("de", "rs", "both"))
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("sweep", help="run a study over the weight grid")
    p.add_argument("--study", required=True, choices=("a", "b", "c", "d"))
    p.add_argument("--grid", help="start:stop:step (square grid)")
    p.add_argument("--fine", action="store_true", help="use the zoom grid preset")
    p.add_argument("--domains", default="both", choices=("both", "d135", "d234"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--csv", help="also write the cell table as CSV")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("report", help="render a stored sweep report")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--svg")
    p.add_argument("--csv")
    p.add_argument("--md", help="markdown exceptions table")
    p.set_defaults(func=_cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
