"""Multi-functional design of a five-spring elastoplastic bridge network.

The package evaluates the terminal plastic response force, electrical
resistance/conductance and fabrication cost of a four-node, five-spring
bridge whose springs double as conductors, and solves four constrained
design studies over a grid of objective weights.
"""

__version__ = "0.1.0"

from .circuit import (
    ResistorNetwork,
    bridge_network,
    conductance,
    resistance,
    solve_network,
)
from .optimize import (
    DEConfig,
    OptProblem,
    OptResult,
    best_of,
    differential_evolution,
    random_search,
)
from .plasticity import (
    EvalRecord,
    FeasibilityReport,
    PlasticDomain,
    evaluate_all,
    feasibility,
    mirror,
    terminal_force,
)
from .simplex import InfeasibleError, LPResult, UnboundedError, simplex_lp
from .studies import GridSpec, StudyId, StudySpec, build_problem
from .sweep import SweepCell, SweepReport, classify_cells, detect_threshold, run_study

__all__ = [
    "DEConfig",
    "EvalRecord",
    "FeasibilityReport",
    "GridSpec",
    "InfeasibleError",
    "LPResult",
    "OptProblem",
    "OptResult",
    "PlasticDomain",
    "ResistorNetwork",
    "StudyId",
    "StudySpec",
    "SweepCell",
    "SweepReport",
    "UnboundedError",
    "best_of",
    "bridge_network",
    "build_problem",
    "classify_cells",
    "conductance",
    "detect_threshold",
    "differential_evolution",
    "evaluate_all",
    "feasibility",
    "mirror",
    "random_search",
    "resistance",
    "run_study",
    "simplex_lp",
    "solve_network",
    "terminal_force",
]
