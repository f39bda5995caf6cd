"""Circle bin packing: greedy corner-occupying construction plus
annealing-accepted large neighborhood search over square bins."""

from .alns import (
    SearchStats,
    SolverConfig,
    accept_move,
    alns_solve,
    generate_partial,
    lns_solve,
    sample_rect,
)
from .benchgen import BenchmarkSpec, generate, read_instance, write_instance
from .gacoa import candidate_actions, gacoa_complete, gacoa_solve, pack_one
from .geometry import PlacedCircle, Point, Rect
from .model import (
    Instance,
    Layout,
    Metrics,
    PartialLayout,
    Placement,
    ValidationReport,
    bin_density,
    bins_used,
    compare_layouts,
    compute_metrics,
    objective,
    validate,
)
from .render import RenderOptions, emit_comparison_csv, render_svg

__version__ = "0.1.0"

__all__ = [
    "BenchmarkSpec",
    "Instance",
    "Layout",
    "Metrics",
    "PartialLayout",
    "PlacedCircle",
    "Placement",
    "Point",
    "Rect",
    "RenderOptions",
    "SearchStats",
    "SolverConfig",
    "ValidationReport",
    "accept_move",
    "alns_solve",
    "bin_density",
    "bins_used",
    "candidate_actions",
    "compare_layouts",
    "compute_metrics",
    "emit_comparison_csv",
    "gacoa_complete",
    "gacoa_solve",
    "generate",
    "generate_partial",
    "lns_solve",
    "objective",
    "pack_one",
    "read_instance",
    "render_svg",
    "sample_rect",
    "validate",
    "write_instance",
]
