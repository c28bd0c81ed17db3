"""High-order staggered-grid backward anisotropic diffusion for grey images."""

__version__ = "0.1.0"

from .edges import (
    EdgeParams,
    InvarianceReport,
    PatternSpec,
    check_invariance,
    cutoff_filter,
    detect_edges,
    generate_pattern,
)
from .grid import (
    GreyImage,
    InvalidInputError,
    InvalidParameterError,
    Signal1D,
    Staggered1D,
    Staggered2D,
    extend_neumann_1d,
    extend_neumann_2d,
    renormalize_palette,
)
from .hdiff1d import multi_step_1d, step_1d, trace_1d
from .hdiff2d import multi_step_2d, step_2d, trace_2d
from .perona_malik import PMParams, g_a, pm_run, pm_step
from .pgm import read_pgm, write_pgm

__all__ = [
    "EdgeParams", "InvarianceReport", "PatternSpec", "check_invariance", "cutoff_filter",
    "detect_edges", "generate_pattern", "GreyImage", "InvalidInputError", "InvalidParameterError",
    "Signal1D", "Staggered1D", "Staggered2D", "extend_neumann_1d", "extend_neumann_2d",
    "renormalize_palette", "multi_step_1d", "step_1d", "trace_1d", "multi_step_2d", "step_2d",
    "trace_2d", "PMParams", "g_a", "pm_run", "pm_step", "read_pgm", "write_pgm",
]
