"""High-precision rational-approximation laboratory.

Builds classical Pade, two-point Pade, and first-kind Hermite-Pade
polynomial tuples for algebraic branch-product functions at thousands of
decimal digits, finds all their zeros with certified residuals, and turns
the zero clouds into empirical observables: support pushing, spurious
(Froissart) doublet/singlet/triplet structures, junction-point gaps,
counting-measure discrepancies, and max-potential fields.
"""

from .analysis import (
    CountingMeasure,
    FroissartReport,
    GridSpec,
    density_near,
    detect_doublets,
    detect_singlets,
    detect_triplets,
    froissart_report,
    kalyagin_point,
    measure_discrepancy,
    nearest_to,
    potential_grid,
    pushing_gap,
    spurious_candidates,
)
from .linsys import (
    HpSolution,
    OrderSystem,
    build_hp_system,
    build_pade_system,
    build_two_point_system,
    kernel_solve,
    residual_series,
)
from .pipeline import RunConfig, run
from .precision import Precision, parse_exact
from .presets import Preset, get_preset, presets
from .roots import RootCloud, certify, find_roots
from .series import (
    FunctionSpec,
    Series,
    binomial_factor_series,
    build_function_series,
    series_add,
    series_mul,
    series_pow,
    series_shift,
)
from .svgplot import PlotSpec, scatter

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Precision",
    "parse_exact",
    "FunctionSpec",
    "Series",
    "binomial_factor_series",
    "build_function_series",
    "series_add",
    "series_mul",
    "series_pow",
    "series_shift",
    "OrderSystem",
    "HpSolution",
    "build_hp_system",
    "build_pade_system",
    "build_two_point_system",
    "kernel_solve",
    "residual_series",
    "RootCloud",
    "find_roots",
    "certify",
    "CountingMeasure",
    "FroissartReport",
    "GridSpec",
    "kalyagin_point",
    "pushing_gap",
    "spurious_candidates",
    "detect_doublets",
    "detect_singlets",
    "detect_triplets",
    "froissart_report",
    "nearest_to",
    "density_near",
    "measure_discrepancy",
    "potential_grid",
    "PlotSpec",
    "scatter",
    "Preset",
    "presets",
    "get_preset",
    "RunConfig",
    "run",
]
