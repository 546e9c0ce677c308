"""Operator norms of low-degree polynomials in the Volterra operator.

``V f(x) = int_0^x f(t) dt`` on L^2[0, 1]. The analytic solvers reduce each
norm to a transcendental equation; `oracle` gives an independent
finite-dimensional check.
"""

from .errors import (
    Diverged,
    DomainError,
    NoConvergence,
    NonFinite,
    NoSignChange,
    VolterraError,
)
from .linear import (
    V_NORM,
    LinearNormSolution,
    lumer_slope,
    minimizer,
    norm_affine,
    norm_imag_axis,
    norm_linear,
)
from .numrange import (
    Branch,
    CrouzeixReport,
    RootKind,
    boundary_point,
    crouzeix_ratio,
    max_abs_on_W,
    roots_to_coeffs,
    support_function,
)
from .oracle import discretize_volterra, operator_norm_2, oracle_norm, oracle_support, poly_of_matrix
from .quadratic import (
    MonicAtZeroQuad,
    NormResult,
    RealQuadPoly,
    Status,
    char_fn,
    flat_region_contains,
    norm_monic_quadratic,
    norm_quadratic,
    norm_v_squared,
)
from .rootfind import RootResult, RootTask, bisect, largest_root_scan, newton_refine

__version__ = "0.1.0"
