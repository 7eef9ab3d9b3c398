"""Hot-kernel dispatch: compiled extension if built, numpy fallback otherwise."""

try:
    from . import _kernels as _impl

    COMPILED = True
except ImportError:  # extension not built
    from . import _kernels_py as _impl

    COMPILED = False

from ._kernels_py import cauchy_w_coeffs, cheb_points, cheb_points_first

bary_weights = _impl.bary_weights
bary_matrix = _impl.bary_matrix
t_table = _impl.t_table
closed_kernel = _impl.closed_kernel

__all__ = [
    "COMPILED",
    "cheb_points",
    "cheb_points_first",
    "bary_weights",
    "bary_matrix",
    "t_table",
    "closed_kernel",
    "cauchy_w_coeffs",
]
