"""Cauchy transforms of discretized densities on contour segments.

Open segments: densities are Chebyshev interpolants on the reference interval.
The transform of T_k over [-1,1] has the exact closed form

    integral T_k(s)/(s-z) ds = T_k(z) W_0(z) + 4 sum_{d odd <= k-1} T_{k-d}(z)/d
                               + (2/k if k odd),
    W_0(z) = log(z-1) - log(z+1)   (principal branches),

which is numerically stable when the inverse-Joukowski coordinate
zeta(z) = z - sqrt(z-1)sqrt(z+1) is close to the unit circle (targets on or
near the segment); far targets use Clenshaw-Curtis quadrature on an upsampled
interpolant instead, where the formula would cancel catastrophically.
Circular arcs reduce to the interval transform through the tangent-half-angle
Moebius chart plus a rank-one, target-independent correction.

Closed circles use the trapezoid rule with singularity subtraction; boundary
values follow from PV integral ds/(s-z) = +-i*pi on a smooth closed curve.
"""
import numpy as np

from .contours import interp_matrix
from .kernels import (
    bary_matrix,
    bary_weights,
    cauchy_w_coeffs,
    cheb_points,
    closed_kernel,
    t_table,
)

TWOPI_I = 2j * np.pi
NEAR_ZETA = 0.88

_CACHE = {}


def clear_cache():
    _CACHE.clear()


def _cached(key, builder):
    out = _CACHE.get(key)
    if out is None:
        out = builder()
        _CACHE[key] = out
    return out


class OnContourError(ValueError):
    """Raised when an off-contour evaluation point lies on the segment."""


def inv_joukowski(t):
    """zeta with z = (zeta + 1/zeta)/2 and |zeta| <= 1."""
    t = np.asarray(t, dtype=complex)
    return t - np.sqrt(t - 1.0) * np.sqrt(t + 1.0)


def _vals_to_cheb(n):
    """Values at second-kind points -> Chebyshev T coefficients."""

    def build():
        V = t_table(cheb_points(n), n)
        return np.linalg.inv(V)

    return _cached(("v2c", n), build)


def cc_weights(n):
    """Clenshaw-Curtis weights on the second-kind points (integral over [-1,1])."""

    def build():
        tk = np.array([2.0 / (1.0 - k**2) if k % 2 == 0 else 0.0 for k in range(n)])
        return tk @ _vals_to_cheb(n)

    return _cached(("ccw", n), build)


# ---------------------------------------------------------------------------
# reference-interval building blocks
# ---------------------------------------------------------------------------
def _ref_w_matrix(that, n):
    """W_k(that) for off-interval targets with |zeta| near 1 (stable regime)."""
    A, c = _cached(("wcoef", n), lambda: cauchy_w_coeffs(n))
    T = t_table(that, n)
    W0 = np.log(that - 1.0) - np.log(that + 1.0)
    return T * W0[:, None] + T @ A.T + c[None, :]


def _ref_w_matrix_boundary(taus, n, side):
    """W_k boundary values at interior points of the interval itself."""
    A, c = _cached(("wcoef", n), lambda: cauchy_w_coeffs(n))
    taus = np.asarray(taus, dtype=float)
    if np.any(np.abs(taus) >= 1.0):
        raise ValueError("boundary evaluation requires interior points")
    T = t_table(taus, n).real
    sgn = 1.0 if side == "+" else -1.0
    W0 = np.log((1.0 - taus) / (1.0 + taus)) + sgn * 1j * np.pi
    return T * W0[:, None] + T @ A.T + c[None, :]


def _ref_far_matrix(that, n, zabs_max):
    """Quadrature route: integral l_j(tau)/(tau - that) dtau for far targets."""
    pad = 40.0 / max(np.log(1.0 / max(zabs_max, 1e-3)), 1e-2)
    nq = int(min(640, max(n + 16, np.ceil((n + pad) / 2.0))))
    nq = ((nq + 31) // 32) * 32

    def build():
        tq = cheb_points(nq)
        P = bary_matrix(cheb_points(n), bary_weights(n), tq)
        w = cc_weights(nq)
        return tq, P, w

    tq, P, w = _cached(("farq", n, nq), build)
    M = w[None, :] / (tq[None, :] - that[:, None])
    return M @ P


def _ref_cauchy_matrix(that, n):
    """integral l_j(tau)/(tau - that) dtau, any off-interval targets (2pi*i-free)."""
    that = np.asarray(that, dtype=complex)
    zeta = np.abs(inv_joukowski(that))
    out = np.empty((that.size, n), dtype=complex)
    near = zeta >= NEAR_ZETA
    if np.any(near):
        out[near] = _ref_w_matrix(that[near], n) @ _vals_to_cheb(n)
    far = ~near
    if np.any(far):
        out[far] = _ref_far_matrix(that[far], n, float(zeta[far].max()))
    return out


# ---------------------------------------------------------------------------
# per-segment reference coordinates and corrections
# ---------------------------------------------------------------------------
def _arc_params(seg):
    tm = 0.5 * (seg.theta1 + seg.theta2)
    T = np.tan(0.25 * (seg.theta2 - seg.theta1))
    return tm, T


def _ref_coord(seg, z):
    z = np.asarray(z, dtype=complex)
    if seg.kind in ("interval", "line-segment"):
        return (2.0 * z - (seg.za + seg.zb)) / (seg.zb - seg.za)
    if seg.kind == "arc":
        tm, T = _arc_params(seg)
        w = (z - seg.center) / seg.radius
        eta = -1j * (w - np.exp(1j * tm)) / (w + np.exp(1j * tm))
        return eta / T
    raise ValueError("reference coordinate undefined for closed circles")


def _arc_kappa_row(seg, n):
    """Target-independent rank-one term of the arc Cauchy transform."""

    def build():
        tm, T = _arc_params(seg)
        nq = max(2 * n, 64)
        tq = cheb_points(nq)
        P = bary_matrix(cheb_points(n), bary_weights(n), tq)
        w = cc_weights(nq)
        row = (1j * T) * (w / (1.0 - 1j * T * tq)) @ P
        return row

    return _cached(("kappa", seg.key, n), build)


def _on_open_segment(seg, that):
    return (np.abs(that.imag) < 1e-12) & (np.abs(that.real) <= 1.0 + 1e-12)


# ---------------------------------------------------------------------------
# closed circles
# ---------------------------------------------------------------------------
def _closed_geometry(seg, n):
    def build():
        taus = seg.ref_taus(n)
        gam = seg.map(taus)
        dgam = seg.dmap(taus)
        return taus, gam, dgam

    return _cached(("geom", seg.key, n), build)


def _trig_diff_matrix(n):
    """Spectral differentiation on the period-2 equispaced grid (even n)."""

    def build():
        D = np.zeros((n, n))
        for i in range(n):
            for j in range(n):
                if i != j:
                    D[i, j] = 0.5 * np.pi * (-1.0) ** (i - j) / np.tan(
                        np.pi * (i - j) / n
                    )
        return D

    return _cached(("trigD", n), build)


def _closed_boundary_plus(seg, n):
    def build():
        _, gam, dgam = _closed_geometry(seg, n)
        w = 2.0 / n
        K = closed_kernel(gam, dgam, w)
        S = (K - np.diag(K.sum(axis=1)) + w * _trig_diff_matrix(n)) / TWOPI_I
        ccw = seg.orient == 1
        return S + (np.eye(n) if ccw else 0.0)

    return _cached(("cbnd", seg.key, n), build)


def _closed_off_matrix(seg, n, z):
    _, gam, dgam = _closed_geometry(seg, n)
    w = 2.0 / n
    return (w / TWOPI_I) * dgam[None, :] / (gam[None, :] - z[:, None])


def _closed_boundary_at(seg, n, taus, side):
    """Boundary values at off-node angles via singularity subtraction."""
    taus = np.asarray(taus, dtype=float)
    _, gam, dgam = _closed_geometry(seg, n)
    w = 2.0 / n
    z0 = seg.map(taus)
    A = (w / TWOPI_I) * dgam[None, :] / (gam[None, :] - z0[:, None])
    L = interp_matrix(seg, n, taus)
    S = A - (A.sum(axis=1))[:, None] * L
    ccw = seg.orient == 1
    plus_inside = 1.0 if ccw else 0.0
    if side == "+":
        return S + plus_inside * L
    return S + (plus_inside - 1.0) * L


# ---------------------------------------------------------------------------
# public matrix builders
# ---------------------------------------------------------------------------
def offcontour_matrix(seg, n, z):
    """(len(z), n) matrix mapping node values to C[u](z), z off the segment."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))

    key = ("off", seg.key, n, z.tobytes())

    def build():
        if seg.is_closed:
            return _closed_off_matrix(seg, n, z)
        that = _ref_coord(seg, z)
        if np.any(_on_open_segment(seg, that)):
            raise OnContourError("evaluation point on segment; use boundary variant")
        M = _ref_cauchy_matrix(that, n)
        if seg.kind == "arc":
            M = M + np.ones((z.size, 1)) * _arc_kappa_row(seg, n)[None, :]
        return M / TWOPI_I

    return _cached(key, build)


def boundary_matrix(seg, n, taus, side):
    """(len(taus), n) matrix of one-sided boundary values at parameters taus."""
    if side not in ("+", "-"):
        raise ValueError("side must be '+' or '-'")
    taus = np.atleast_1d(np.asarray(taus, dtype=float))
    key = ("bnd", seg.key, n, side, taus.tobytes())

    def build():
        if seg.is_closed:
            return _closed_boundary_at(seg, n, taus, side)
        M = _ref_w_matrix_boundary(taus, n, side) @ _vals_to_cheb(n)
        if seg.kind == "arc":
            M = M + np.ones((taus.size, 1)) * _arc_kappa_row(seg, n)[None, :]
        return M / TWOPI_I

    return _cached(key, build)


def boundary_matrix_nodes(seg, n, side):
    """Boundary-value matrix at the segment's own collocation parameters."""
    if seg.is_closed:
        return _closed_boundary_plus(seg, n) - (0 if side == "+" else np.eye(n))
    return boundary_matrix(seg, n, seg.colloc_taus(n), side)


def integral_weights(seg, n):
    """Row w with w @ values = integral of u over the segment (physical ds)."""

    def build():
        if seg.is_closed:
            _, _, dgam = _closed_geometry(seg, n)
            return (2.0 / n) * dgam
        taus = seg.ref_taus(n)
        return cc_weights(n) * seg.dmap(taus)

    return _cached(("iw", seg.key, n), build)


# ---------------------------------------------------------------------------
# convenience evaluators (spec operations)
# ---------------------------------------------------------------------------
def cauchy_off(seg, values, z):
    """Cauchy transform of the discretized density at off-contour z."""
    values = np.asarray(values, dtype=complex)
    zarr = np.atleast_1d(np.asarray(z, dtype=complex))
    out = offcontour_matrix(seg, values.size, zarr) @ values
    return out if np.ndim(z) else out[0]


def cauchy_boundary(seg, values, side):
    """One-sided boundary values at the segment's own nodes (+ = left).

    Endpoint boundary values of a generic density on an open segment diverge
    logarithmically; the solver never evaluates there (interior collocation),
    so at the two endpoint nodes the interior-limit extrapolation is reported
    instead, with C- := C+ - u kept exact so the Plemelj identity holds at
    every node.
    """
    values = np.asarray(values, dtype=complex)
    n = values.size
    if seg.is_closed:
        out = _closed_boundary_plus(seg, n) @ values
        return out if side == "+" else out - values
    taus = seg.ref_taus(n)
    out = np.empty(n, dtype=complex)
    out[1:-1] = boundary_matrix(seg, n, taus[1:-1], "+") @ values
    out[0] = out[1]
    out[-1] = out[-2]
    return out if side == "+" else out - values
