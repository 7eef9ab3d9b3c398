import numpy as np
import pytest
from scipy.integrate import quad


from kdvdress.contours import interp_matrix
from kdvdress.cauchy import (
    OnContourError,
    boundary_matrix,
    cauchy_boundary,
    cauchy_off,
    integral_weights,
    offcontour_matrix,
)
from kdvdress.contours import ContourSegment, cheb_nodes

rng = np.random.default_rng(11)
I2PI = 2j * np.pi


def quad_oracle(seg, fvals_of_tau, z, nquad=2000):
    """Direct adaptive quadrature of the parameterized Cauchy integral."""

    def integrand(t):
        return fvals_of_tau(t) * seg.dmap(t) / (seg.map(t) - z)

    re = quad(lambda t: integrand(t).real, -1, 1, limit=400)[0]
    im = quad(lambda t: integrand(t).imag, -1, 1, limit=400)[0]
    return (re + 1j * im) / I2PI


def test_zero_density():
    seg = ContourSegment.interval(-1, 1)
    assert cauchy_off(seg, np.zeros(16), 2j) == 0


def test_constant_density_closed_form():
    seg = ContourSegment.interval(-1, 1)
    z = 2j
    got = cauchy_off(seg, np.ones(16), z)
    want = (np.log(1 - z) - np.log(-1 - z)) / I2PI
    assert abs(got - want) < 1e-13


def test_linear_density_closed_form():
    # integral of s/(s-3) over [-1,1] = 2 - 3 log 2
    seg = ContourSegment.interval(-1, 1)
    got = cauchy_off(seg, cheb_nodes(16).astype(complex), 3.0)
    want = (2.0 - 3.0 * np.log(2.0)) / I2PI
    assert abs(got - want) < 1e-13


def test_plemelj_identity_random_densities():
    seg = ContourSegment.interval(-0.5, 2.0 + 0.3j)
    n = 24
    for _ in range(10):
        u = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        cp = cauchy_boundary(seg, u, "+")
        cm = cauchy_boundary(seg, u, "-")
        assert np.max(np.abs(cp - cm - u)) < 1e-11


def test_constant_density_principal_value():
    seg = ContourSegment.interval(-1, 1)
    n = 20
    u = np.ones(n)
    taus = seg.ref_taus(n)[1:-1]
    cp = boundary_matrix(seg, n, taus, "+") @ u
    want = np.log((1 - taus) / (1 + taus)) / I2PI + 0.5
    assert np.max(np.abs(cp - want)) < 1e-12


def test_off_contour_approaches_boundary():
    # C(x + i d) -> C+(x); the linear-in-d term is removed by one Richardson
    # step, leaving O(d^2) = 1e-8 at d = 1e-4.
    seg = ContourSegment.interval(-1, 1)
    n = 40
    u = np.exp(cheb_nodes(n)) + 0.5j * cheb_nodes(n)
    tau0 = 0.37
    cp = boundary_matrix(seg, n, [tau0], "+") @ u
    d = 1e-4
    f1 = cauchy_off(seg, u, seg.map(tau0) + 1j * d)
    f2 = cauchy_off(seg, u, seg.map(tau0) + 0.5j * d)
    extrap = 2.0 * f2 - f1
    assert abs(f1 - cp[0]) < 1e-3  # raw approach
    assert abs(extrap - cp[0]) < 1e-6


def test_decay_first_moment():
    seg = ContourSegment.interval(-1, 1)
    n = 30
    u = 1.0 / (2.0 + cheb_nodes(n)) + 0j
    w = integral_weights(seg, n)
    moment = -(w @ u) / I2PI
    for R in [1e3, 1e5, 1e6]:
        z = R * np.exp(0.7j)
        assert abs(cauchy_off(seg, u, z) * z - moment) < 10.0 / R


def test_near_far_crossover_agreement():
    # targets straddling the |zeta| = NEAR_ZETA switch agree with quadrature
    seg = ContourSegment.interval(-1, 1)
    n = 30
    u_of = lambda t: np.exp(t) / (2.0 + t)
    u = u_of(cheb_nodes(n)).astype(complex)
    for z in [0.3 + 0.05j, 0.3 + 0.2j, 0.9 + 0.4j, -1.4 + 0.01j, 2.5 - 1.0j]:
        want = quad_oracle(seg, u_of, z)
        got = cauchy_off(seg, u, z)
        assert abs(got - want) < 1e-11, z


def test_rotated_segment_against_quadrature():
    seg = ContourSegment.interval(-0.3 - 0.2j, 1.1 + 0.9j)
    n = 36
    u_of = lambda t: np.cos(t) + 1j * t**2
    u = u_of(cheb_nodes(n)).astype(complex)
    for z in [0.5 + 1.2j, -2.0, 0.4 + 0.33j]:
        want = quad_oracle(seg, u_of, z)
        assert abs(cauchy_off(seg, u, z) - want) < 1e-11


def test_on_contour_rejected():
    seg = ContourSegment.interval(-1, 1)
    with pytest.raises(OnContourError):
        cauchy_off(seg, np.ones(8), 0.123)


def test_closed_circle_laurent_exactness():
    # C[(s-c)^m] inside = (z-c)^m for m>=0; C[(s-c)^-1] outside = -(z-c)^-1
    c, R = 0.5j, 2.0
    seg = ContourSegment.circle(c, R)
    n = 48
    w = seg.nodes(n) - c
    for m in [0, 1, 3]:
        got = cauchy_off(seg, w**m, np.array([c + 0.3]))[0]
        assert abs(got - 0.3**m) < 1e-12
        assert abs(cauchy_off(seg, w**m, np.array([c + 5.0]))[0]) < 1e-12
    got = cauchy_off(seg, 1.0 / w, np.array([c + 5.0]))[0]
    assert abs(got + 1.0 / 5.0) < 1e-12
    # boundary values: C+ keeps analytic-inside part on a ccw circle
    cp = cauchy_boundary(seg, w**2, "+")
    assert np.max(np.abs(cp - w**2)) < 1e-11
    cm = cauchy_boundary(seg, 1.0 / w, "-")
    assert np.max(np.abs(cm + 1.0 / w)) < 1e-11


def test_closed_circle_clockwise_orientation():
    # clockwise circle: left of travel is the outside, and C_cw = -C_ccw
    c, R = 0.0, 1.0
    seg = ContourSegment.circle(c, R, orient=-1)
    n = 32
    w = seg.nodes(n)
    cp = cauchy_boundary(seg, 1.0 / w, "+")
    assert np.max(np.abs(cp - 1.0 / w)) < 1e-11  # outside limit of +1/z
    cm = cauchy_boundary(seg, w, "-")
    assert np.max(np.abs(cm + w)) < 1e-11  # inside limit of -z


def test_arc_against_quadrature():
    seg = ContourSegment.arc(0.2 + 0.1j, 1.0, -np.pi / 3, np.pi / 2)
    n = 40
    u_of = lambda t: np.exp(0.3 * t) + 1j * np.sin(t)
    u = u_of(cheb_nodes(n)).astype(complex)
    for z in [2.0 + 2.0j, 0.2 + 0.1j, 1.0 + 0.9j, -0.4 - 0.8j]:
        want = quad_oracle(seg, u_of, z)
        assert abs(cauchy_off(seg, u, z) - want) < 1e-10, z


def test_arc_plemelj_and_left_side():
    seg = ContourSegment.arc(0.0, 1.0, 0.1, 1.7)
    n = 30
    u = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    taus = np.array([-0.41, 0.02, 0.63])
    cp = boundary_matrix(seg, n, taus, "+") @ u
    cm = boundary_matrix(seg, n, taus, "-") @ u
    ui = interp_matrix(seg, n, taus) @ u
    assert np.max(np.abs(cp - cm - ui)) < 1e-11
    # left of a ccw arc around 0 points toward the center; outside is '-'
    z_out = seg.map(0.02) * (1.0 + 1e-5)
    z_in = seg.map(0.02) * (1.0 - 1e-5)
    assert abs(cauchy_off(seg, u, z_out) - cm[1]) < 1e-3 * np.abs(u).max()
    assert abs(cauchy_off(seg, u, z_in) - cp[1]) < 1e-3 * np.abs(u).max()


def test_integral_weights_interval():
    seg = ContourSegment.interval(0, 2)
    w = integral_weights(seg, 12)
    vals = seg.nodes(12) ** 2
    assert abs(w @ vals - 8.0 / 3.0) < 1e-12


def test_integral_weights_circle():
    seg = ContourSegment.circle(1.0, 0.5)
    w = integral_weights(seg, 16)
    # integral of 1/(s-1) ds over ccw circle = 2 pi i
    vals = 1.0 / (seg.nodes(16) - 1.0)
    assert abs(w @ vals - I2PI) < 1e-12
