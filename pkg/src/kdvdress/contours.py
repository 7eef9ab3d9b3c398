"""Oriented contour pieces in the spectral k-plane.

Open pieces (intervals, straight segments, circular arcs) are charted on the
reference interval [-1,1] and discretized at Chebyshev points of the second
kind, so segment endpoints are always nodes.  Closed circles use an angle
chart with equispaced nodes and a trigonometric basis: Chebyshev cardinal
functions are discontinuous at the seam map(-1)=map(+1) of a closed curve,
which ruins Cauchy boundary values there.

Arcs are charted through the tangent-half-angle Moebius map; this keeps one
open-segment code path and reduces the arc Cauchy transform exactly to the
interval one (see cauchy module).
"""
from dataclasses import dataclass, field

import numpy as np

from .kernels import bary_matrix, bary_weights, cheb_points, cheb_points_first


def cheb_nodes(n):
    """Chebyshev points of the second kind on [-1,1], ascending.

    n=1 degenerates to {0}; n=0 is rejected.
    """
    if n < 1:
        raise ValueError("node count must be >= 1")
    return cheb_points(n)


def _check_tau(tau):
    tau = np.asarray(tau, dtype=float)
    if np.any(np.abs(tau) > 1 + 1e-13):
        raise ValueError("reference parameter outside [-1,1]")
    return tau


class ContourSegment:
    """One oriented analytic piece: interval/segment, circle, or arc."""

    def __init__(self, kind, **params):
        self.kind = kind
        self.params = params
        if kind in ("interval", "line-segment"):
            self.za = complex(params["za"])
            self.zb = complex(params["zb"])
            if self.za == self.zb:
                raise ValueError("degenerate segment")
        elif kind == "circle":
            self.center = complex(params["center"])
            self.radius = float(params["radius"])
            self.theta0 = float(params.get("theta0", 0.0))
            self.orient = int(params.get("orient", 1))
            if self.radius <= 0 or self.orient not in (1, -1):
                raise ValueError("bad circle parameters")
        elif kind == "arc":
            self.center = complex(params["center"])
            self.radius = float(params["radius"])
            self.theta1 = float(params["theta1"])
            self.theta2 = float(params["theta2"])
            sweep = self.theta2 - self.theta1
            if self.radius <= 0 or sweep == 0 or abs(sweep) >= 2 * np.pi:
                raise ValueError("bad arc parameters")
        else:
            raise ValueError(f"unknown segment kind {kind!r}")

    # -- constructors ------------------------------------------------------
    @staticmethod
    def interval(za, zb):
        return ContourSegment("interval", za=za, zb=zb)

    @staticmethod
    def circle(center, radius, orient=1, theta0=0.0):
        return ContourSegment(
            "circle", center=center, radius=radius, orient=orient, theta0=theta0
        )

    @staticmethod
    def arc(center, radius, theta1, theta2):
        return ContourSegment(
            "arc", center=center, radius=radius, theta1=theta1, theta2=theta2
        )

    # -- geometry ----------------------------------------------------------
    @property
    def is_closed(self):
        return self.kind == "circle"

    @property
    def key(self):
        if self.kind in ("interval", "line-segment"):
            p = (self.za, self.zb)
        elif self.kind == "circle":
            p = (self.center, self.radius, self.theta0, self.orient)
        else:
            p = (self.center, self.radius, self.theta1, self.theta2)
        return (self.kind,) + p

    def map(self, tau):
        """Chart [-1,1] -> C. Closed circles wrap: map(-1) = map(+1)."""
        tau = _check_tau(tau)
        if self.kind in ("interval", "line-segment"):
            return 0.5 * (self.za + self.zb) + 0.5 * (self.zb - self.za) * tau
        if self.kind == "circle":
            ang = self.theta0 + self.orient * np.pi * (tau + 1.0)
            return self.center + self.radius * np.exp(1j * ang)
        # arc: tangent-half-angle chart
        tm = 0.5 * (self.theta1 + self.theta2)
        T = np.tan(0.25 * (self.theta2 - self.theta1))
        eta = T * tau
        w = np.exp(1j * tm) * (1 + 1j * eta) / (1 - 1j * eta)
        return self.center + self.radius * w

    def dmap(self, tau):
        """Chart derivative dz/dtau."""
        tau = _check_tau(tau)
        if self.kind in ("interval", "line-segment"):
            return np.full(np.shape(tau), 0.5 * (self.zb - self.za), dtype=complex)
        if self.kind == "circle":
            ang = self.theta0 + self.orient * np.pi * (tau + 1.0)
            return self.center * 0 + 1j * self.orient * np.pi * self.radius * np.exp(1j * ang)
        tm = 0.5 * (self.theta1 + self.theta2)
        T = np.tan(0.25 * (self.theta2 - self.theta1))
        eta = T * tau
        return self.radius * T * np.exp(1j * tm) * 2j / (1 - 1j * eta) ** 2

    def reversed(self):
        if self.kind in ("interval", "line-segment"):
            return ContourSegment(self.kind, za=self.zb, zb=self.za)
        if self.kind == "circle":
            return ContourSegment(
                "circle",
                center=self.center,
                radius=self.radius,
                orient=-self.orient,
                theta0=self.theta0,
            )
        return ContourSegment.arc(self.center, self.radius, self.theta2, self.theta1)

    @property
    def endpoints(self):
        return self.map(np.array([-1.0, 1.0]))

    def ref_taus(self, n):
        """Representation parameters: Chebyshev-2 (open) or equispaced (closed)."""
        if self.is_closed:
            return -1.0 + 2.0 * np.arange(n) / n
        return cheb_points(n)

    def colloc_taus(self, n):
        """Collocation parameters: first-kind points (open), nodes (closed)."""
        if self.is_closed:
            return self.ref_taus(n)
        return cheb_points_first(n)

    def nodes(self, n):
        return self.map(self.ref_taus(n))

    def arclength_scale(self):
        if self.kind in ("interval", "line-segment"):
            return abs(self.zb - self.za)
        if self.kind == "circle":
            return 2 * np.pi * self.radius
        return abs(self.theta2 - self.theta1) * self.radius

    def __repr__(self):
        return f"ContourSegment({self.kind}, {self.params})"


def map_point(seg, tau):
    """Point on the segment at reference parameter tau (validated)."""
    return seg.map(tau)


@dataclass
class Discretization:
    """Samples of a function at a segment's nodes."""

    segment: ContourSegment
    values: np.ndarray
    _interp_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape[0] < 1:
            raise ValueError("empty discretization")
        n = self.values.shape[0]
        taus = self.segment.ref_taus(n)
        if len(set(np.round(taus, 14))) != n:
            raise ValueError("nodes are not distinct")

    @property
    def n(self):
        return self.values.shape[0]

    def interpolate(self, tau):
        """Interpolant value at reference parameter tau (exact at nodes)."""
        tau = np.atleast_1d(_check_tau(tau))
        mat = interp_matrix(self.segment, self.n, tau)
        out = mat @ self.values
        return out if out.size > 1 else out[0]


def interp_matrix(seg, n, taus):
    """Values-at-nodes -> values-at-taus matrix (barycentric / trigonometric)."""
    taus = np.atleast_1d(np.asarray(taus, dtype=float))
    if not seg.is_closed:
        nodes = cheb_points(n)
        return bary_matrix(nodes, bary_weights(n), taus)
    # trigonometric cardinal interpolation at n equispaced angles
    th = np.pi * (taus[:, None] + 1.0)  # angle coordinate in [0, 2pi)
    thj = np.pi * (seg.ref_taus(n)[None, :] + 1.0)
    d = th - thj
    out = np.empty((taus.size, n))
    small = np.abs(np.remainder(d + np.pi, 2 * np.pi) - np.pi) < 1e-14
    d = np.where(small, 1.0, d)
    if n % 2 == 0:
        out = np.sin(0.5 * n * d) / (n * np.tan(0.5 * d))
    else:
        out = np.sin(0.5 * n * d) / (n * np.sin(0.5 * d))
    out[small] = 1.0
    return out


def interpolate(disc, tau):
    """Barycentric/trigonometric interpolation of a Discretization."""
    return disc.interpolate(tau)
