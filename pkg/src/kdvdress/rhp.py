"""Collocation solver for vector- and matrix-valued Riemann-Hilbert problems.

Densities live at Chebyshev points of the second kind (equispaced angles on
closed circles); the jump relation Phi+ = Phi- J is enforced at mapped
Chebyshev points of the FIRST kind, which are strictly interior, so no Cauchy
boundary value is ever needed at a segment endpoint or junction.  The
resulting square system is dense and solved by LU with partial pivoting.

The x-differentiated problems share the collocation matrix: d/dx of the jump
relation gives (C v_m)+ - (C v_m)- J = sum binom(m,l) (C v_l)- d^(m-l)J with
v_0 the density of Phi itself, so a solved LU factorization yields spectral
x-derivatives of the reconstruction for the cost of extra right-hand sides.
"""
import numpy as np
from scipy.linalg import lu_factor, lu_solve
from scipy.linalg import lapack as _lapack

from . import cauchy
from .contours import interp_matrix

COND_LIMIT = 1e12


class IllPosedRHPError(RuntimeError):
    """Collocation matrix numerically singular (condition number > 1e12)."""


class Jump:
    """Jump matrix on one segment: value and analytic x-derivatives.

    fun(k)   -> (..., 2, 2) complex
    dfun(k, order) -> same shape, d^order/dx^order of the jump; only orders
    actually requested by derivative solves need to be supported.
    """

    def __init__(self, fun, dfun=None):
        self._fun = fun
        self._dfun = dfun

    def __call__(self, k):
        k = np.atleast_1d(np.asarray(k, dtype=complex))
        out = np.asarray(self._fun(k), dtype=complex)
        if out.shape != k.shape + (2, 2):
            out = np.broadcast_to(out, k.shape + (2, 2)).copy()
        return out

    def dx(self, k, order=1):
        if self._dfun is None:
            raise NotImplementedError("jump has no x-derivative evaluator")
        k = np.atleast_1d(np.asarray(k, dtype=complex))
        out = np.asarray(self._dfun(k, order), dtype=complex)
        if out.shape != k.shape + (2, 2):
            out = np.broadcast_to(out, k.shape + (2, 2)).copy()
        return out


def identity_jump():
    return Jump(lambda k: np.broadcast_to(np.eye(2), k.shape + (2, 2)),
                lambda k, order: np.zeros(k.shape + (2, 2)))


class Piece:
    """One contour segment with its jump and discretization order."""

    def __init__(self, segment, jump, n, label=""):
        n = int(n)
        if segment.is_closed and n % 2:
            n += 1
        if n < 4:
            n = 4
        self.segment = segment
        self.jump = jump
        self.n = n
        self.label = label

    def __repr__(self):
        return f"Piece({self.label or self.segment.kind}, n={self.n})"


class RHProblem:
    """Jump data on a contour plus normalization at infinity."""

    def __init__(self, pieces, normalization="vector"):
        if normalization not in ("vector", "matrix"):
            raise ValueError("normalization must be 'vector' or 'matrix'")
        self.pieces = list(pieces)
        self.normalization = normalization

    def junctions(self, tol=1e-10):
        """Group coincident open-segment endpoints."""
        pts = []
        for ip, p in enumerate(self.pieces):
            if p.segment.is_closed:
                continue
            for end in (-1.0, 1.0):
                pts.append((complex(p.segment.map(end)), ip, end))
        groups = []
        used = [False] * len(pts)
        for i, (z, ip, end) in enumerate(pts):
            if used[i]:
                continue
            grp = [(ip, end)]
            used[i] = True
            for j in range(i + 1, len(pts)):
                if not used[j] and abs(pts[j][0] - z) < tol:
                    grp.append((pts[j][1], pts[j][2]))
                    used[j] = True
            if len(grp) > 1:
                groups.append((z, grp))
        return groups

    def check_junction_consistency(self, tol=1e-10):
        """Cyclic product of jumps around every junction must be identity."""
        worst = 0.0
        for z, grp in self.junctions():
            rays = []
            for ip, end in grp:
                seg = self.pieces[ip].segment
                d = seg.dmap(end)
                outgoing = -d if end == 1.0 else d
                rays.append((np.angle(outgoing), ip, end))
            rays.sort()
            prod = np.eye(2, dtype=complex)
            for ang, ip, end in rays:
                J = self.pieces[ip].jump(np.array([z]))[0]
                sgn = +1 if end == -1.0 else -1
                prod = prod @ (J if sgn > 0 else np.linalg.inv(J))
            worst = max(worst, np.max(np.abs(prod - np.eye(2))))
        if worst > tol:
            raise ValueError(f"junction cyclic product off identity by {worst:.2e}")
        return worst


class RHSolution:
    """Densities at nodes per piece; reconstructs Phi = N + C[u]."""

    def __init__(self, problem, densities, lu, blocks, colloc, jvals):
        self.problem = problem
        self.densities = densities  # list of (n, 2, nrhs)
        self._lu = lu
        self._blocks = blocks  # (Cp, Cm) block dict
        self._colloc = colloc  # list of collocation point arrays
        self._jvals = jvals
        self.nrhs = densities[0].shape[2] if densities else 1

    # -- reconstruction ----------------------------------------------------
    def evaluate(self, z):
        """Phi(z) off-contour: (2,) for vector problems, (2,2) for matrix."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        nv = self.problem.normalization
        out = np.zeros((z.size, 2, self.nrhs), dtype=complex)
        for p, u in zip(self.problem.pieces, self.densities):
            M = cauchy.offcontour_matrix(p.segment, p.n, z)
            out += np.einsum("tj,jcr->tcr", M, u)
        if nv == "vector":
            out = out[:, :, 0] + 1.0
            return out if z.size > 1 else out[0]
        out = out + np.eye(2)[None, :, :].transpose(0, 2, 1)  # N rows: e_r
        # stored as [t, c, r]: Phi_{r,c} = delta_{rc} + sum C u^{(r)}_c
        phi = out.transpose(0, 2, 1)
        return phi if z.size > 1 else phi[0]

    def first_moment(self):
        """Coefficient of 1/k in Phi at infinity: -(2 pi i)^-1 sum int u."""
        tot = np.zeros((2, self.nrhs), dtype=complex)
        for p, u in zip(self.problem.pieces, self.densities):
            w = cauchy.integral_weights(p.segment, p.n)
            tot += np.einsum("j,jcr->cr", w, u)
        tot = -tot / (2j * np.pi)
        if self.problem.normalization == "vector":
            return tot[:, 0]
        return tot.T  # [r, c]

    def boundary_values(self, ip, taus, side):
        """Phi on piece ip at parameters taus from one side."""
        p = self.problem.pieces[ip]
        z = p.segment.map(np.atleast_1d(taus))
        out = np.zeros((z.size, 2, self.nrhs), dtype=complex)
        for jp, (q, u) in enumerate(zip(self.problem.pieces, self.densities)):
            if jp == ip:
                M = cauchy.boundary_matrix(q.segment, q.n, taus, side)
            else:
                M = cauchy.offcontour_matrix(q.segment, q.n, z)
            out += np.einsum("tj,jcr->tcr", M, u)
        if self.problem.normalization == "vector":
            return out[:, :, 0] + 1.0
        return (out + np.eye(2)[None, :, :].transpose(0, 2, 1)).transpose(0, 2, 1)

    def jump_residual(self, n_probe=6):
        """max over off-node probe points of ||Phi+ - Phi- J||_inf."""
        worst = 0.0
        for ip, p in enumerate(self.problem.pieces):
            if p.segment.is_closed:
                base = p.segment.ref_taus(p.n)
                taus = base[:-1] + 0.5 * np.diff(base)
                taus = taus[:: max(1, len(taus) // n_probe)]
            else:
                taus = np.linspace(-0.92, 0.92, n_probe) + 0.013
            phip = self.boundary_values(ip, taus, "+")
            phim = self.boundary_values(ip, taus, "-")
            J = p.jump(p.segment.map(taus))
            if self.problem.normalization == "vector":
                res = phip - np.einsum("tc,tcd->td", phim, J)
            else:
                res = phip - np.einsum("trc,tcd->trd", phim, J)
            worst = max(worst, float(np.max(np.abs(res))))
        return worst


def _assemble(problem):
    pieces = problem.pieces
    npc = len(pieces)
    colloc = []
    jvals = []
    for p in pieces:
        taus = p.segment.colloc_taus(p.n)
        z = p.segment.map(taus)
        colloc.append(z)
        jvals.append(p.jump(z))
    blocks = {}
    for it, pt in enumerate(pieces):
        for js, ps in enumerate(pieces):
            if it == js:
                if pt.segment.is_closed:
                    Cp = cauchy.boundary_matrix_nodes(pt.segment, pt.n, "+")
                    Cm = Cp - np.eye(pt.n)
                else:
                    taus = pt.segment.colloc_taus(pt.n)
                    Cp = cauchy.boundary_matrix(pt.segment, pt.n, taus, "+")
                    Cm = Cp - interp_matrix(pt.segment, pt.n, taus)
            else:
                Cp = cauchy.offcontour_matrix(ps.segment, ps.n, colloc[it])
                Cm = Cp
            blocks[(it, js)] = (Cp, Cm)

    sizes = [p.n for p in pieces]
    offs = np.concatenate([[0], np.cumsum([2 * n for n in sizes])])
    Ntot = offs[-1]
    A = np.zeros((Ntot, Ntot), dtype=complex)
    for it in range(npc):
        nt = sizes[it]
        J = jvals[it]
        for js in range(npc):
            ns = sizes[js]
            Cp, Cm = blocks[(it, js)]
            for c in range(2):
                for cp in range(2):
                    blk = -(J[:, cp, c])[:, None] * Cm
                    if c == cp:
                        blk = blk + Cp
                    A[offs[it] + c * nt : offs[it] + (c + 1) * nt,
                      offs[js] + cp * ns : offs[js] + (cp + 1) * ns] = blk
    return A, blocks, colloc, jvals, offs, sizes


def solve(problem, check_cond=True):
    """Solve the RHP; returns an RHSolution (vector or matrix per problem)."""
    A, blocks, colloc, jvals, offs, sizes = _assemble(problem)
    anorm = np.linalg.norm(A, 1) if check_cond else None
    lu = lu_factor(A)
    if check_cond:
        rcond = _lapack.zgecon(lu[0], anorm, norm="1")[0]
        if not np.isfinite(rcond) or rcond < 1.0 / COND_LIMIT:
            raise IllPosedRHPError(
                f"collocation matrix condition ~ {1.0 / max(rcond, 1e-300):.2e}"
            )
    nrhs = 1 if problem.normalization == "vector" else 2
    B = np.zeros((A.shape[0], nrhs), dtype=complex)
    for it, p in enumerate(problem.pieces):
        nt = sizes[it]
        JmI = jvals[it] - np.eye(2)
        for c in range(2):
            if problem.normalization == "vector":
                B[offs[it] + c * nt : offs[it] + (c + 1) * nt, 0] = (
                    JmI[:, 0, c] + JmI[:, 1, c]
                )
            else:
                for r in range(2):
                    B[offs[it] + c * nt : offs[it] + (c + 1) * nt, r] = JmI[:, r, c]
    U = lu_solve(lu, B)
    densities = []
    for it, p in enumerate(problem.pieces):
        nt = sizes[it]
        u = np.empty((nt, 2, nrhs), dtype=complex)
        for c in range(2):
            u[:, c, :] = U[offs[it] + c * nt : offs[it] + (c + 1) * nt, :]
        densities.append(u)
    return RHSolution(problem, densities, lu, blocks, colloc, jvals, )


def _minus_values(sol, densities):
    """(C v)- at all collocation points, from stored blocks; (t-piece, m, 2, nrhs)."""
    out = []
    for it, pt in enumerate(sol.problem.pieces):
        acc = np.zeros((pt.n, 2, densities[0].shape[2]), dtype=complex)
        for js, ps in enumerate(sol.problem.pieces):
            Cm = sol._blocks[(it, js)][1]
            acc += np.einsum("tj,jcr->tcr", Cm, densities[js])
        out.append(acc)
    return out


def solve_tower(sol, max_order):
    """Densities of d^m/dx^m Phi for m = 1..max_order (same LU, new RHS).

    Jumps of every piece must implement dx(k, order) up to max_order.
    """
    problem = sol.problem
    pieces = problem.pieces
    nrhs = sol.nrhs
    A_offs = np.concatenate([[0], np.cumsum([2 * p.n for p in pieces])])
    towers = [sol.densities]
    minus = [_minus_values(sol, sol.densities)]
    # contribution of the normalization to (C v_0)- is the constant N
    for it, p in enumerate(pieces):
        if problem.normalization == "vector":
            minus[0][it] = minus[0][it] + 1.0
        else:
            eye = np.eye(2).T[None, :, :]  # [1, c, r] with delta_{rc}
            minus[0][it] = minus[0][it] + eye
    from math import comb

    for m in range(1, max_order + 1):
        B = np.zeros((A_offs[-1], nrhs), dtype=complex)
        for it, p in enumerate(pieces):
            z = sol._colloc[it]
            rhs = np.zeros((p.n, 2, nrhs), dtype=complex)
            for l in range(m):
                dJ = p.jump.dx(z, m - l)
                rhs += comb(m, l) * np.einsum(
                    "tcr,tcd->tdr", minus[l][it], dJ
                )
            for c in range(2):
                B[A_offs[it] + c * p.n : A_offs[it] + (c + 1) * p.n, :] = rhs[:, c, :]
        V = lu_solve(sol._lu, B)
        dens = []
        for it, p in enumerate(pieces):
            u = np.empty((p.n, 2, nrhs), dtype=complex)
            for c in range(2):
                u[:, c, :] = V[A_offs[it] + c * p.n : A_offs[it] + (c + 1) * p.n, :]
            dens.append(u)
        towers.append(dens)
        minus.append(_minus_values(sol, dens))
    return towers[1:]


def moment_of(problem, densities):
    """First moment -(2 pi i)^-1 sum int u for a density set."""
    nrhs = densities[0].shape[2]
    tot = np.zeros((2, nrhs), dtype=complex)
    for p, u in zip(problem.pieces, densities):
        w = cauchy.integral_weights(p.segment, p.n)
        tot += np.einsum("j,jcr->cr", w, u)
    tot = -tot / (2j * np.pi)
    if problem.normalization == "vector":
        return tot[:, 0]
    return tot.T


def solve_x_derivative(sol):
    """Density of dPhi/dx (same collocation matrix, differentiated RHS)."""
    return solve_tower(sol, 1)[0]
