"""Pure-numpy reference implementations of the hot kernels.

The compiled extension ``_kernels`` provides the same functions; ``kernels``
selects whichever is available at import time.  Everything here is written so
both versions agree to rounding error.
"""
import numpy as np


def cheb_points(n):
    """Chebyshev points of the second kind on [-1,1], ascending; n=1 -> {0}."""
    if n == 1:
        return np.zeros(1)
    j = np.arange(n)
    return np.cos(np.pi * (n - 1 - j) / (n - 1))


def cheb_points_first(n):
    """Chebyshev points of the first kind (strictly interior), ascending."""
    j = np.arange(n)
    return np.cos(np.pi * (2 * (n - 1 - j) + 1) / (2 * n))


def bary_weights(n):
    """Barycentric weights for the second-kind point set."""
    if n == 1:
        return np.ones(1)
    w = np.ones(n)
    w[::2] = 1.0
    w[1::2] = -1.0
    # ascending nodes start at -1: sign pattern is (-1)^(n-1-j); rescale is
    # irrelevant to the formula, halve the two endpoints.
    signs = np.array([(-1.0) ** (n - 1 - j) for j in range(n)])
    w = signs
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def bary_matrix(nodes, weights, targets):
    """Interpolation matrix from values at ``nodes`` to ``targets``.

    Rows for targets that coincide with a node reduce to a unit row.
    """
    nodes = np.asarray(nodes)
    targets = np.asarray(targets)
    m, n = targets.size, nodes.size
    if n == 1:
        return np.ones((m, 1), dtype=complex)
    diff = targets[:, None] - nodes[None, :]
    out = np.empty((m, n), dtype=complex)
    exact_t, exact_j = np.nonzero(np.abs(diff) < 1e-14)
    diff[exact_t, :] = 1.0  # avoid 0-division; rows rewritten below
    tmp = weights[None, :] / diff
    out[:] = tmp / tmp.sum(axis=1)[:, None]
    for t, j in zip(exact_t, exact_j):
        out[t, :] = 0.0
        out[t, j] = 1.0
    return out


def t_table(z, n):
    """Chebyshev T_k(z), k < n, columnwise; stable for z near [-1,1]."""
    z = np.asarray(z, dtype=complex)
    T = np.empty((z.size, n), dtype=complex)
    T[:, 0] = 1.0
    if n > 1:
        T[:, 1] = z
    for k in range(2, n):
        T[:, k] = 2.0 * z * T[:, k - 1] - T[:, k - 2]
    return T


def cauchy_w_coeffs(n):
    """Static part of the interval Cauchy-transform formula.

    Returns (A, c) with A[k,i] = 4/(k-i) for 1 <= i <= k-1, k-i odd, and
    c[k] = 2/k for odd k, so that

        W_k(z) = T_k(z) W_0(z) + sum_i A[k,i] T_i(z) + c[k],
        W_k(z) = integral of T_k(s)/(s-z) over [-1,1].
    """
    A = np.zeros((n, n))
    c = np.zeros(n)
    for k in range(1, n):
        for i in range(1, k):
            if (k - i) % 2 == 1:
                A[k, i] = 4.0 / (k - i)
        if k % 2 == 1:
            c[k] = 2.0 / k
    return A, c


def closed_kernel(gamma, dgamma, w):
    """Trapezoid kernel matrix for a smooth closed curve.

    K[i,j] = w * dgamma[j]/(gamma[j]-gamma[i]) off the diagonal, zero on it,
    with the subtracted-singularity diagonal handled by the caller.
    """
    m = gamma.size
    diff = gamma[None, :] - gamma[:, None]
    np.fill_diagonal(diff, 1.0)
    K = w * dgamma[None, :] / diff
    np.fill_diagonal(K, 0.0)
    return K
