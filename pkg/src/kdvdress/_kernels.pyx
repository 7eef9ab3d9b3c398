# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the _kernels_py hot loops."""
import numpy as np

cimport numpy as cnp

cnp.import_array()


def bary_weights(int n):
    if n == 1:
        return np.ones(1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] w = np.empty(n)
    cdef int j
    for j in range(n):
        w[j] = 1.0 if ((n - 1 - j) % 2 == 0) else -1.0
    w[0] *= 0.5
    w[n - 1] *= 0.5
    return w


def bary_matrix(nodes_in, weights_in, targets_in):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] nodes = np.asarray(
        nodes_in, dtype=complex
    )
    cdef cnp.ndarray[cnp.float64_t, ndim=1] weights = np.asarray(
        weights_in, dtype=float
    )
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] targets = np.asarray(
        targets_in, dtype=complex
    )
    cdef Py_ssize_t m = targets.shape[0], n = nodes.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] out = np.empty((m, n), dtype=complex)
    if n == 1:
        out[:, 0] = 1.0
        return out
    cdef Py_ssize_t t, j, hit
    cdef double complex d, s, tmp
    for t in range(m):
        hit = -1
        for j in range(n):
            d = targets[t] - nodes[j]
            if abs(d) < 1e-14:
                hit = j
                break
        if hit >= 0:
            for j in range(n):
                out[t, j] = 0.0
            out[t, hit] = 1.0
            continue
        s = 0.0
        for j in range(n):
            tmp = weights[j] / (targets[t] - nodes[j])
            out[t, j] = tmp
            s += tmp
        for j in range(n):
            out[t, j] /= s
    return out


def t_table(z_in, int n):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] z = np.atleast_1d(
        np.asarray(z_in, dtype=complex)
    )
    cdef Py_ssize_t m = z.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] T = np.empty((m, n), dtype=complex)
    cdef Py_ssize_t t, k
    cdef double complex zz
    for t in range(m):
        zz = z[t]
        T[t, 0] = 1.0
        if n > 1:
            T[t, 1] = zz
        for k in range(2, n):
            T[t, k] = 2.0 * zz * T[t, k - 1] - T[t, k - 2]
    return T


def closed_kernel(gamma_in, dgamma_in, double w):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] gamma = np.asarray(
        gamma_in, dtype=complex
    )
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] dgamma = np.asarray(
        dgamma_in, dtype=complex
    )
    cdef Py_ssize_t m = gamma.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] K = np.zeros((m, m), dtype=complex)
    cdef Py_ssize_t i, j
    for i in range(m):
        for j in range(m):
            if i != j:
                K[i, j] = w * dgamma[j] / (gamma[j] - gamma[i])
    return K
