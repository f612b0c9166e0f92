# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels: Dirichlet convolution and index dilation.

The object kernels keep scalar arithmetic in Python (exact rationals
and cyclotomic numbers) and win on C-level loop and list management;
the packed kernel runs entirely on int64 coordinate matrices.
"""

import numpy as np

BACKEND = "compiled"


def dirichlet_convolve(list a, list b, Py_ssize_t nmax):
    """c[n] = sum_{ij = n} a[i] * b[j] for 1 <= n <= nmax."""
    cdef Py_ssize_t i, j, top
    cdef list out = [0] * (nmax + 1)
    cdef object ai, bj
    for i in range(1, nmax + 1):
        ai = a[i]
        if not ai:
            continue
        top = nmax // i
        for j in range(1, top + 1):
            bj = b[j]
            if bj:
                out[i * j] = out[i * j] + ai * bj
    return out


def dilate(list a, Py_ssize_t l, Py_ssize_t nmax):
    """Index dilation n -> l*n, the coefficient action of s -> l^(-s)."""
    cdef Py_ssize_t n
    cdef list out = [0] * (nmax + 1)
    for n in range(1, nmax // l + 1):
        out[l * n] = a[n]
    return out


def scaled_sum(list arrays, list scalars, Py_ssize_t nmax):
    """sum_k scalars[k] * arrays[k], elementwise over indices 1..nmax."""
    cdef Py_ssize_t n, k
    cdef list out = [0] * (nmax + 1)
    cdef list arr
    cdef object s, an
    for k in range(len(arrays)):
        s = scalars[k]
        if not s:
            continue
        arr = arrays[k]
        for n in range(1, nmax + 1):
            an = arr[n]
            if an:
                out[n] = out[n] + s * an
    return out


def convolve_packed(a_mat, b_mat, pair_powers, Py_ssize_t nmax):
    """Convolution of packed int64 coordinate matrices.

    c[n] = sum_{ij = n} a[i] * b[j] with the cyclotomic product expanded
    through pair_powers[i_exp + j_exp] = coordinates of the basis-monomial
    product.  The caller guarantees int64 safety.
    """
    cdef long long[:, :] A = a_mat
    cdef long long[:, :] B = b_mat
    cdef long long[:, :] P = pair_powers
    cdef Py_ssize_t phi = A.shape[1]
    out_arr = np.zeros((nmax + 1, phi), dtype=np.int64)
    cdef long long[:, :] C = out_arr
    cdef Py_ssize_t i, j, t, ia, jb, kk, idx
    cdef long long av, bv, w
    cdef bint any_a
    for i in range(1, nmax + 1):
        any_a = False
        for t in range(phi):
            if A[i, t] != 0:
                any_a = True
                break
        if not any_a:
            continue
        for j in range(1, nmax // i + 1):
            idx = i * j
            for jb in range(phi):
                bv = B[j, jb]
                if bv == 0:
                    continue
                for ia in range(phi):
                    av = A[i, ia]
                    if av == 0:
                        continue
                    w = av * bv
                    for kk in range(phi):
                        C[idx, kk] += w * P[ia + jb, kk]
    return out_arr
