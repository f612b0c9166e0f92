"""Pure-Python twins of the compiled hot kernels.

Coefficient arrays are lists of length nmax + 1 whose entry 0 is unused;
entries are exact scalars (CycloNumber, int or Fraction).  The packed
variant works on int64 coordinate matrices instead.  The compiled module
`qblocks._kernels` implements the same functions with C-level loop
management; `qblocks._backend` picks whichever is available.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def dirichlet_convolve(a: list, b: list, nmax: int) -> list:
    """c[n] = sum_{ij = n} a[i] * b[j] for 1 <= n <= nmax."""
    out = [0] * (nmax + 1)
    for i in range(1, nmax + 1):
        ai = a[i]
        if not ai:
            continue
        top = nmax // i
        for j in range(1, top + 1):
            bj = b[j]
            if bj:
                idx = i * j
                out[idx] = out[idx] + ai * bj
    return out


def dilate(a: list, l: int, nmax: int) -> list:
    """Index dilation n -> l*n, the coefficient action of s -> l^(-s)."""
    out = [0] * (nmax + 1)
    for n in range(1, nmax // l + 1):
        out[l * n] = a[n]
    return out


def scaled_sum(arrays: list[list], scalars: list, nmax: int) -> list:
    """sum_k scalars[k] * arrays[k], elementwise over indices 1..nmax."""
    out = [0] * (nmax + 1)
    for arr, s in zip(arrays, scalars):
        if not s:
            continue
        for n in range(1, nmax + 1):
            an = arr[n]
            if an:
                out[n] = out[n] + s * an
    return out


def convolve_packed(a_mat, b_mat, pair_powers, nmax: int):
    """Convolution of packed int64 coordinate matrices.

    c[n] = sum_{ij = n} a[i] * b[j] with the cyclotomic product expanded
    through pair_powers[i_exp + j_exp] = coordinates of the basis-monomial
    product.  The caller guarantees int64 safety.
    """
    phi = a_mat.shape[1]
    out = np.zeros((nmax + 1, phi), dtype=np.int64)
    # stack[i_exp] maps a b-coordinate vector to the contribution matrix
    stack = np.stack([pair_powers[i : i + phi] for i in range(phi)])
    nonzero_a = [i for i in range(1, nmax + 1) if a_mat[i].any()]
    for i in nonzero_a:
        top = nmax // i
        bs = b_mat[1 : top + 1]
        # (phi_b, phi_out) projection for this a-row
        proj = np.tensordot(a_mat[i], stack, axes=(0, 0))
        contrib = bs @ proj
        out[i : i * top + 1 : i] += contrib
    return out
