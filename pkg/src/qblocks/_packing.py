"""Packed integer-coordinate representation of cyclotomic coefficient arrays.

When every scalar of a series is an integer or a CycloNumber with
integer coordinates at a small common order e, the array packs into an
int64 matrix (index, power-basis coordinate).  Products of basis
monomials zeta_e^i zeta_e^j reduce through a precomputed integer matrix,
so convolution becomes pure int64 arithmetic: exact as long as it
provably stays below 2^62, which the caller checks via the L1 bounds
returned here.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm

import numpy as np

from .arith import euler_phi
from .cyclo import CycloNumber, _basis_vector

MAX_PACK_ORDER = 30
MAX_PACK_PHI = 8
_INT64_SAFE = 2**62


@lru_cache(maxsize=None)
def pair_power_matrix(e: int) -> np.ndarray:
    """Row i+j holds the canonical coordinates of zeta_e^(i+j), int64."""
    phi = euler_phi(e)
    rows = [_basis_vector(e, (i % e)) for i in range(2 * phi - 1)]
    return np.array(rows, dtype=np.int64)


@lru_cache(maxsize=None)
def basis_matrix(e: int) -> np.ndarray:
    """Row j holds the canonical coordinates of zeta_e^j for 0 <= j < e."""
    return np.array([_basis_vector(e, j) for j in range(e)], dtype=np.int64)


def common_order(raw: list) -> int | None:
    """lcm of scalar orders if packable (ints and integer-coordinate cyclos)."""
    kinds = set(map(type, raw))
    kinds.discard(int)
    e = 1
    if CycloNumber in kinds:
        kinds.discard(CycloNumber)
        for o in {x.order for x in raw if type(x) is CycloNumber}:
            e = lcm(e, o)
            if e > MAX_PACK_ORDER or euler_phi(e) > MAX_PACK_PHI:
                return None
    if Fraction in kinds:
        kinds.discard(Fraction)
        if any(x.denominator != 1 for x in raw if type(x) is Fraction):
            return None
    if kinds and not all(issubclass(k, (int, Fraction, CycloNumber)) for k in kinds):
        return None
    if kinds:  # int/Fraction/Cyclo subclasses: fall back to the generic scan
        for x in raw:
            if isinstance(x, CycloNumber):
                e = lcm(e, x.order)
                if e > MAX_PACK_ORDER or euler_phi(e) > MAX_PACK_PHI:
                    return None
            elif isinstance(x, Fraction) and x.denominator != 1:
                return None
    return e


@lru_cache(maxsize=None)
def _embedding_matrix(order: int, e: int) -> np.ndarray:
    """(phi(order), phi(e)) int64 basis-change matrix for order | e."""
    from .cyclo import _embedding_rows

    return np.array(_embedding_rows(order, e), dtype=np.int64)


def pack_series(raw: list, nmax: int, e: int) -> np.ndarray | None:
    """(nmax+1, phi(e)) int64 coordinates, or None on fractional coordinates.

    Values at lower orders are grouped and embedded with one basis-change
    matrix product per order.
    """
    phi = euler_phi(e)
    out = np.zeros((nmax + 1, phi), dtype=np.int64)
    by_order: dict[int, tuple[list[int], list[tuple]]] = {}
    for n in range(1, nmax + 1):
        x = raw[n]
        tx = type(x)
        if tx is int:
            if x:
                out[n, 0] = x
            continue
        if tx is Fraction:
            if x.denominator != 1:
                return None
            out[n, 0] = x.numerator
            continue
        coeffs = x.coeffs
        if not all(type(c) is int for c in coeffs):
            clean = []
            for c in coeffs:
                if type(c) is Fraction:
                    if c.denominator != 1:
                        return None
                    clean.append(c.numerator)
                else:
                    clean.append(int(c))
            coeffs = tuple(clean)
        idxs, rows = by_order.setdefault(x.order, ([], []))
        idxs.append(n)
        rows.append(coeffs)
    for order, (idxs, rows) in by_order.items():
        block = np.array(rows, dtype=np.int64)
        if order != e:
            block = block @ _embedding_matrix(order, e)
        out[idxs] = block
    return out


def unpack_series(mat: np.ndarray, e: int) -> list:
    """Back to scalars: ints where the value is rational, CycloNumbers else."""
    size = mat.shape[0]
    out: list = [0] * size
    rows = mat.tolist()
    if e == 1:
        for n in np.nonzero(mat[:, 0])[0].tolist():
            out[n] = rows[n][0]
        return out
    irrational = mat[:, 1:].any(axis=1)
    for n in np.nonzero(irrational)[0].tolist():
        out[n] = CycloNumber(e, tuple(rows[n]))
    for n in np.nonzero((mat[:, 0] != 0) & ~irrational)[0].tolist():
        out[n] = rows[n][0]
    return out


def l1_bound(mat: np.ndarray) -> int:
    """max_n sum_i |mat[n, i]| as a python int."""
    if mat.shape[0] <= 1:
        return 0
    return int(np.abs(mat[1:]).sum(axis=1).max(initial=0))


@lru_cache(maxsize=8)
def max_divisor_count(nmax: int) -> int:
    counts = np.zeros(nmax + 1, dtype=np.int64)
    for m in range(1, nmax + 1):
        counts[m::m] += 1
    return int(counts.max(initial=1))


def packed_product_safe(a_mat: np.ndarray, b_mat: np.ndarray, e: int,
                        nmax: int) -> bool:
    pmax = int(np.abs(pair_power_matrix(e)).max(initial=1))
    bound = l1_bound(a_mat) * l1_bound(b_mat) * pmax * max_divisor_count(nmax)
    return bound < _INT64_SAFE
