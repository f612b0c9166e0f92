"""Exact arithmetic in cyclotomic fields.

A value of order m lives in Q(zeta_m) and is stored as its coordinate
vector over the power basis {zeta_m^0, ..., zeta_m^(phi(m)-1)}, i.e.
reduced modulo the m-th cyclotomic polynomial.  Coordinates are exact
rationals (python ints or Fractions).  Mixed-order arithmetic promotes
both operands to the lcm order, so results of a + b and a * b are
represented at order lcm(order(a), order(b)).
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm, pi

from .arith import divisors, euler_phi

Rational = int | Fraction


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Ascending integer coefficients of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("order must be >= 1")
    # Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, by exact division.
    num = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m):
        if d == m:
            continue
        num = _polydiv_exact(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    """Quotient of an exact integer polynomial division (monic divisor)."""
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            out[i - dn] = c
            for j, dj in enumerate(den):
                num[i - dn + j] -= c * dj
    if any(num):
        raise ArithmeticError("division was not exact")
    return out


@lru_cache(maxsize=None)
def _reduction_rows(m: int) -> tuple[tuple[int, ...], ...]:
    """Row j holds the power-basis coordinates of zeta_m^(phi(m)+j)."""
    n = euler_phi(m)
    phi = cyclotomic_poly(m)
    rows = []
    cur = [-phi[i] for i in range(n)]  # zeta^n (monic reduction)
    rows.append(tuple(cur))
    for _ in range(n + 1, m):
        top = cur[n - 1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(n):
                cur[i] -= top * phi[i]
        rows.append(tuple(cur))
    return tuple(rows)


@lru_cache(maxsize=None)
def _basis_vector(m: int, j: int) -> tuple[Rational, ...]:
    """Power-basis coordinates of zeta_m^j for 0 <= j < m."""
    n = euler_phi(m)
    if j < n:
        return tuple(1 if i == j else 0 for i in range(n))
    return _reduction_rows(m)[j - n]


@lru_cache(maxsize=None)
def _embedding_rows(m: int, big: int) -> tuple[tuple[Rational, ...], ...]:
    """Coordinates at order `big` of the order-m basis elements (m | big)."""
    step = big // m
    return tuple(_basis_vector(big, (j * step) % big) for j in range(euler_phi(m)))


@lru_cache(maxsize=None)
def _conjugation_rows(m: int) -> tuple[tuple[Rational, ...], ...]:
    """Coordinates of conj(zeta_m^j) = zeta_m^(m-j) for basis exponents j."""
    return tuple(_basis_vector(m, (m - j) % m) for j in range(euler_phi(m)))


@lru_cache(maxsize=None)
def _embedded_roots(m: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(2j * pi * j / m) for j in range(euler_phi(m)))


class CycloNumber:
    """An exact element of a cyclotomic field Q(zeta_m)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != euler_phi(order):
            raise ValueError(
                f"order {order} needs {euler_phi(order)} coordinates, got {len(coeffs)}"
            )
        self.order = order
        self.coeffs = coeffs

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rational(q: Rational) -> "CycloNumber":
        if isinstance(q, Fraction) and q.denominator == 1:
            q = q.numerator
        return CycloNumber(1, (q,))

    @staticmethod
    def zero() -> "CycloNumber":
        return _ZERO

    @staticmethod
    def one() -> "CycloNumber":
        return _ONE

    @staticmethod
    def root_of_unity(m: int, j: int) -> "CycloNumber":
        """zeta_m^j in canonical form at order m."""
        return _root_of_unity(m, j % m)

    # -- structure ----------------------------------------------------

    def promoted(self, big: int) -> "CycloNumber":
        """The same value represented at order `big` (order | big)."""
        if big == self.order:
            return self
        if big % self.order:
            raise ValueError("can only promote to a multiple of the order")
        rows = _embedding_rows(self.order, big)
        acc = [0] * euler_phi(big)
        for c, row in zip(self.coeffs, rows):
            if c:
                for i, r in enumerate(row):
                    if r:
                        acc[i] += c * r
        return CycloNumber(big, acc)

    def as_rational(self) -> Rational | None:
        """The value as int/Fraction if it is rational, else None."""
        if any(self.coeffs[1:]):
            return None
        c = self.coeffs[0]
        if isinstance(c, Fraction) and c.denominator == 1:
            return c.numerator
        return c

    def conjugate(self) -> "CycloNumber":
        if self.order == 1:
            return self
        rows = _conjugation_rows(self.order)
        acc = [0] * len(self.coeffs)
        for c, row in zip(self.coeffs, rows):
            if c:
                for i, r in enumerate(row):
                    if r:
                        acc[i] += c * r
        return CycloNumber(self.order, acc)

    def to_complex(self) -> complex:
        roots = _embedded_roots(self.order)
        return complex(sum(float(c) * r for c, r in zip(self.coeffs, roots)))

    # -- arithmetic ---------------------------------------------------

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            r = self.as_rational()
            return r is not None and r == other
        if not isinstance(other, CycloNumber):
            return NotImplemented
        if self.order == other.order:
            return self.coeffs == other.coeffs
        big = lcm(self.order, other.order)
        return self.promoted(big) == other.promoted(big)

    __hash__ = None  # equal values at different orders would hash apart

    def __neg__(self) -> "CycloNumber":
        return CycloNumber(self.order, tuple(-c for c in self.coeffs))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self
            coeffs = (self.coeffs[0] + other,) + self.coeffs[1:]
            return CycloNumber(self.order, coeffs)
        if not isinstance(other, CycloNumber):
            return NotImplemented
        a, b = self, other
        if a.order != b.order:
            big = lcm(a.order, b.order)
            a, b = a.promoted(big), b.promoted(big)
        return CycloNumber(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            return self + (-other if isinstance(other, CycloNumber) else -other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scaled(other)
        if not isinstance(other, CycloNumber):
            return NotImplemented
        a, b = self, other
        if a.order == 1:
            return b._scaled(a.coeffs[0])
        if b.order == 1:
            return a._scaled(b.coeffs[0])
        if a.order != b.order:
            big = lcm(a.order, b.order)
            a, b = a.promoted(big), b.promoted(big)
        return a._mul_same_order(b)

    __rmul__ = __mul__

    def _scaled(self, q: Rational) -> "CycloNumber":
        if not q:
            return _ZERO.promoted(self.order) if self.order != 1 else _ZERO
        if q == 1:
            return self
        return CycloNumber(self.order, tuple(c * q for c in self.coeffs))

    def _mul_same_order(self, other: "CycloNumber") -> "CycloNumber":
        m = self.order
        n = len(self.coeffs)
        acc = [0] * (2 * n - 1)
        bc = other.coeffs
        for i, ai in enumerate(self.coeffs):
            if ai:
                for k, bk in enumerate(bc):
                    if bk:
                        acc[i + k] += ai * bk
        out = list(acc[:n])
        rows = None
        for e in range(n, 2 * n - 1):
            c = acc[e]
            if c:
                if rows is None:
                    rows = _reduction_rows(m)
                row = rows[(e % m) - n] if e % m >= n else None
                if row is None:  # e >= m wrapped into the basis range
                    out[e % m] += c
                else:
                    for i, r in enumerate(row):
                        if r:
                            out[i] += c * r
        return CycloNumber(m, out)

    def __pow__(self, k: int) -> "CycloNumber":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = _ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "CycloNumber":
        """Multiplicative inverse, by solving the linear system over Q."""
        if not self:
            raise ZeroDivisionError("inverse of zero cyclotomic value")
        r = self.as_rational()
        if r is not None:
            return CycloNumber(self.order, (Fraction(1, 1) / r,) + (0,) * (len(self.coeffs) - 1))
        m, n = self.order, len(self.coeffs)
        # columns: coordinates of self * zeta^j
        cols = []
        cur = self
        for _ in range(n):
            cols.append(cur.coeffs)
            cur = cur * _root_of_unity(m, 1)
        mat = [[Fraction(cols[j][i]) for j in range(n)] for i in range(n)]
        rhs = [Fraction(1 if i == 0 else 0) for i in range(n)]
        sol = _solve_fraction_system(mat, rhs)
        return CycloNumber(m, sol)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError
            return self._scaled(Fraction(1, 1) / other)
        if isinstance(other, CycloNumber):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse()._scaled(other)
        return NotImplemented

    def __repr__(self) -> str:
        r = self.as_rational()
        if r is not None:
            return f"CycloNumber({r!r})"
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*z{self.order}^{j}" if j else f"{c}")
        return "CycloNumber(" + " + ".join(terms) + ")"


def _solve_fraction_system(mat: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gaussian elimination with exact Fractions; mat is modified in place."""
    n = len(mat)
    for col in range(n):
        piv = next((r for r in range(col, n) if mat[r][col]), None)
        if piv is None:
            raise ArithmeticError("singular system")
        mat[col], mat[piv] = mat[piv], mat[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        inv = 1 / mat[col][col]
        mat[col] = [x * inv for x in mat[col]]
        rhs[col] *= inv
        for r in range(n):
            if r != col and mat[r][col]:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
                rhs[r] -= f * rhs[col]
    return rhs


@lru_cache(maxsize=None)
def _root_of_unity(m: int, j: int) -> CycloNumber:
    return CycloNumber(m, _basis_vector(m, j))


_ZERO = CycloNumber(1, (0,))
_ONE = CycloNumber(1, (1,))


def as_cyclo(value) -> CycloNumber:
    """Coerce ints and Fractions to CycloNumber; pass CycloNumbers through."""
    if isinstance(value, CycloNumber):
        return value
    if isinstance(value, (int, Fraction)):
        return CycloNumber.from_rational(value)
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact scalar")
