"""Truncated q-expansions: theta constructors, V_l, T(p^2), coefficient blocks.

Coefficients are exact scalars indexed by the q-power n.  Weight is
tracked doubled (weight_twice = 2k for integral weight k, 2k + 1 for
weight k + 1/2); level and nebentypus are advisory tags that the
arithmetic never enforces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .arith import is_prime, is_squarefree
from .chars import DirichletCharacter, kronecker, principal_character, twist_psi_d
from .cyclo import CycloNumber, as_cyclo


class QExpansion:
    """A q-series known through q^(precision-1)."""

    __slots__ = ("precision", "coeffs", "weight_twice", "level", "character",
                 "cuspidal", "shimura_cuspidal")

    def __init__(self, precision: int, coeffs, weight_twice: int, level: int = 1,
                 character: DirichletCharacter | None = None,
                 cuspidal: bool = False, shimura_cuspidal: bool = False):
        coeffs = list(coeffs)
        if len(coeffs) != precision:
            raise ValueError(f"expected {precision} coefficients, got {len(coeffs)}")
        if cuspidal and coeffs and coeffs[0]:
            raise ValueError("cuspidal expansion with nonzero constant term")
        self.precision = precision
        self.coeffs = coeffs
        self.weight_twice = weight_twice
        self.level = level
        self.character = character if character is not None else principal_character(1)
        self.cuspidal = cuspidal
        # User-asserted tag: the Shimura image is a cusp form.  Nothing in
        # this package verifies it; it is carried as metadata only.
        self.shimura_cuspidal = shimura_cuspidal

    def coeff(self, n: int):
        if not 0 <= n < self.precision:
            raise IndexError(f"coefficient {n} beyond precision {self.precision}")
        return self.coeffs[n]

    def is_half_integral(self) -> bool:
        return self.weight_twice % 2 == 1

    def __add__(self, other: "QExpansion") -> "QExpansion":
        if not isinstance(other, QExpansion):
            return NotImplemented
        if self.weight_twice != other.weight_twice:
            raise ValueError("cannot add expansions of different weights")
        prec = min(self.precision, other.precision)
        coeffs = [self.coeffs[n] + other.coeffs[n] for n in range(prec)]
        return QExpansion(prec, coeffs, self.weight_twice,
                          level=max(self.level, other.level),
                          character=self.character,
                          cuspidal=self.cuspidal and other.cuspidal)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QExpansion):
            return NotImplemented
        return (
            self.precision == other.precision
            and self.weight_twice == other.weight_twice
            and all(as_cyclo(a) == as_cyclo(b) for a, b in zip(self.coeffs, other.coeffs))
        )

    __hash__ = None

    def __repr__(self) -> str:
        terms = []
        for n, c in enumerate(self.coeffs[:40]):
            if c:
                terms.append(f"{c!r}*q^{n}")
            if len(terms) >= 6:
                break
        body = " + ".join(terms) if terms else "0"
        return (f"QExpansion({body} + O(q^{self.precision}), "
                f"weight_twice={self.weight_twice})")


@dataclass
class CoefficientBlock:
    """The scaled square-class sequence a(d n^2) / n^i for n = 1..length."""

    d: int
    scale_exponent: int
    values: list
    source_precision: int

    def __post_init__(self):
        if not is_squarefree(self.d):
            raise ValueError(f"d = {self.d} must be square-free")
        if self.scale_exponent < 0:
            raise ValueError("scale exponent must be >= 0")

    def __len__(self) -> int:
        return len(self.values)

    def value(self, n: int):
        return self.values[n - 1]

    def first_period_break(self, l: int) -> int | None:
        """Smallest index n with values[n-1] != values[n-1+l], if any."""
        vals = self.values
        for n in range(len(vals) - l):
            a, b = vals[n], vals[n + l]
            if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
                if a != b:
                    return n + 1
            elif as_cyclo(a) != as_cyclo(b):
                return n + 1
        return None

    def is_periodic(self, l: int) -> bool:
        return self.first_period_break(l) is None


def theta_series(psi: DirichletCharacter, d: int, weight3half: bool,
                 precision: int) -> QExpansion:
    """Theta expansion sum_n psi(n) q^(d n^2), n-weighted for weight 3/2.

    Weight 1/2 has coefficient psi(n) at d n^2; the weight 3/2 variant
    carries psi(n) * n instead.  All other coefficients vanish.
    """
    if not is_squarefree(d):
        raise ValueError(f"d = {d} must be square-free")
    if precision < 1:
        raise ValueError("precision must be >= 1")
    coeffs: list = [0] * precision
    n = 1
    while d * n * n < precision:
        v = psi.eval(n)
        if v:
            coeffs[d * n * n] = v * n if weight3half else v
        n += 1
    k = 1 if weight3half else 0
    character = twist_psi_d(psi, k, d) if weight3half else psi
    level = 4 * d * psi.modulus**2
    return QExpansion(precision, coeffs, weight_twice=3 if weight3half else 1,
                      level=level, character=character, cuspidal=True)


def shift_V(f: QExpansion, l: int) -> QExpansion:
    """The shift f(z) -> f(lz): coefficient at l*n is the old one at n."""
    if l < 1:
        raise ValueError("shift index must be >= 1")
    if l == 1:
        return f
    new_prec = l * (f.precision - 1) + 1
    coeffs: list = [0] * new_prec
    for n, c in enumerate(f.coeffs):
        if c:
            coeffs[l * n] = c
    return QExpansion(new_prec, coeffs, f.weight_twice, level=f.level * l,
                      character=f.character, cuspidal=f.cuspidal)


def hecke_Tp2(f: QExpansion, p: int, psi: DirichletCharacter) -> QExpansion:
    """T(p^2) on a half-integral expansion of weight k + 1/2, nebentypus psi.

    b(n) = a(p^2 n) + psi(p) ((-1)^k n / p) p^(k-1) a(n)
                    + psi(p^2) p^(2k-1) a(n / p^2),
    with the last term only when p^2 | n.  For k = 0 the middle and last
    terms carry p^(-1) and stay exact as Fractions.
    """
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if not f.is_half_integral():
        raise ValueError("T(p^2) in this form applies to half-integral weight only")
    k = (f.weight_twice - 1) // 2
    new_prec = (f.precision - 1) // (p * p) + 1
    psi_p = psi.eval(p)
    psi_p2 = psi.eval(p * p)
    pk1 = p ** (k - 1) if k >= 1 else Fraction(1, p)
    p2k1 = p ** (2 * k - 1) if 2 * k >= 1 else Fraction(1, p)
    sign_unit = (-1) ** k
    coeffs: list = [0] * new_prec
    for n in range(1, new_prec):
        b = f.coeffs[p * p * n]
        if psi_p:
            eps = kronecker(sign_unit * n, p)
            if eps:
                b = b + psi_p * (eps * pk1) * f.coeffs[n]
        if n % (p * p) == 0 and psi_p2:
            b = b + psi_p2 * p2k1 * f.coeffs[n // (p * p)]
        coeffs[n] = b
    return QExpansion(new_prec, coeffs, f.weight_twice, level=f.level,
                      character=f.character, cuspidal=f.cuspidal)


def tp2_eigenvalue(f: QExpansion, p: int, psi: DirichletCharacter):
    """Eigenvalue lambda with T(p^2) f = lambda f on the computable range.

    Solves lambda from the first nonzero coefficient and verifies all
    others; returns None when f is not proportional to its image.
    """
    g = hecke_Tp2(f, p, psi)
    lam = None
    for n in range(1, g.precision):
        a = as_cyclo(f.coeffs[n])
        b = as_cyclo(g.coeffs[n])
        if lam is None:
            if a:
                lam = b / a
            elif b:
                return None
        elif b != lam * a:
            return None
    return lam


def block(f: QExpansion, d: int, i: int = 0) -> CoefficientBlock:
    """Extract the block a(d n^2) / n^i over the full computable range."""
    if not is_squarefree(d):
        raise ValueError(f"d = {d} must be square-free")
    if i < 0:
        raise ValueError("scale exponent must be >= 0")
    length = isqrt((f.precision - 1) // d) if f.precision > d else 0
    values = []
    for n in range(1, length + 1):
        c = f.coeffs[d * n * n]
        if i:
            c = as_cyclo(c) / n**i if not isinstance(c, (int, Fraction)) else Fraction(c, n**i)
        values.append(c)
    return CoefficientBlock(d=d, scale_exponent=i, values=values,
                            source_precision=f.precision)
