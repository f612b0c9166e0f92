"""Dirichlet characters with exact root-of-unity values.

The unit group (Z/MZ)^x is decomposed through CRT into cyclic pieces:
odd prime powers use the smallest primitive root, powers of two >= 8 use
the {-1, 5} generator pair.  A character is stored as its exponent
vector on those generators, so evaluation is a table lookup plus
exponent arithmetic and every value is an exact root of unity.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from math import gcd, lcm

from .arith import (
    bernoulli_poly,
    euler_phi,
    factorize,
    is_squarefree,
    primitive_root,
    valuation,
)
from .cyclo import CycloNumber


class OddCharacterWarning(UserWarning):
    """Twisting data built from an odd base character (flagged, not refused)."""


def kronecker(d: int, m: int) -> int:
    """Kronecker symbol (d/m), extended with the standard conventions.

    Multiplicative in m, with (d/2) determined by d mod 8, (d/-1) the
    sign character of d, and (d/0) nonzero only for d = +-1.
    """
    if d == 0 and m == 0:
        raise ValueError("kronecker(0, 0) is undefined")
    if m == 0:
        return 1 if d in (1, -1) else 0
    sign = 1
    if m < 0:
        m = -m
        if d < 0:
            sign = -1
    if m % 2 == 0:
        if d % 2 == 0:
            return 0
        t = 0
        while m % 2 == 0:
            m //= 2
            t += 1
        if t % 2 == 1 and d % 8 in (3, 5):
            sign = -sign
    # now m odd >= 1; Jacobi part via reciprocity
    d %= m
    while d:
        while d % 2 == 0:
            d //= 2
            if m % 8 in (3, 5):
                sign = -sign
        d, m = m, d
        if d % 4 == 3 and m % 4 == 3:
            sign = -sign
        d %= m
    return sign if m == 1 else 0


class _UnitGroup:
    """Cached CRT structure of (Z/MZ)^x with full discrete-log tables."""

    __slots__ = ("modulus", "generators", "orders", "exponent", "dlog")

    def __init__(self, modulus: int):
        self.modulus = modulus
        gens: list[int] = []
        orders: list[int] = []
        for p, e in factorize(modulus) if modulus > 1 else ():
            q = p**e
            rest = modulus // q
            if p == 2:
                if e == 1:
                    continue
                if e == 2:
                    gens.append(self._crt_lift(q - 1, q, rest))
                    orders.append(2)
                else:
                    gens.append(self._crt_lift(q - 1, q, rest))
                    orders.append(2)
                    gens.append(self._crt_lift(5, q, rest))
                    orders.append(2 ** (e - 2))
            else:
                gens.append(self._crt_lift(primitive_root(q), q, rest))
                orders.append(euler_phi(q))
        self.generators = tuple(gens)
        self.orders = tuple(orders)
        self.exponent = lcm(*orders) if orders else 1
        table: dict[int, tuple[int, ...]] = {}
        for ks in product(*(range(s) for s in orders)):
            m = 1
            for g, k in zip(gens, ks):
                m = m * pow(g, k, modulus) % modulus
            table[m % modulus] = ks
        self.dlog = table

    def _crt_lift(self, residue: int, q: int, rest: int) -> int:
        """Element of (Z/MZ)^x that is `residue` mod q and 1 mod M/q."""
        if rest == 1:
            return residue % self.modulus
        inv_q = pow(q, -1, rest)
        x = (residue + q * ((1 - residue) * inv_q % rest)) % self.modulus
        return x


@lru_cache(maxsize=None)
def _unit_group(modulus: int) -> _UnitGroup:
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    return _UnitGroup(modulus)


@dataclass(frozen=True)
class DirichletCharacter:
    """A Dirichlet character mod `modulus`, exact on every integer.

    `exponent_vector[i]` is the exponent v_i with chi(g_i) = zeta_{s_i}^{v_i}
    for the i-th CRT generator g_i of component order s_i.
    """

    modulus: int
    exponent_vector: tuple[int, ...]

    def __post_init__(self):
        group = _unit_group(self.modulus)
        if len(self.exponent_vector) != len(group.orders):
            raise ValueError("exponent vector does not match the unit group structure")
        if any(not 0 <= v < s for v, s in zip(self.exponent_vector, group.orders)):
            raise ValueError("exponents must satisfy 0 <= v_i < s_i")

    # -- basic structure ----------------------------------------------

    @property
    def _group(self) -> _UnitGroup:
        return _unit_group(self.modulus)

    @cached_property
    def order(self) -> int:
        """Multiplicative order of the character."""
        comps = [s // gcd(s, v) for v, s in zip(self.exponent_vector, self._group.orders)]
        return lcm(*comps) if comps else 1

    @cached_property
    def _log_table(self) -> dict[int, int]:
        """residue -> j with chi(residue) = zeta_order^j, coprime residues only."""
        group = self._group
        e, o = group.exponent, self.order
        table = {}
        for m, ks in group.dlog.items():
            t = 0
            for v, k, s in zip(self.exponent_vector, ks, group.orders):
                t += v * k * (e // s)
            table[m] = (t % e) * o // e
        return table

    def log(self, m: int) -> int | None:
        """Exponent j with chi(m) = zeta_order^j, or None when gcd(m, M) > 1."""
        return self._log_table.get(m % self.modulus)

    def eval(self, m: int) -> CycloNumber:
        """Exact character value at m (0 when m shares a factor with M)."""
        j = self._log_table.get(m % self.modulus)
        if j is None:
            return CycloNumber.zero()
        return CycloNumber.root_of_unity(self.order, j)

    __call__ = eval

    def eval_complex(self, m: int) -> complex:
        j = self._log_table.get(m % self.modulus)
        if j is None:
            return 0j
        return CycloNumber.root_of_unity(self.order, j).to_complex()

    @cached_property
    def parity(self) -> str:
        """'even' when chi(-1) = 1, else 'odd'."""
        j = self.log(self.modulus - 1)
        return "even" if j == 0 or self.modulus == 1 else "odd"

    def is_even(self) -> bool:
        return self.parity == "even"

    def is_principal(self) -> bool:
        return all(v == 0 for v in self.exponent_vector)

    # -- conductor and induction ---------------------------------------

    @cached_property
    def conductor(self) -> int:
        fac = factorize(self.modulus) if self.modulus > 1 else ()
        cond = 1
        idx = 0
        for p, e in fac:
            if p == 2:
                if e == 1:
                    continue
                if e == 2:
                    v = self.exponent_vector[idx]
                    idx += 1
                    cond *= 4 if v else 1
                else:
                    v_minus = self.exponent_vector[idx]
                    v_five = self.exponent_vector[idx + 1]
                    idx += 2
                    s_five = 2 ** (e - 2)
                    t = s_five // gcd(s_five, v_five)
                    if t > 1:
                        cond *= 4 * t
                    elif v_minus:
                        cond *= 4
            else:
                s = euler_phi(p**e)
                v = self.exponent_vector[idx]
                idx += 1
                t = s // gcd(s, v)
                if t > 1:
                    cond *= p ** (1 + valuation(t, p))
        return cond

    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def restrict_to_conductor(self) -> "DirichletCharacter":
        """The primitive character mod conductor inducing this one."""
        return self.induced_to(self.conductor)

    def induced_to(self, new_modulus: int) -> "DirichletCharacter":
        """The character mod new_modulus agreeing with this one on units.

        Requires conductor | new_modulus, and the values at m coprime to
        both moduli agree exactly.
        """
        if new_modulus % self.conductor:
            raise ValueError(
                f"modulus {new_modulus} is not a multiple of the conductor {self.conductor}"
            )
        return _character_from_values(
            new_modulus, lambda m: self._value_data_on_lift(m, new_modulus)
        )

    def _value_data_on_lift(self, m: int, new_modulus: int) -> tuple[int, int]:
        """(order, exponent) of the value at a lift of m coprime to modulus."""
        m %= new_modulus
        while gcd(m, self.modulus) != 1:
            m += new_modulus
        return self.order, self._log_table[m % self.modulus]

    # -- algebra on characters ------------------------------------------

    def conjugate(self) -> "DirichletCharacter":
        group = self._group
        vec = tuple((-v) % s for v, s in zip(self.exponent_vector, group.orders))
        return DirichletCharacter(self.modulus, vec)

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        big = lcm(self.modulus, other.modulus)

        def value_data(m: int) -> tuple[int, int]:
            o1, j1 = self._value_data_on_lift(m, big)
            o2, j2 = other._value_data_on_lift(m, big)
            o = lcm(o1, o2)
            return o, (j1 * (o // o1) + j2 * (o // o2)) % o

        return _character_from_values(big, value_data)

    def __repr__(self) -> str:
        return f"DirichletCharacter(modulus={self.modulus}, exponent_vector={self.exponent_vector})"

    def dump_line(self) -> str:
        """Debug format: `M;exponent_vector;conductor;parity`."""
        vec = ",".join(str(v) for v in self.exponent_vector)
        return f"{self.modulus};{vec};{self.conductor};{self.parity}"


def _character_from_values(modulus: int, value_data) -> DirichletCharacter:
    """Build a character mod `modulus` from value data on the generators.

    `value_data(g)` must return (order, exponent) meaning zeta_order^exponent.
    """
    group = _unit_group(modulus)
    vec = []
    for g, s in zip(group.generators, group.orders):
        o, j = value_data(g)
        if (j * s) % o:
            raise ValueError("value order does not divide the generator order")
        vec.append((j * s // o) % s)
    return DirichletCharacter(modulus, tuple(vec))


def principal_character(modulus: int = 1) -> DirichletCharacter:
    group = _unit_group(modulus)
    return DirichletCharacter(modulus, (0,) * len(group.orders))


def enumerate_characters(modulus: int) -> list[DirichletCharacter]:
    """All phi(M) characters mod M, principal first, in lexicographic order."""
    group = _unit_group(modulus)
    return [
        DirichletCharacter(modulus, ks)
        for ks in product(*(range(s) for s in group.orders))
    ]


def character_by_index(modulus: int, index: int) -> DirichletCharacter:
    """The index-th character in the deterministic enumeration."""
    chars = enumerate_characters(modulus)
    if not 0 <= index < len(chars):
        raise ValueError(f"character index {index} out of range for modulus {modulus}")
    return chars[index]


def twist_psi_d(psi: DirichletCharacter, k: int, d: int) -> DirichletCharacter:
    """The quadratic-twist character m -> psi(m) (-1/m)^k (d/m).

    Returned at modulus lcm(d*N, conductor); when 4 | N this is exactly
    d*N.  An odd psi is flagged with OddCharacterWarning and processed
    anyway.
    """
    if not is_squarefree(d):
        raise ValueError(f"d = {d} must be square-free")
    if not psi.is_even():
        warnings.warn(
            "twist built from an odd base character; the associated"
            " half-integral space is trivial",
            OddCharacterWarning,
            stacklevel=2,
        )
    n_mod = psi.modulus
    big = lcm(n_mod, 4 * d)

    def value_data(m: int) -> tuple[int, int]:
        o1, j1 = psi._value_data_on_lift(m, big)
        sym = kronecker(-1, m) ** k * kronecker(d, m)
        o = lcm(o1, 2)
        j = (j1 * (o // o1) + (0 if sym == 1 else o // 2)) % o
        return o, j

    chi_big = _character_from_values(big, value_data)
    chi0 = chi_big.restrict_to_conductor()
    target = lcm(d * n_mod, chi0.modulus)
    return chi0.induced_to(target)


def generalized_bernoulli(chi: DirichletCharacter, k: int) -> CycloNumber:
    """B_{k,chi} = f^(k-1) * sum_{a mod f} chi(a) B_k(a/f), at f = modulus.

    The sum runs over a = 0..f-1, which matches the a = 1..f form except
    for the principal character mod 1 at k = 1, where it yields B_1 = -1/2.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    f = chi.modulus
    acc = CycloNumber.zero()
    for a in range(f):
        value = chi.eval(a)
        if value:
            acc = acc + value * bernoulli_poly(k, Fraction(a, f))
    if k >= 2:
        acc = acc * Fraction(f) ** (k - 1)
    return acc
