"""Formal Dirichlet series over exact scalars.

A series sum_{n>=1} c(n) n^(-s) is held as its coefficient array
c(1..nmax).  Products of series are divisor-sum convolutions of the
arrays, so every identity here is checked by exact arithmetic, never by
floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from ._backend import kernels
from .arith import euler_phi, prime_divisors
from .chars import DirichletCharacter, enumerate_characters
from .cyclo import CycloNumber, as_cyclo


class DirichletSeriesCoeffs:
    """Coefficients c(1..nmax) of a formal Dirichlet series."""

    __slots__ = ("nmax", "_c")

    def __init__(self, values, nmax: int | None = None):
        values = list(values)
        if nmax is None:
            nmax = len(values)
        if len(values) != nmax:
            raise ValueError(f"expected {nmax} coefficients, got {len(values)}")
        self.nmax = nmax
        self._c = [0] + values

    @classmethod
    def _from_raw(cls, raw: list, nmax: int) -> "DirichletSeriesCoeffs":
        obj = cls.__new__(cls)
        obj.nmax = nmax
        obj._c = raw[: nmax + 1]
        return obj

    @classmethod
    def zeros(cls, nmax: int) -> "DirichletSeriesCoeffs":
        return cls._from_raw([0] * (nmax + 1), nmax)

    @classmethod
    def delta(cls, nmax: int) -> "DirichletSeriesCoeffs":
        """The convolution identity: 1 at n = 1, zero elsewhere."""
        raw = [0] * (nmax + 1)
        raw[1] = 1
        return cls._from_raw(raw, nmax)

    def coeff(self, n: int):
        """c(n) as an exact scalar (int, Fraction or CycloNumber)."""
        if not 1 <= n <= self.nmax:
            raise IndexError(f"coefficient index {n} outside 1..{self.nmax}")
        return self._c[n]

    def coeffs(self) -> list[CycloNumber]:
        """All coefficients c(1..nmax), coerced to CycloNumber."""
        return [as_cyclo(c) for c in self._c[1:]]

    def raw(self) -> list:
        return self._c

    def truncated(self, nmax: int) -> "DirichletSeriesCoeffs":
        if nmax > self.nmax:
            raise ValueError("cannot extend a coefficient array")
        return DirichletSeriesCoeffs._from_raw(self._c[: nmax + 1], nmax)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DirichletSeriesCoeffs):
            return NotImplemented
        return self.first_difference(other) is None

    __hash__ = None

    def first_difference(self, other: "DirichletSeriesCoeffs") -> int | None:
        """Smallest index on the common range where the arrays differ."""
        top = min(self.nmax, other.nmax)
        for n in range(1, top + 1):
            a, b = self._c[n], other._c[n]
            if a is b:
                continue
            if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
                if a != b:
                    return n
            elif as_cyclo(a) != as_cyclo(b):
                return n
        return None

    def __add__(self, other: "DirichletSeriesCoeffs") -> "DirichletSeriesCoeffs":
        top = min(self.nmax, other.nmax)
        raw = [0] * (top + 1)
        for n in range(1, top + 1):
            raw[n] = self._c[n] + other._c[n]
        return DirichletSeriesCoeffs._from_raw(raw, top)

    def __sub__(self, other: "DirichletSeriesCoeffs") -> "DirichletSeriesCoeffs":
        top = min(self.nmax, other.nmax)
        raw = [0] * (top + 1)
        for n in range(1, top + 1):
            raw[n] = self._c[n] - other._c[n]
        return DirichletSeriesCoeffs._from_raw(raw, top)

    def scaled(self, s) -> "DirichletSeriesCoeffs":
        raw = [0] * (self.nmax + 1)
        for n in range(1, self.nmax + 1):
            c = self._c[n]
            if c:
                raw[n] = s * c
        return DirichletSeriesCoeffs._from_raw(raw, self.nmax)

    def dilated(self, l: int) -> "DirichletSeriesCoeffs":
        """Coefficients of l^(-s) times the series (index dilation by l)."""
        return DirichletSeriesCoeffs._from_raw(
            kernels.dilate(self._c, l, self.nmax), self.nmax
        )

    def to_complex(self) -> list[complex]:
        out = []
        for c in self._c[1:]:
            if isinstance(c, (int, Fraction)):
                out.append(complex(c))
            else:
                out.append(c.to_complex())
        return out

    def __repr__(self) -> str:
        head = ", ".join(repr(c) for c in self._c[1 : min(self.nmax, 8) + 1])
        return f"DirichletSeriesCoeffs(nmax={self.nmax}, [{head}, ...])"


_PACKED_CUTOFF = 48


def convolve(a: DirichletSeriesCoeffs, b: DirichletSeriesCoeffs) -> DirichletSeriesCoeffs:
    """Coefficients of the product series: c(n) = sum_{m|n} a(m) b(n/m).

    Arrays whose scalars are integers and small-order cyclotomic values
    with integer coordinates take a packed int64 fast path (exact, with
    a proven magnitude bound); everything else goes through the generic
    object kernel.
    """
    nmax = min(a.nmax, b.nmax)
    if nmax >= _PACKED_CUTOFF:
        packed = _try_packed_convolve(a.raw(), b.raw(), nmax)
        if packed is not None:
            return DirichletSeriesCoeffs._from_raw(packed, nmax)
    raw = kernels.dirichlet_convolve(a.raw(), b.raw(), nmax)
    return DirichletSeriesCoeffs._from_raw(raw, nmax)


def _try_packed_convolve(a_raw: list, b_raw: list, nmax: int) -> list | None:
    from . import _packing

    ea = _packing.common_order(a_raw[1 : nmax + 1])
    if ea is None:
        return None
    eb = _packing.common_order(b_raw[1 : nmax + 1])
    if eb is None:
        return None
    from math import lcm as _lcm

    e = _lcm(ea, eb)
    if e > _packing.MAX_PACK_ORDER or euler_phi(e) > _packing.MAX_PACK_PHI:
        return None
    a_mat = _packing.pack_series(a_raw, nmax, e)
    if a_mat is None:
        return None
    b_mat = _packing.pack_series(b_raw, nmax, e)
    if b_mat is None:
        return None
    if not _packing.packed_product_safe(a_mat, b_mat, e, nmax):
        return None
    out = kernels.convolve_packed(a_mat, b_mat, _packing.pair_power_matrix(e), nmax)
    return _packing.unpack_series(out, e)


def l_coeffs(chi: DirichletCharacter, shift: int, nmax: int) -> DirichletSeriesCoeffs:
    """Coefficients chi(n) n^shift of L(s - shift, chi); shift must be >= 0.

    Negative shifts would leave the exact scalar ring, and the weight-k
    convolutions only ever need shift = k - 1 >= 0.
    """
    if shift < 0:
        raise ValueError("negative shifts are unsupported (exact mode needs n^shift integral)")
    raw = [0] * (nmax + 1)
    M = chi.modulus
    values = [chi.eval(r) for r in range(M)] if M > 1 else [chi.eval(0)]
    if shift == 0:
        for n in range(1, nmax + 1):
            v = values[n % M]
            if v:
                raw[n] = v
    else:
        for n in range(1, nmax + 1):
            v = values[n % M]
            if v:
                r = v.as_rational()
                raw[n] = r * n**shift if r is not None else v * n**shift
    return DirichletSeriesCoeffs._from_raw(raw, nmax)


def partial_zeta_coeffs(h: int, M: int, nmax: int) -> DirichletSeriesCoeffs:
    """Indicator coefficients of the partial zeta sum over n = h (mod M)."""
    if not 1 <= h <= M:
        raise ValueError(f"residue h = {h} must satisfy 1 <= h <= M = {M}")
    raw = [0] * (nmax + 1)
    for n in range(h if h < M else M, nmax + 1, M):
        raw[n] = 1
    return DirichletSeriesCoeffs._from_raw(raw, nmax)


def beta_matrix(M: int) -> dict[tuple[DirichletCharacter, int], CycloNumber]:
    """beta_chi(h) = conj(chi(h)) / phi(M) over characters chi and units h.

    These are the coefficients expressing the indicator of the residue
    class h (mod M) as a combination sum_chi beta_chi(h) chi(n) for n
    coprime to M; orthogonality makes the character matrix invertible
    with exactly this inverse.
    """
    if M < 1:
        raise ValueError("modulus must be >= 1")
    phi = euler_phi(M)
    out: dict[tuple[DirichletCharacter, int], CycloNumber] = {}
    for chi in enumerate_characters(M):
        for h in range(1, M + 1):
            if gcd(h, M) == 1:
                out[(chi, h)] = chi.eval(h).conjugate() / phi
    return out


def beta_coefficient(chi: DirichletCharacter, h: int) -> CycloNumber:
    """Single beta_chi(h); h must be coprime to the modulus."""
    M = chi.modulus
    if gcd(h, M) != 1:
        raise ValueError(f"h = {h} is not coprime to the modulus {M}")
    return chi.eval(h).conjugate() / euler_phi(M)


def beta_reconstruction_value(M: int, h: int, n: int) -> CycloNumber:
    """sum_chi beta_chi(h) chi(n), evaluated exactly through the characters."""
    if gcd(h, M) != 1:
        raise ValueError(f"h = {h} is not coprime to M = {M}")
    acc = CycloNumber.zero()
    for chi in enumerate_characters(M):
        term = beta_coefficient(chi, h) * chi.eval(n)
        if term:
            acc = acc + term
    return acc


def beta_reconstruction_table(M: int) -> dict[tuple[int, int], Fraction]:
    """All values sum_chi beta_chi(h) chi(r) for unit residues h, r mod M.

    Exact root-of-unity bookkeeping: each product conj(chi(h)) chi(r) is
    a power of zeta_e (e the unit-group exponent), so the character sum
    is accumulated as integer counts per exponent and reduced modulo the
    cyclotomic polynomial once per pair.  The result of each reduction
    is rational; the table maps (h, r) to that exact value.
    """
    chars = enumerate_characters(M)
    phi = len(chars)
    units = [r for r in range(1, M + 1) if gcd(r, M) == 1]
    logs = {chi: chi._log_table for chi in chars}
    orders = {chi: chi.order for chi in chars}
    e = 1
    for chi in chars:
        e = e * orders[chi] // gcd(e, orders[chi])
    out: dict[tuple[int, int], Fraction] = {}
    for h in units:
        hm = h % M
        for r in units:
            rm = r % M
            counts = [0] * e
            for chi in chars:
                o = orders[chi]
                t = logs[chi]
                j = (t[rm] - t[hm]) * (e // o) % e
                counts[j] += 1
            value = _rational_root_sum(e, counts)
            out[(h, r)] = Fraction(value, phi)
    return out


def _rational_root_sum(e: int, counts: list[int]) -> int:
    """sum_j counts[j] zeta_e^j, which must reduce to a rational integer."""
    if e == 1:
        return counts[0]
    total = CycloNumber.zero()
    for j, c in enumerate(counts):
        if c:
            total = total + CycloNumber.root_of_unity(e, j) * c
    r = total.as_rational()
    if r is None:
        raise ArithmeticError("character sum failed to collapse to a rational")
    return r


def reduce_to_primitive(chi: DirichletCharacter, nmax: int) -> DirichletSeriesCoeffs:
    """Finite Euler product prod_{p | M, p coprime to f} (1 - chi0(p) p^(-s)).

    Convolving the result with the primitive l_coeffs(chi0, 0) recovers
    l_coeffs(chi, 0) exactly: the factors remove the primes that divide
    the modulus but not the conductor.
    """
    chi0 = chi.restrict_to_conductor()
    ps = [p for p in prime_divisors(chi.modulus) if chi0.conductor % p != 0]
    support = [(1, as_cyclo(1))]
    for p in ps:
        support = support + [
            (n * p, -(chi0.eval(p) * c)) for n, c in support if n * p <= nmax
        ]
    raw = [0] * (nmax + 1)
    for n, c in support:
        if n <= nmax:
            raw[n] = c
    return DirichletSeriesCoeffs._from_raw(raw, nmax)
