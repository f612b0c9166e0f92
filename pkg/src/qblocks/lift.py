"""Coefficient-level Shimura convolution and the periodic-block identity.

The central check: for a block v(n) = a(d n^2)/n^i that is periodic mod
l, the convolution series (sum psi_d(m) m^(k-1-s)) (sum a(d m^2) m^(-s))
equals the same series rebuilt from the periodic model of the block,
decomposed into character L-series mod l through the beta coefficients.
Both sides are computed exactly; a nonzero residual pinpoints the first
index where the block deviates from periodicity.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import NamedTuple

from .arith import divisors, euler_phi, is_squarefree
from .chars import DirichletCharacter, enumerate_characters, generalized_bernoulli, twist_psi_d
from .cyclo import CycloNumber, as_cyclo
from .dseries import DirichletSeriesCoeffs, beta_coefficient, convolve, l_coeffs
from .qseries import CoefficientBlock


class PeriodicityError(ValueError):
    """A block failed an exact periodicity requirement."""

    def __init__(self, message: str, witness_index: int):
        super().__init__(message)
        self.witness_index = witness_index


class ScaleEqualsWeightWarning(UserWarning):
    """Scaled-block check with i = k: identity holds, vanishing argument does not."""


@dataclass(frozen=True)
class LiftParams:
    """Weight, square class, base character and hypothesized block period."""

    k: int
    d: int
    psi: DirichletCharacter
    period: int
    psi_d: DirichletCharacter = field(init=False, compare=False)

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("weight parameter k must be >= 1")
        if not is_squarefree(self.d):
            raise ValueError(f"d = {self.d} must be square-free")
        if self.period < 1:
            raise ValueError("period must be >= 1")
        object.__setattr__(self, "psi_d", twist_psi_d(self.psi, self.k, self.d))


@dataclass
class EisensteinForm:
    """Weight-k form whose L-series is L(s, chi) L(s-k+1, psi)."""

    k: int
    chi: DirichletCharacter
    psi: DirichletCharacter
    coeffs: DirichletSeriesCoeffs
    constant_term: CycloNumber
    level: int
    nebentypus: DirichletCharacter


def block_series(blk: CoefficientBlock, nmax: int,
                 shift: int = 0) -> DirichletSeriesCoeffs:
    """The block as Dirichlet coefficients v(n) n^shift for n <= nmax."""
    if len(blk) < nmax:
        raise ValueError(
            f"block supplies {len(blk)} values; maximal valid nmax is {len(blk)}"
        )
    raw: list = [0] * (nmax + 1)
    for n in range(1, nmax + 1):
        v = blk.values[n - 1]
        if v:
            raw[n] = v * n**shift if shift else v
    return DirichletSeriesCoeffs._from_raw(raw, nmax)


def shimura_A(blk: CoefficientBlock, params: LiftParams,
              nmax: int) -> DirichletSeriesCoeffs:
    """A(n) = sum_{m|n} psi_d(m) m^(k-1) a(d (n/m)^2), exactly.

    These are the coefficients of the weight-2k lift attached to the
    block; the identity A-series = (shifted psi_d L-series) * (block
    series) is the defining convolution.
    """
    if blk.scale_exponent != 0:
        raise ValueError("the lift convolution consumes an unscaled (i = 0) block")
    shifted = l_coeffs(params.psi_d, params.k - 1, nmax)
    return convolve(shifted, block_series(blk, nmax))


def alpha_coeffs(blk: CoefficientBlock, l: int, *, check_periodic: bool = True
                 ) -> dict[DirichletCharacter, CycloNumber]:
    """alpha_chi = sum_{h coprime to l} v(h) beta_chi(h) over characters mod l."""
    if len(blk) < l:
        raise ValueError(f"block length {len(blk)} is shorter than the period {l}")
    if check_periodic:
        witness = blk.first_period_break(l)
        if witness is not None:
            raise PeriodicityError(
                f"block is not periodic mod {l}: entry {witness} != entry {witness + l}",
                witness_index=witness,
            )
    out: dict[DirichletCharacter, CycloNumber] = {}
    for chi in enumerate_characters(l):
        acc = CycloNumber.zero()
        for h in range(1, l + 1):
            if gcd(h, l) == 1:
                v = blk.values[h - 1]
                if v:
                    acc = acc + beta_coefficient(chi, h) * v
        out[chi] = acc
    return out


def hecke_eisenstein(chi: DirichletCharacter, psi: DirichletCharacter,
                     k: int, nmax: int) -> EisensteinForm:
    """The product form with c(n) = sum_{m|n} chi(n/m) psi(m) m^(k-1).

    Requires the parity condition (chi psi)(-1) = (-1)^k and a primitive
    psi; the constant term is -B_{k,psi}/(2k) for principal chi and 0
    otherwise.  Coefficients are computed by direct divisor sums, so the
    convolution route through l_coeffs is an independent cross-check.
    """
    if k < 1:
        raise ValueError("weight k must be >= 1")
    parity_product = 1 if chi.is_even() == psi.is_even() else -1
    if parity_product != (-1) ** k:
        raise ValueError(
            f"parity violation: (chi*psi)(-1) = {parity_product} != (-1)^{k}"
        )
    if not psi.is_primitive():
        raise ValueError(
            "psi must be primitive; reduce_to_primitive supplies the Euler "
            "factors relating the imprimitive series to its primitive core"
        )
    if not chi.is_primitive() and not (chi.modulus == 1):
        raise ValueError("chi must be primitive (or the principal character mod 1)")
    raw = _eisenstein_divisor_sums(chi, psi, k, nmax)
    if chi.is_principal():
        constant = generalized_bernoulli(psi, k) * Fraction(-1, 2 * k)
    else:
        constant = CycloNumber.zero()
    return EisensteinForm(
        k=k, chi=chi, psi=psi,
        coeffs=DirichletSeriesCoeffs._from_raw(raw, nmax),
        constant_term=constant,
        level=chi.modulus * psi.modulus,
        nebentypus=chi * psi,
    )


def _eisenstein_divisor_sums(chi: DirichletCharacter, psi: DirichletCharacter,
                             k: int, nmax: int) -> list:
    """c(n) = sum_{m|n} chi(n/m) psi(m) m^(k-1), by direct divisor sums.

    Above a size cutoff the sums run in exponent-bucket form: both
    character values are roots of zeta_e, so each term adds m^(k-1) into
    an integer bucket per exponent and one matrix product against the
    root coordinate table recovers the exact coordinates.  Independent
    of the convolution kernels by construction.
    """
    if nmax >= 128:
        packed = _eisenstein_bucketed(chi, psi, k, nmax)
        if packed is not None:
            return packed
    raw: list = [0] * (nmax + 1)
    for n in range(1, nmax + 1):
        acc = CycloNumber.zero()
        for m in divisors(n):
            pv = psi.eval(m)
            if pv:
                cv = chi.eval(n // m)
                if cv:
                    acc = acc + cv * pv * m ** (k - 1)
        raw[n] = acc
    return raw


@lru_cache(maxsize=4)
def _divisor_pairs(nmax: int):
    """Flat arrays (m, q, m*q) over all pairs with m*q <= nmax."""
    import numpy as np

    ms, qs = [], []
    for m in range(1, nmax + 1):
        top = nmax // m
        ms.extend([m] * top)
        qs.extend(range(1, top + 1))
    m_arr = np.array(ms, dtype=np.int64)
    q_arr = np.array(qs, dtype=np.int64)
    return m_arr, q_arr, m_arr * q_arr


def _bucket_weight_bound(k: int, nmax: int) -> int:
    """Upper bound on sum_{m|n} m^(k-1) over n <= nmax."""
    from ._packing import max_divisor_count

    if k == 1:
        return max_divisor_count(nmax)
    if k == 2:
        return nmax * (nmax.bit_length() + 1)
    return 2 * nmax ** (k - 1)


def _eisenstein_bucketed(chi: DirichletCharacter, psi: DirichletCharacter,
                         k: int, nmax: int) -> list | None:
    import numpy as np

    from . import _packing

    e = 1
    for o in (chi.order, psi.order):
        e = e * o // gcd(e, o)
    if e > _packing.MAX_PACK_ORDER or euler_phi(e) > _packing.MAX_PACK_PHI:
        return None
    # bucket sums of m^(k-1) accumulate in float64 inside bincount; they
    # are exact only while every partial sum stays below 2^52
    if _bucket_weight_bound(k, nmax) >= 2**51:
        return None
    m_arr, q_arr, n_arr = _divisor_pairs(nmax)
    log_psi = np.array(
        [psi.log(r) if psi.log(r) is not None else -1 for r in range(psi.modulus)]
        or [0], dtype=np.int64,
    )
    log_chi = np.array(
        [chi.log(r) if chi.log(r) is not None else -1 for r in range(chi.modulus)]
        or [0], dtype=np.int64,
    )
    jp = log_psi[m_arr % psi.modulus] if psi.modulus > 1 else np.zeros(len(m_arr), dtype=np.int64)
    jc = log_chi[q_arr % chi.modulus] if chi.modulus > 1 else np.zeros(len(q_arr), dtype=np.int64)
    mask = (jp >= 0) & (jc >= 0)
    j = (jc[mask] * (e // chi.order) + jp[mask] * (e // psi.order)) % e
    weights = m_arr[mask] ** (k - 1)
    flat = n_arr[mask] * e + j
    buckets = np.bincount(flat, weights=weights.astype(np.float64),
                          minlength=(nmax + 1) * e)
    if buckets.max(initial=0) >= 2**52:
        return None
    buckets = buckets.astype(np.int64).reshape(nmax + 1, e)
    coords = buckets @ _packing.basis_matrix(e)
    return _packing.unpack_series(coords, e)


class IdentityResidual(NamedTuple):
    """Outcome of an exact two-sided comparison of the block identity."""

    max_abs_residual: Fraction | float
    witness_index: int | None

    @property
    def exact_zero(self) -> bool:
        return self.witness_index is None

    def to_report(self, check: str, params: LiftParams, nmax: int) -> dict:
        return {
            "check": check,
            "k": params.k,
            "d": params.d,
            "l": params.period,
            "nmax": nmax,
            "residual_exact_zero": self.exact_zero,
            "witness_index": self.witness_index,
        }


def periodic_model_series(blk: CoefficientBlock, l: int, i: int,
                          nmax: int) -> DirichletSeriesCoeffs:
    """Character-decomposed coefficients of the periodized block, times n^i.

    Residue classes mod l are grouped by g = gcd(h, l).  The class of
    multiples of l contributes v(l) g^i times a dilated zeta-shift (the
    V(l) term); a class with gcd g > 1 is dilated by g and recursed into
    the units mod l/g; unit classes decompose through beta into twisted
    L-coefficients.  The result is built only from the first l block
    entries, i.e. from the periodic model of the block.
    """
    top = DirichletSeriesCoeffs.zeros(nmax)
    for g in divisors(l):
        lp = l // g
        sub_first_period = [blk.values[g * m - 1] for m in range(1, lp + 1)]
        alphas = _alpha_from_first_period(sub_first_period, lp)
        acc = DirichletSeriesCoeffs.zeros(nmax)
        for chi, a in alphas.items():
            if not a:
                continue
            a = _downcast(a)
            acc = acc + l_coeffs(chi, i, nmax).scaled(a)
        if g > 1:
            acc = acc.dilated(g)
            if i:
                acc = acc.scaled(g**i)
        top = top + acc
    return DirichletSeriesCoeffs._from_raw(
        [_downcast(c) for c in top.raw()], nmax
    )


def _alpha_from_first_period(values: list, lp: int) -> dict[DirichletCharacter, CycloNumber]:
    out = {}
    for chi in enumerate_characters(lp):
        acc = CycloNumber.zero()
        for h in range(1, lp + 1):
            if gcd(h, lp) == 1:
                v = values[h - 1]
                if v:
                    acc = acc + beta_coefficient(chi, h) * v
        out[chi] = acc
    return out


def _downcast(x):
    if isinstance(x, CycloNumber):
        r = x.as_rational()
        return r if r is not None else x
    return x


def _two_sided_residual(blk: CoefficientBlock, params: LiftParams, nmax: int,
                        i: int, require_periodic: bool) -> IdentityResidual:
    l = params.period
    if len(blk) < l:
        raise ValueError(f"block length {len(blk)} is shorter than the period {l}")
    if require_periodic:
        witness = blk.first_period_break(l)
        if witness is not None:
            raise PeriodicityError(
                f"block is not periodic mod {l}: entry {witness} != entry {witness + l}",
                witness_index=witness,
            )
    shifted_psi = l_coeffs(params.psi_d, params.k - 1, nmax)
    lhs = convolve(shifted_psi, block_series(blk, nmax, shift=i))
    rhs = convolve(shifted_psi, periodic_model_series(blk, l, i, nmax))
    witness = lhs.first_difference(rhs)
    if witness is None:
        return IdentityResidual(Fraction(0), None)
    diff = lhs - rhs
    emb = diff.to_complex()
    return IdentityResidual(max(abs(z) for z in emb), witness)


def master_identity_residual(blk: CoefficientBlock, params: LiftParams,
                             nmax: int, *, require_periodic: bool = False
                             ) -> IdentityResidual:
    """Exact comparison of the two sides of the periodic-block identity.

    The right-hand side is assembled from the first period only, so for
    a truly periodic block the residual is exactly zero, and any single
    perturbed entry yields a witness index instead of an error.  Pass
    require_periodic=True to raise PeriodicityError up front.
    """
    if blk.scale_exponent != 0:
        raise ValueError("master identity consumes an unscaled (i = 0) block")
    return _two_sided_residual(blk, params, nmax, 0, require_periodic)


def remark_variant_residual(blk: CoefficientBlock, params: LiftParams,
                            nmax: int, *, require_periodic: bool = False
                            ) -> IdentityResidual:
    """Same comparison for a scaled block v(n) = a(d n^2)/n^i with i >= 1.

    Every L-series from the block decomposition is shifted by i.  The
    case i = k is accepted for the identity but flagged, since the
    vanishing argument excludes it.
    """
    i = blk.scale_exponent
    if i < 1:
        raise ValueError("scaled-block check needs scale_exponent >= 1")
    if i == params.k:
        warnings.warn(
            "scale exponent equals the weight parameter; the identity is "
            "checked but the vanishing conclusion does not apply",
            ScaleEqualsWeightWarning,
            stacklevel=2,
        )
    return _two_sided_residual(blk, params, nmax, i, require_periodic)
