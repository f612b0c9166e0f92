"""Double-precision analytic layer: Gamma, Hurwitz zeta, Dirichlet L-values,
completed L-functions with functional equations, trivial-zero bookkeeping
for Gamma-factor ratios, and the zero-free-region certifier for Dirichlet
series with polynomially growing coefficients.

Exact data (characters, coefficient arrays) enters through its complex
embedding; everything here is honest double precision with stated
accuracy windows, never a substitute for the exact layer.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arith import bernoulli_number
from .chars import DirichletCharacter
from .dseries import DirichletSeriesCoeffs

_LOG_2PI = math.log(2 * math.pi)


class GammaPoleError(ArithmeticError):
    """Evaluation at a nonpositive integer argument of Gamma."""

    def __init__(self, n: int):
        super().__init__(f"log_gamma pole at {n}")
        self.pole = n


class ZetaPoleError(ArithmeticError):
    """Evaluation of a zeta-type series at its pole s = 1."""


class CertificateError(ValueError):
    """A zero-free certificate could not be produced."""


def _is_nonpositive_integer(z: complex) -> int | None:
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == int(z.real):
        return int(z.real)
    return None


def log_gamma(s: complex) -> complex:
    """Principal-branch log Gamma via Stirling with upward recurrence.

    Relative accuracy ~1e-14 for |s| <= 100 away from the poles; the
    reflection branch keeps analyticity off the real axis and matches
    the usual principal convention on it.
    """
    s = complex(s)
    pole = _is_nonpositive_integer(s)
    if pole is not None:
        raise GammaPoleError(pole)
    if s.real >= 0.5:
        return _log_gamma_right(s)
    if s.imag >= 0:
        return math.log(math.pi) - _log_sin_pi(s) - _log_gamma_right(1 - s)
    return log_gamma(s.conjugate()).conjugate()


def _log_gamma_right(s: complex) -> complex:
    """Stirling series after shifting Re(s) above 10."""
    shift = 0
    w = s
    logs = 0j
    while w.real < 10:
        logs += cmath.log(w)
        w += 1
        shift += 1
    acc = (w - 0.5) * cmath.log(w) - w + 0.5 * _LOG_2PI
    w2 = w * w
    term = 1 / w
    for j in range(1, 9):
        b = bernoulli_number(2 * j)
        acc += (b.numerator / b.denominator) / (2 * j * (2 * j - 1)) * term
        term /= w2
    return acc - logs


def _log_sin_pi(s: complex) -> complex:
    """log(sin(pi s)), analytic on Im(s) >= 0 (principal at real s)."""
    # sin(pi s) = exp(-i pi s) (1 - exp(2 i pi s)) * i / 2
    return (-1j * math.pi * s + cmath.log(1 - cmath.exp(2j * math.pi * s))
            + 1j * math.pi / 2 - math.log(2))


def gamma_value(s: complex) -> complex:
    return cmath.exp(log_gamma(s))


def gamma_ratio_zero_check(k: int, delta: int, s_points) -> list[complex]:
    """Evaluate Gamma(s/2) / Gamma((s-k+1+delta)/2) with pole bookkeeping.

    A pole of the denominator alone forces an exact 0; a pole of the
    numerator alone is reported as inf; simultaneous poles come back as
    nan (indeterminate).  Elsewhere the ratio is exp of the log-gamma
    difference.
    """
    if delta not in (0, 1):
        raise ValueError("delta must be 0 or 1")
    out = []
    for s in s_points:
        s = complex(s)
        num_arg = s / 2
        den_arg = (s - k + 1 + delta) / 2
        num_pole = _is_nonpositive_integer(num_arg) is not None
        den_pole = _is_nonpositive_integer(den_arg) is not None
        if num_pole and den_pole:
            out.append(complex(float("nan"), 0.0))
        elif den_pole:
            out.append(0j)
        elif num_pole:
            out.append(complex(float("inf"), 0.0))
        else:
            out.append(cmath.exp(log_gamma(num_arg) - log_gamma(den_arg)))
    return out


def hurwitz_zeta(s: complex, a: float) -> complex:
    """Hurwitz zeta by Euler-Maclaurin from a shifted summation start.

    The summation start and the number of Bernoulli correction terms
    (at least B_16) adapt to s: larger imaginary parts push the start
    out, negative real parts pull it in and deepen the correction sum.
    Absolute accuracy ~1e-10 for Re(s) >= -4, |Im s| <= 50, degrading
    for more negative Re(s) where the cancellation among terms of size
    (N+a)^(-Re s) exhausts double precision.
    """
    s = complex(s)
    if s == 1:
        raise ZetaPoleError("pole at s = 1")
    if not 0 < a <= 1:
        raise ValueError("a must lie in (0, 1]")
    if s.real >= 0:
        N, J = max(20, int(0.5 * abs(s.imag)) + 8), 8
    else:
        # Smaller start limits the cancellation among terms of size
        # (N+a)^(-Re s); more Bernoulli terms keep the remainder
        # integral convergent and small.  Below Re(s) ~ -5 the
        # cancellation wall of double precision dominates regardless.
        J = max(10, int((1 - s.real) // 2) + 3)
        N = max(10, int(0.5 * abs(s.imag)) + 8, J + 2)
    tail = 0j
    for n in range(N):
        tail += cmath.exp(-s * math.log(n + a))
    x = N + a
    logx = math.log(x)
    xms = cmath.exp(-s * logx)  # x^(-s)
    total = tail + xms * x / (s - 1) + 0.5 * xms
    # sum_j B_2j/(2j)! * s(s+1)...(s+2j-2) * x^(-s-2j+1)
    poch = s
    power = xms / x  # x^(-s-1)
    fact = 2.0
    for j in range(1, J + 1):
        b = bernoulli_number(2 * j)
        total += (b.numerator / b.denominator) / fact * poch * power
        if j < J:
            poch *= (s + 2 * j - 1) * (s + 2 * j)
            power /= x * x
            fact *= (2 * j + 1) * (2 * j + 2)
    return total


def digamma_real(x: float) -> float:
    """psi(x) for real x > 0, by Stirling after an upward shift."""
    if x <= 0:
        raise ValueError("digamma_real needs x > 0")
    acc = 0.0
    while x < 10:
        acc -= 1 / x
        x += 1
    acc += math.log(x) - 0.5 / x
    x2 = x * x
    term = 1 / x2
    for j in range(1, 9):
        b = bernoulli_number(2 * j)
        acc -= (b.numerator / b.denominator) / (2 * j) * term
        term /= x2
    return acc


def partial_zeta_value(h: int, M: int, s: complex) -> complex:
    """Analytic continuation of the partial zeta sum over n = h (mod M)."""
    if not 1 <= h <= M:
        raise ValueError("need 1 <= h <= M")
    return cmath.exp(-s * math.log(M)) * hurwitz_zeta(s, h / M) if M > 1 else hurwitz_zeta(s, 1.0)


def l_value(chi: DirichletCharacter, s: complex) -> complex:
    """L(s, chi) = M^(-s) sum_h chi(h) zeta_H(s, h/M) over units h mod M.

    At s = 1 (non-principal chi) the simple poles of the Hurwitz values
    cancel against sum chi(h) = 0, leaving -M^(-1) sum chi(h) psi(h/M).
    """
    s = complex(s)
    if chi.is_principal() and s == 1:
        raise ZetaPoleError("L(s, principal) has a pole at s = 1")
    M = chi.modulus
    if M == 1:
        return hurwitz_zeta(s, 1.0)
    scale = cmath.exp(-s * math.log(M))
    acc = 0j
    if s == 1:
        for h in range(1, M + 1):
            v = chi.eval_complex(h)
            if v:
                acc -= v * digamma_real(h / M)
    else:
        for h in range(1, M + 1):
            v = chi.eval_complex(h)
            if v:
                acc += v * hurwitz_zeta(s, h / M)
    return scale * acc


def gauss_sum(chi: DirichletCharacter) -> complex:
    """tau(chi) = sum_a chi(a) exp(2 pi i a / M)."""
    M = chi.modulus
    acc = 0j
    for a in range(1, M + 1):
        v = chi.eval_complex(a)
        if v:
            acc += v * cmath.exp(2j * math.pi * a / M)
    return acc


def root_number(chi: DirichletCharacter) -> complex:
    """epsilon(chi) = tau(chi) / (i^delta sqrt(M)) for primitive chi."""
    if not chi.is_primitive():
        raise ValueError("root number requires a primitive character")
    delta = 0 if chi.is_even() else 1
    eps = gauss_sum(chi) / (1j**delta * math.sqrt(chi.modulus))
    return eps


@dataclass
class CompletedL:
    """Completion data of a primitive character: parity, conductor, root number."""

    chi: DirichletCharacter
    delta: int
    conductor: int
    epsilon: complex

    @classmethod
    def from_character(cls, chi: DirichletCharacter) -> "CompletedL":
        if not chi.is_primitive():
            raise ValueError("completion requires a primitive character")
        eps = root_number(chi)
        if abs(abs(eps) - 1.0) > 1e-12:
            raise ArithmeticError(f"root number off the unit circle: |eps| = {abs(eps)}")
        return cls(chi=chi, delta=0 if chi.is_even() else 1,
                   conductor=chi.modulus, epsilon=eps)

    def lambda_value(self, s: complex) -> complex:
        return completed_lambda(self.chi, s)


def completed_lambda(chi: DirichletCharacter, s: complex) -> complex:
    """Lambda(s, chi) = (M/pi)^((s+delta)/2) Gamma((s+delta)/2) L(s, chi).

    The conductor power is kept so that the two-point functional
    equation Lambda(s, chi) = eps Lambda(1-s, conj chi) holds on its
    own, rather than only inside combined displays where those powers
    cancel.
    """
    if not chi.is_primitive():
        raise ValueError("completed L requires a primitive character")
    s = complex(s)
    delta = 0 if chi.is_even() else 1
    w = (s + delta) / 2
    log_scale = w * math.log(chi.modulus / math.pi)
    return cmath.exp(log_scale + log_gamma(w)) * l_value(chi, s)


def functional_eq_residual(chi: DirichletCharacter, s: complex) -> float:
    """|Lambda(s, chi) - eps(chi) Lambda(1-s, conj(chi))|."""
    eps = root_number(chi)
    lhs = completed_lambda(chi, s)
    rhs = eps * completed_lambda(chi.conjugate(), 1 - s)
    return abs(lhs - rhs)


def functional_eq_report(chi: DirichletCharacter, s: complex,
                         tolerance: float = 1e-8) -> dict:
    residual = functional_eq_residual(chi, s)
    s = complex(s)
    return {
        "check": "functional_equation",
        "chi_modulus": chi.modulus,
        "s": [s.real, s.imag],
        "residual": residual,
        "tolerance": tolerance,
        "pass": residual <= tolerance,
    }


# -- zero-free region machinery ----------------------------------------


@dataclass
class ZeroFreeCertificate:
    """Explicit right half-plane on which a Dirichlet series cannot vanish.

    For Re(s) >= sigma0, the terms beyond the leading one are bounded in
    total by tail_bound_at_sigma0 < lead_abs, so |L(s)| stays positive.
    """

    sigma0: float
    n0: int
    lead_abs: float
    tail_bound_at_sigma0: float
    lam: float
    C: float
    n1: int

    def __post_init__(self):
        if not self.tail_bound_at_sigma0 < self.lead_abs:
            raise CertificateError("certificate bound does not clear the leading term")


_GRID_STEP = 1.0 / 64


def _abs_coeffs(coeffs: DirichletSeriesCoeffs) -> list[float]:
    return [abs(z) for z in coeffs.to_complex()]


def zero_free_certificate(coeffs: DirichletSeriesCoeffs, C: float, lam: float,
                          n1: int) -> ZeroFreeCertificate:
    """Smallest grid sigma0 with (finite sum + integral tail) < |B(n0)|.

    The finite sum runs over n0 < n <= n1 with the stored coefficients;
    beyond n1 the growth promise |B(n)| <= C n^lam (checked on the
    stored range) is integrated.  Certifies L(s) != 0 for Re s >= sigma0.
    """
    if C < 0:
        raise ValueError("C must be >= 0")
    if not 1 <= n1 <= coeffs.nmax:
        raise ValueError(f"need 1 <= n1 <= nmax = {coeffs.nmax}")
    raw = coeffs.raw()
    n0 = next((n for n in range(1, coeffs.nmax + 1) if raw[n]), None)
    if n0 is None:
        raise CertificateError("series is identically zero on range")
    absB = _abs_coeffs(coeffs)
    for n in range(n1, coeffs.nmax + 1):
        if absB[n - 1] > C * n**lam * (1 + 1e-12):
            raise CertificateError(
                f"growth hypothesis |B(n)| <= C n^lam fails at n = {n}"
            )
    lead = absB[n0 - 1]

    def bound(sigma: float) -> float:
        finite = sum(
            absB[n - 1] * (n0 / n) ** sigma
            for n in range(n0 + 1, n1 + 1)
            if absB[n - 1]
        )
        if C == 0:
            return finite
        if sigma <= lam + 1:
            return math.inf
        tail = C * n0**sigma * n1 ** (lam - sigma + 1) / (sigma - lam - 1)
        return finite + tail

    lo = lam + 1 + _GRID_STEP
    hi = lo
    doublings = 0
    while bound(hi) >= lead:
        hi = lam + 1 + 2 * (hi - lam - 1)
        doublings += 1
        if doublings > 60:
            raise CertificateError("no certifiable half-plane within range")
    # smallest grid point sigma = lo + k * step with bound < lead
    k_hi = math.ceil((hi - lo) / _GRID_STEP)
    k_lo = 0
    if bound(lo) < lead:
        k_hi = 0
    while k_lo < k_hi:
        mid = (k_lo + k_hi) // 2
        if bound(lo + mid * _GRID_STEP) < lead:
            k_hi = mid
        else:
            k_lo = mid + 1
    sigma0 = lo + k_lo * _GRID_STEP
    return ZeroFreeCertificate(
        sigma0=sigma0, n0=n0, lead_abs=lead,
        tail_bound_at_sigma0=bound(sigma0), lam=lam, C=C, n1=n1,
    )


def zero_scan(coeffs: DirichletSeriesCoeffs, sigma_min: float, sigma_max: float,
              t_max: float, grid_step: float, *, C: float, lam: float
              ) -> list[complex]:
    """Grid points where the truncated series cannot be told from zero.

    At each s the partial sum over the stored coefficients is compared
    against the rigorous truncation tail C * integral beyond nmax; the
    point is flagged when |partial| <= tail, i.e. vanishing cannot be
    excluded.  Over a certified region the returned list must be empty.
    """
    if grid_step <= 0:
        raise ValueError("grid_step must be positive")
    B = np.array(coeffs.to_complex(), dtype=complex)
    n = np.arange(1, coeffs.nmax + 1, dtype=float)
    logn = np.log(n)
    sigmas = np.arange(sigma_min, sigma_max + grid_step / 2, grid_step)
    ts = np.arange(-t_max, t_max + grid_step / 2, grid_step)
    flagged: list[complex] = []
    for sigma in sigmas:
        if C == 0:
            tail = 0.0
        elif sigma > lam + 1:
            tail = C * coeffs.nmax ** (lam - sigma + 1) / (sigma - lam - 1)
        else:
            tail = math.inf
        weights = B * np.exp(-sigma * logn)
        phases = np.exp(-1j * np.outer(ts, logn))
        values = phases @ weights
        for t, v in zip(ts, values):
            if abs(v) <= tail:
                flagged.append(complex(sigma, t))
    return flagged
