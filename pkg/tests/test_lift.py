import random
import warnings
from fractions import Fraction
from math import gcd

import pytest

from qblocks.arith import divisors
from qblocks.chars import enumerate_characters, principal_character
from qblocks.cyclo import CycloNumber, as_cyclo
from qblocks.dseries import convolve, l_coeffs
from qblocks.lift import (
    LiftParams,
    PeriodicityError,
    ScaleEqualsWeightWarning,
    alpha_coeffs,
    block_series,
    hecke_eisenstein,
    master_identity_residual,
    periodic_model_series,
    remark_variant_residual,
    shimura_A,
)
from qblocks.qseries import CoefficientBlock, block, theta_series

ONE = principal_character(1)


def periodic_block(pattern, d=1, i=0, repeats=800):
    values = list(pattern) * repeats
    return CoefficientBlock(d=d, scale_exponent=i, values=values,
                            source_precision=d * len(values) ** 2 + 1)


# -- shimura_A ----------------------------------------------------------------

def test_lift_leading_and_prime_coefficients():
    blk = periodic_block([7, 3, 1, 4, 9, 2, 8, 5, 6, 1], repeats=20)
    params = LiftParams(k=2, d=1, psi=ONE, period=10)
    A = shimura_A(blk, params, 60)
    assert A.coeff(1) == blk.values[0]
    for p in (2, 3, 5, 7):
        expect = as_cyclo(blk.values[p - 1]) + \
            params.psi_d.eval(p) * p ** (params.k - 1) * as_cyclo(blk.values[0])
        assert as_cyclo(A.coeff(p)) == expect


def test_lift_constant_block_at_4():
    # k = 1, d = 1, psi trivial: psi_d = (-1/.) mod 4 kills even divisors,
    # so A(4) = c * (psi_d(1) + psi_d(2) + psi_d(4)) = c
    c = 5
    params = LiftParams(k=1, d=1, psi=ONE, period=3)
    A = shimura_A(periodic_block([c], repeats=100), params, 20)
    assert A.coeff(4) == c


def test_lift_matches_bruteforce_divisor_sum():
    rng = random.Random(12)
    blk = periodic_block([rng.randrange(-6, 7) for _ in range(12)], d=3, repeats=30)
    params = LiftParams(k=3, d=3, psi=ONE, period=12)
    A = shimura_A(blk, params, 120)
    for n in range(1, 121):
        expect = CycloNumber.zero()
        for m in divisors(n):
            v = params.psi_d.eval(m)
            if v:
                expect = expect + v * m ** (params.k - 1) * as_cyclo(blk.values[n // m - 1])
        assert as_cyclo(A.coeff(n)) == expect


def test_lift_range_error_reports_max():
    blk = CoefficientBlock(1, 0, [1] * 10, 101)
    params = LiftParams(k=1, d=1, psi=ONE, period=1)
    with pytest.raises(ValueError, match="maximal valid nmax is 10"):
        shimura_A(blk, params, 50)


def test_lift_rejects_scaled_block():
    blk = CoefficientBlock(1, 1, [1] * 10, 101)
    params = LiftParams(k=1, d=1, psi=ONE, period=1)
    with pytest.raises(ValueError):
        shimura_A(blk, params, 10)


def test_lift_params_validation():
    with pytest.raises(ValueError):
        LiftParams(k=0, d=1, psi=ONE, period=1)
    with pytest.raises(ValueError):
        LiftParams(k=1, d=4, psi=ONE, period=1)
    with pytest.raises(ValueError):
        LiftParams(k=1, d=1, psi=ONE, period=0)


# -- alpha --------------------------------------------------------------------

def test_alpha_constant_block():
    chars3 = enumerate_characters(3)
    al = alpha_coeffs(periodic_block([5], repeats=30), 3)
    assert al[chars3[0]] == 5
    assert al[chars3[1]] == 0


def test_alpha_character_pattern():
    chars3 = enumerate_characters(3)
    al = alpha_coeffs(periodic_block([1, -1, 0], repeats=30), 3)
    assert al[chars3[0]] == 0
    assert al[chars3[1]] == 1


def test_alpha_zero_block():
    al = alpha_coeffs(periodic_block([0], repeats=30), 5)
    assert all(v == 0 for v in al.values())


def test_alpha_periodicity_enforcement():
    blk = periodic_block([1, 2, 3, 4, 5], repeats=10)
    with pytest.raises(PeriodicityError) as exc:
        alpha_coeffs(blk, 3)
    assert exc.value.witness_index == 1
    # non-strict path computes from the first period
    al = alpha_coeffs(blk, 3, check_periodic=False)
    chars3 = enumerate_characters(3)
    assert al[chars3[0]] == Fraction(3, 2)  # (v(1) + v(2)) / 2


def test_alpha_needs_full_period():
    with pytest.raises(ValueError):
        alpha_coeffs(CoefficientBlock(1, 0, [1, 1], 10), 5)


# -- hecke eisenstein -----------------------------------------------------------

def sigma(power, n):
    return sum(d**power for d in divisors(n))


def test_eisenstein_sigma3():
    E = hecke_eisenstein(ONE, ONE, 4, 30)
    assert E.coeffs.coeff(6) == 252  # 1 + 8 + 27 + 216
    for n in range(1, 31):
        assert E.coeffs.coeff(n) == sigma(3, n)
    assert E.constant_term == Fraction(1, 240)  # -B_4/8 with B_4 = -1/30


def test_eisenstein_prime_coefficients():
    chi = enumerate_characters(4)[1]
    psi = enumerate_characters(3)[1]
    E = hecke_eisenstein(chi, psi, 2, 50)
    for p in (5, 7, 11, 13):
        assert as_cyclo(E.coeffs.coeff(p)) == chi.eval(p) + psi.eval(p) * p
    assert E.constant_term == 0
    assert E.nebentypus.modulus == 12


def test_eisenstein_parity_error():
    chi = enumerate_characters(4)[1]  # odd
    with pytest.raises(ValueError, match="parity"):
        hecke_eisenstein(chi, ONE, 2, 10)


def test_eisenstein_imprimitive_psi_error():
    psi = principal_character(2)  # imprimitive: induced from modulus 1
    with pytest.raises(ValueError, match="reduce_to_primitive"):
        hecke_eisenstein(ONE, psi, 4, 10)


def test_eisenstein_imprimitive_chi_error():
    chi = enumerate_characters(4)[1].induced_to(8)
    psi = enumerate_characters(3)[1]
    with pytest.raises(ValueError, match="primitive"):
        hecke_eisenstein(chi, psi, 2, 10)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
def test_eisenstein_l_factorization(k):
    # convolution of the two L-coefficient arrays reproduces the direct
    # divisor-sum coefficients, for all parity-admissible pairs mod <= 12
    moduli = [1, 3, 4, 5, 7, 8, 12]
    for m_chi in moduli:
        for chi in enumerate_characters(m_chi):
            if not (chi.is_primitive() or chi.modulus == 1):
                continue
            for m_psi in (1, 3, 4):
                for psi in enumerate_characters(m_psi):
                    if not psi.is_primitive():
                        continue
                    parity = 1 if chi.is_even() == psi.is_even() else -1
                    if parity != (-1) ** k:
                        continue
                    E = hecke_eisenstein(chi, psi, k, 60)
                    conv = convolve(l_coeffs(chi, 0, 60), l_coeffs(psi, k - 1, 60))
                    assert conv == E.coeffs, (m_chi, m_psi, k)


# -- master identity -------------------------------------------------------------

def test_master_identity_zero_block():
    params = LiftParams(k=1, d=1, psi=ONE, period=3)
    res = master_identity_residual(periodic_block([0], repeats=500), params, 400)
    assert res.exact_zero and res.max_abs_residual == 0


def test_master_identity_constant_block():
    params = LiftParams(k=1, d=1, psi=ONE, period=3)
    res = master_identity_residual(periodic_block([1], repeats=2000), params, 2000)
    assert res.exact_zero


def test_master_identity_sign_pattern():
    params = LiftParams(k=1, d=1, psi=ONE, period=3)
    res = master_identity_residual(periodic_block([1, -1, 4], repeats=700), params, 2000)
    assert res.exact_zero


@pytest.mark.parametrize("l", [1, 2, 3, 5, 7])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_master_identity_random_blocks(l, k):
    rng = random.Random(100 * l + k)
    for d in (1, 2, 3, 5):
        pattern = [rng.randrange(-9, 10) for _ in range(l)]
        blk = periodic_block(pattern, d=d, repeats=max(1, 600 // l))
        params = LiftParams(k=k, d=d, psi=ONE, period=l)
        res = master_identity_residual(blk, params, min(500, len(blk)))
        assert res.exact_zero, (l, k, d, pattern, res)


@pytest.mark.parametrize("l", [4, 6, 9, 10])
def test_master_identity_composite_periods(l):
    # composite periods route non-unit classes through gcd dilation
    rng = random.Random(l)
    pattern = [rng.randrange(-5, 6) for _ in range(l)]
    blk = periodic_block(pattern, d=2, repeats=600 // l)
    params = LiftParams(k=2, d=2, psi=ONE, period=l)
    res = master_identity_residual(blk, params, min(500, len(blk)))
    assert res.exact_zero


def test_master_identity_with_nontrivial_psi():
    psis = [c for c in enumerate_characters(12) if c.is_even() and not c.is_principal()]
    blk = periodic_block([2, -1, 0, 3, 7], repeats=120)
    for psi in psis:
        params = LiftParams(k=2, d=1, psi=psi, period=5)
        res = master_identity_residual(blk, params, 500)
        assert res.exact_zero


def test_master_identity_sensitivity():
    params = LiftParams(k=1, d=1, psi=ONE, period=3)
    values = [1, -1, 4] * 700
    for idx in (0, 1, 100, 500):
        perturbed = list(values)
        perturbed[idx] += 1
        blk = CoefficientBlock(1, 0, perturbed, 10**8)
        res = master_identity_residual(blk, params, 2000)
        assert res.witness_index is not None, idx
        assert res.max_abs_residual > 0
        # the witness is the perturbed entry itself, or its first
        # periodic shadow when the perturbation lands in period one
        assert res.witness_index in (idx + 1, idx + 1 + 3)


def test_master_identity_strict_mode_raises():
    params = LiftParams(k=1, d=1, psi=ONE, period=3)
    values = [1, -1, 4] * 10
    values[4] = 9
    blk = CoefficientBlock(1, 0, values, 10**4)
    with pytest.raises(PeriodicityError) as exc:
        master_identity_residual(blk, params, 30, require_periodic=True)
    assert exc.value.witness_index == 2


def test_master_identity_rejects_scaled_block():
    params = LiftParams(k=1, d=1, psi=ONE, period=1)
    blk = CoefficientBlock(1, 1, [1] * 40, 10**4)
    with pytest.raises(ValueError):
        master_identity_residual(blk, params, 30)


def test_periodic_model_matches_block_series_for_periodic_input():
    # with psi-convolution stripped away the two sides are the raw arrays
    blk = periodic_block([3, 1, 4, 1, 5, 9], repeats=100)
    model = periodic_model_series(blk, 6, 0, 500)
    direct = block_series(blk, 500)
    assert model == direct


# -- remark variant ---------------------------------------------------------------

def test_remark_zero_block():
    params = LiftParams(k=2, d=1, psi=ONE, period=3)
    blk = CoefficientBlock(1, 1, [0] * 400, 10**7)
    res = remark_variant_residual(blk, params, 300)
    assert res.exact_zero


def test_remark_weight32_theta_block():
    psi = principal_character(2)
    t = theta_series(psi, 1, True, 250000)
    blk = block(t, 1, 1)
    params = LiftParams(k=2, d=1, psi=psi, period=2)
    res = remark_variant_residual(blk, params, min(len(blk), 400))
    assert res.exact_zero


def test_remark_scale_equals_weight_flag():
    psi = principal_character(2)
    t = theta_series(psi, 1, True, 90000)
    blk = block(t, 1, 1)
    params = LiftParams(k=1, d=1, psi=psi, period=2)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        res = remark_variant_residual(blk, params, 250)
    assert res.exact_zero
    assert any(issubclass(w.category, ScaleEqualsWeightWarning) for w in caught)


def test_remark_constant_block_period_one():
    params = LiftParams(k=2, d=1, psi=ONE, period=1)
    blk = CoefficientBlock(1, 1, [Fraction(3)] * 400, 10**7)
    res = remark_variant_residual(blk, params, 400)
    assert res.exact_zero


def test_remark_requires_scale():
    params = LiftParams(k=2, d=1, psi=ONE, period=1)
    blk = CoefficientBlock(1, 0, [1] * 40, 10**4)
    with pytest.raises(ValueError):
        remark_variant_residual(blk, params, 30)


def test_remark_sensitivity():
    params = LiftParams(k=2, d=1, psi=ONE, period=2)
    values = [Fraction(1), Fraction(0)] * 200
    values[50] += 1
    blk = CoefficientBlock(1, 1, values, 10**7)
    res = remark_variant_residual(blk, params, 300)
    assert res.witness_index == 51


def test_report_record_schema():
    params = LiftParams(k=1, d=1, psi=ONE, period=3)
    res = master_identity_residual(periodic_block([1], repeats=100), params, 90)
    rec = res.to_report("master_identity", params, 90)
    assert rec == {
        "check": "master_identity", "k": 1, "d": 1, "l": 3, "nmax": 90,
        "residual_exact_zero": True, "witness_index": None,
    }
