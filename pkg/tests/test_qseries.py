import random
from fractions import Fraction

import pytest

from qblocks.chars import enumerate_characters, principal_character, twist_psi_d
from qblocks.cyclo import CycloNumber, as_cyclo
from qblocks.qseries import (
    CoefficientBlock,
    QExpansion,
    block,
    hecke_Tp2,
    shift_V,
    theta_series,
    tp2_eigenvalue,
)

ONE = principal_character(1)


def psi_mod12_pm():
    """The mod-12 character with values 1 at +-1 and -1 at +-5."""
    cands = [c for c in enumerate_characters(12)
             if c.eval(1) == 1 and c.eval(11) == 1
             and c.eval(5) == -1 and c.eval(7) == -1]
    assert len(cands) == 1
    return cands[0]


# -- theta constructors ----------------------------------------------------

def test_theta_weight_half_principal():
    t = theta_series(ONE, 1, False, 10)
    assert t.weight_twice == 1
    support = {n: t.coeffs[n] for n in range(10) if t.coeffs[n]}
    assert set(support) == {1, 4, 9}
    assert all(v == 1 for v in support.values())


def test_theta_eta_like_pattern():
    # psi(+-1) = 1, psi(+-5) = -1 mod 12: q - q^25 - q^49 below q^50
    t = theta_series(psi_mod12_pm(), 1, False, 50)
    support = {n: t.coeffs[n] for n in range(50) if t.coeffs[n]}
    assert set(support) == {1, 25, 49}
    assert support[1] == 1 and support[25] == -1 and support[49] == -1


def test_theta_weight_three_half():
    t = theta_series(principal_character(2), 1, True, 50)
    assert t.weight_twice == 3
    support = {n: as_cyclo(t.coeffs[n]).as_rational()
               for n in range(50) if t.coeffs[n]}
    assert support == {1: 1, 9: 3, 25: 5, 49: 7}


def test_theta_rejects_bad_d():
    with pytest.raises(ValueError):
        theta_series(ONE, 4, False, 10)


@pytest.mark.parametrize("d", [1, 2, 3, 5])
def test_theta_block_identity(d):
    # block of theta at its own d recovers psi(n) exactly
    for M in (1, 3, 8, 12):
        for psi in enumerate_characters(M):
            t = theta_series(psi, d, False, d * 40**2 + 1)
            blk = block(t, d, 0)
            for n in range(1, len(blk) + 1):
                assert as_cyclo(blk.values[n - 1]) == psi.eval(n)


# -- V_l ---------------------------------------------------------------------

def test_shift_identity():
    f = QExpansion(5, [0, 1, 0, 2, 0], weight_twice=2)
    assert shift_V(f, 1) is f


def test_shift_dilates_indices():
    f = QExpansion(3, [0, 1, 2], weight_twice=2, level=7)
    g = shift_V(f, 3)
    assert g.precision == 7
    assert g.coeffs[3] == 1 and g.coeffs[6] == 2
    assert sum(1 for c in g.coeffs if c) == 2
    assert g.level == 21


def test_shift_block_compatibility():
    # blocks of f|V_{l^2} at d match blocks of f at d with index scaled by l
    t = theta_series(ONE, 1, False, 1000)
    l = 2
    g = shift_V(t, l * l)
    b_g = block(g, 1, 0)
    b_f = block(t, 1, 0)
    for n in range(1, len(b_g) + 1):
        expect = b_f.values[n // l - 1] if n % l == 0 else 0
        assert as_cyclo(b_g.values[n - 1]) == as_cyclo(expect)


def test_shift_block_recovers_pattern_at_dl():
    # dilating theta by square-free l puts the psi pattern in the d = l block
    psi = enumerate_characters(3)[1]
    t = theta_series(psi, 1, False, 500)
    g = shift_V(t, 3)
    blk = block(g, 3, 0)
    for n in range(1, len(blk) + 1):
        assert as_cyclo(blk.values[n - 1]) == psi.eval(n)


# -- T(p^2) ------------------------------------------------------------------

def test_hecke_zero_in_zero_out():
    z = QExpansion(200, [0] * 200, weight_twice=3)
    hz = hecke_Tp2(z, 3, ONE)
    assert all(c == 0 for c in hz.coeffs)
    assert hz.precision == (200 - 1) // 9 + 1


def test_hecke_rejects_bad_input():
    f = QExpansion(20, [0] + [1] * 19, weight_twice=4)  # integral weight
    with pytest.raises(ValueError):
        hecke_Tp2(f, 3, ONE)
    g = QExpansion(20, [0] + [1] * 19, weight_twice=3)
    with pytest.raises(ValueError):
        hecke_Tp2(g, 6, ONE)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_weight32_theta_is_eigenform(p):
    """Solve lambda from the first nonzero coefficient, brute-check the rest."""
    psi = principal_character(2)
    neb = twist_psi_d(psi, 1, 1)
    t = theta_series(psi, 1, True, 3000)
    lam = tp2_eigenvalue(t, p, neb)
    assert lam is not None
    assert lam.as_rational() == p + 1


def test_eigenvalue_none_for_non_eigenform():
    rng = random.Random(9)
    f = QExpansion(500, [0] + [rng.randrange(1, 5) for _ in range(499)], weight_twice=3)
    assert tp2_eigenvalue(f, 3, ONE) is None


def test_hecke_squares_support_identity():
    # a(n) supported on squares n = m^2 with p coprime to m:
    # b(m^2) = a(p^2 m^2) + psi(p) ((-1)^k m^2/p) p^(k-1) a(m^2)
    from qblocks.chars import kronecker

    psi = twist_psi_d(principal_character(2), 1, 1)
    t = theta_series(principal_character(2), 1, True, 4000)
    p, k = 3, 1
    h = hecke_Tp2(t, p, psi)
    for m in (1, 5, 7, 11):
        n = m * m
        expect = as_cyclo(t.coeffs[p * p * n]) + \
            psi.eval(p) * kronecker((-1) ** k * n, p) * p ** (k - 1) * as_cyclo(t.coeffs[n])
        assert as_cyclo(h.coeffs[n]) == expect


def test_hecke_linearity():
    rng = random.Random(4)
    psi = twist_psi_d(principal_character(2), 1, 1)
    f1 = QExpansion(700, [0] + [rng.randrange(-5, 6) for _ in range(699)], weight_twice=5)
    f2 = QExpansion(700, [0] + [rng.randrange(-5, 6) for _ in range(699)], weight_twice=5)
    assert hecke_Tp2(f1 + f2, 5, psi) == hecke_Tp2(f1, 5, psi) + hecke_Tp2(f2, 5, psi)


def test_hecke_weight_half_exact_fractions():
    # k = 0 terms carry 1/p and must stay exact
    t = theta_series(ONE, 1, False, 400)
    h = hecke_Tp2(t, 3, ONE)
    for n in range(1, h.precision):
        v = as_cyclo(h.coeffs[n]).as_rational()
        assert v is not None
        assert Fraction(v).denominator in (1, 3)


# -- blocks ------------------------------------------------------------------

def test_block_lengths():
    t = theta_series(ONE, 1, False, 101)
    assert len(block(t, 1, 0)) == 10
    assert len(block(t, 2, 0)) == 7
    assert len(block(t, 5, 0)) == 4


def test_block_scaled_values_exact():
    t = theta_series(principal_character(2), 1, True, 2000)
    blk = block(t, 1, 1)
    pattern = [as_cyclo(v).as_rational() for v in blk.values[:8]]
    assert pattern == [1, 0, 1, 0, 1, 0, 1, 0]
    blk2 = block(t, 1, 2)
    assert as_cyclo(blk2.values[2]).as_rational() == Fraction(1, 3)


def test_block_zero_off_support():
    t = theta_series(principal_character(2), 1, True, 2000)
    blk = block(t, 2, 0)
    assert all(v == 0 for v in blk.values)


def test_block_periodicity_helpers():
    blk = CoefficientBlock(1, 0, [1, -1] * 20, 10**4)
    assert blk.is_periodic(2)
    assert blk.is_periodic(4)
    assert not blk.is_periodic(3)
    assert blk.first_period_break(3) == 1


# -- expansions --------------------------------------------------------------

def test_addition_weight_mismatch():
    f = QExpansion(5, [0, 1, 0, 0, 0], weight_twice=3)
    g = QExpansion(5, [0, 1, 0, 0, 0], weight_twice=5)
    with pytest.raises(ValueError):
        f + g


def test_addition_minimum_precision():
    f = QExpansion(5, [0, 1, 2, 3, 4], weight_twice=3)
    g = QExpansion(3, [0, 10, 20], weight_twice=3)
    s = f + g
    assert s.precision == 3
    assert s.coeffs == [0, 11, 22]


def test_cuspidal_constant_term_enforced():
    with pytest.raises(ValueError):
        QExpansion(3, [1, 0, 0], weight_twice=3, cuspidal=True)
