"""Tests for eta powers, incomplete gamma, hypergeometrics, and Hurwitz-Lerch."""

import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from scipy.integrate import quad

from eichler import (
    BranchError,
    DomainError,
    PoleError,
    RefusalError,
    eta_power_coeffs,
    eta_power_eval,
    gauss_2f1,
    hurwitz_lerch,
    hurwitz_lerch_detailed,
    incomplete_gamma,
    kummer_1f1,
    kummer_1f1_detailed,
    lerch_asymptotic,
    lerch_b_coeffs,
)

mp.mp.dps = 30

RNG_SEED = 20260814


def rel_err(got, want):
    return abs(got - want) / max(abs(want), 1e-300)


# ---------------------------------------------------------------------------
# eta power coefficients


def test_eta_p0_is_one():
    for r in (0.0, 12.0, 2.5, 0.5 + 0.5j):
        assert eta_power_coeffs(r, 4).coeffs[0] == 1.0


def test_eta_p1_is_minus_two_r():
    for r in (12.0, 2.5, 0.5 + 0.5j):
        assert abs(eta_power_coeffs(r, 4).coeffs[1] - (-2.0 * r)) < 1e-12


def test_eta_weight_twelve_matches_q_product():
    # oracle: integer expansion of prod_{n<=2} (1 - q^n)^24 up to q^2
    poly = np.array([1.0])
    for n in (1, 2):
        f = np.zeros(n + 1)
        f[0], f[n] = 1.0, -1.0
        for _ in range(24):
            poly = np.polynomial.polynomial.polymul(poly, f)[:3]
    assert poly[1] == -24.0 and poly[2] == 252.0
    got = eta_power_coeffs(12.0, 2).coeffs
    assert abs(got[1] - (-24.0)) < 1e-9
    assert abs(got[2] - 252.0) < 1e-9


def test_eta_half_integer_weights_give_integer_coeffs():
    for r in (3.5, 12.0, -0.5):
        for pk in eta_power_coeffs(r, 48).coeffs:
            assert abs(pk.imag) < 1e-9
            assert abs(pk.real - round(pk.real)) < 1e-9


# ---------------------------------------------------------------------------
# eta power evaluation


def test_eta_eval_weight_zero_is_one():
    assert eta_power_eval(0.0, 0.37 + 2.1j) == 1.0


def test_eta_eval_translation_covariance():
    for r in (3.0, 0.5 + 0.5j):
        for z in (0.3 + 1.2j, -1.8 + 0.7j):
            lhs = eta_power_eval(r, z + 1)
            rhs = cmath.exp(1j * math.pi * r / 6.0) * eta_power_eval(r, z)
            assert rel_err(lhs, rhs) < 1e-11


def test_eta_squared_at_i_matches_product_oracle():
    qi = math.exp(-2 * math.pi)
    prod = 1.0
    for n in range(1, 201):
        prod *= (1.0 - qi**n) ** 2
    oracle = prod * math.exp(-math.pi / 6.0)  # 0.590170299508048
    assert abs(eta_power_eval(1.0, 1j) - oracle) < 1e-10


def test_eta_eval_low_point_matches_raw_series():
    # pullback path vs direct Fourier sum at the unreduced point
    r = 3.0
    z = 0.37 + 0.3j
    q = cmath.exp(2j * math.pi * z)
    coeffs = eta_power_coeffs(r, 300).coeffs
    raw = sum(pk * q**k for k, pk in enumerate(coeffs))
    raw *= cmath.exp(1j * math.pi * r * z / 6.0)
    assert rel_err(eta_power_eval(r, z), raw) < 1e-8


def test_eta_inversion_covariance_random():
    # eta^{2r}(-1/z) = (-iz)^r eta^{2r}(z), principal power
    rng = np.random.default_rng(RNG_SEED)
    for r in (3.0, 0.5 + 0.5j):
        for _ in range(10):
            z = complex(rng.uniform(-2, 2), rng.uniform(0.2, 3.0))
            lhs = eta_power_eval(r, -1.0 / z)
            rhs = cmath.exp(r * cmath.log(-1j * z)) * eta_power_eval(r, z)
            assert rel_err(lhs, rhs) < 1e-8


def test_eta_eval_rejects_lower_half_plane():
    with pytest.raises(DomainError):
        eta_power_eval(3.0, 1.0 - 0.5j)
    with pytest.raises(DomainError):
        eta_power_eval(3.0, 0.4)


# ---------------------------------------------------------------------------
# incomplete gamma


def test_gamma_a_one_closed_form():
    for u in (0.3, 2 + 3j, -4 + 1j, 50.0, 0.01 - 0.2j):
        assert rel_err(incomplete_gamma(1.0, u), cmath.exp(-complex(u))) < 1e-11


def test_gamma_recurrence_grid():
    # Gamma(a+1, u) = a Gamma(a, u) + u^a e^{-u} on a 5x5 grid
    avals = (0.5, -1.3, 2 + 1j, -0.5 - 2j, 3.7)
    uvals = (0.3, 2.0, 5 + 1j, -3 + 4j, 20.0)
    for a in avals:
        for u in uvals:
            a, u = complex(a), complex(u)
            lhs = incomplete_gamma(a + 1, u)
            mono = cmath.exp(a * cmath.log(u) - u)
            rhs = a * incomplete_gamma(a, u) + mono
            scale = max(abs(lhs), abs(mono), 1e-300)
            assert abs(lhs - rhs) / scale < 1e-10


def test_gamma_half_one_against_quadrature_oracle():
    oracle, est = quad(lambda t: t**-0.5 * math.exp(-t), 1.0, np.inf,
                       epsabs=1e-14, epsrel=1e-13)
    assert est < 1e-12  # oracle itself is trustworthy
    assert abs(oracle - 0.27880558528066196) < 1e-13
    assert rel_err(incomplete_gamma(0.5, 1.0), oracle) < 1e-11


def test_gamma_against_mpmath_grid():
    rng = np.random.default_rng(RNG_SEED)
    for _ in range(40):
        a = complex(rng.uniform(-4, 4), rng.uniform(-2, 2))
        radius = math.exp(rng.uniform(math.log(0.2), math.log(80.0)))
        theta = rng.uniform(-0.98 * math.pi, 0.98 * math.pi)
        u = radius * cmath.exp(1j * theta)
        want = complex(mp.gammainc(mp.mpc(a), mp.mpc(u)))
        assert rel_err(incomplete_gamma(a, u), want) < 1e-10


def test_gamma_rejects_the_cut():
    with pytest.raises(BranchError):
        incomplete_gamma(0.5, -2.0)
    with pytest.raises(BranchError):
        incomplete_gamma(0.5, 0.0)


# ---------------------------------------------------------------------------
# Gauss 2F1


def test_2f1_at_zero_is_one():
    assert gauss_2f1(1.3, -0.4 + 2j, 0.9, 0.0) == 1.0


def test_2f1_log_closed_form():
    want = -math.log(0.5) / 0.5
    assert abs(gauss_2f1(1, 1, 2, 0.5) - want) <= 1e-12


def test_2f1_complex_parameters_against_compensated_oracle():
    # 200-term sum with Neumaier compensation on real and imaginary parts
    r, mu, x = 0.6 + 0.2j, 2, 0.3
    a, b, c = 1.0 + mu, 1 - r, 2 - r

    def comp_sum(vals):
        s = 0.0
        corr = 0.0
        for v in vals:
            t = s + v
            if abs(s) >= abs(v):
                corr += (s - t) + v
            else:
                corr += (v - t) + s
            s = t
        return s + corr

    term = 1.0 + 0j
    res, ims = [1.0], [0.0]
    for n in range(200):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * x
        res.append(term.real)
        ims.append(term.imag)
    oracle = complex(comp_sum(res), comp_sum(ims))
    assert abs(oracle - (1.4127440605808996 - 0.14886298006138576j)) < 1e-14
    assert rel_err(gauss_2f1(a, b, c, x), oracle) < 1e-13


def test_2f1_refusal_and_domain_errors():
    with pytest.raises(RefusalError):
        gauss_2f1(1, 1, 2, 0.96)
    with pytest.raises(DomainError):
        gauss_2f1(1, 1, 0, 0.5)
    with pytest.raises(DomainError):
        gauss_2f1(1, 1, -2.0, 0.5)
    with pytest.raises(DomainError):
        gauss_2f1(1, 1, 2, -0.1)


# ---------------------------------------------------------------------------
# Kummer 1F1


def test_1f1_at_zero_is_one():
    assert kummer_1f1(0.7 - 0.1j, 1.9, 0.0) == 1.0


def test_1f1_exponential_closed_form():
    want = (math.exp(2.0) - 1.0) / 2.0
    assert abs(kummer_1f1(1, 2, 2.0) - want) <= 1e-12


def test_1f1_negative_argument_is_stable():
    # Kummer transform route; naive series would lose ~e^{25} of accuracy
    want = complex(mp.hyp1f1(1.3, 2.6, -25.0))
    assert rel_err(kummer_1f1(1.3, 2.6, -25.0), want) < 1e-11


def test_1f1_asymptotic_leading_term():
    r = 2.5
    t = 60.0
    val = kummer_1f1(1 - r, 2 - r, t)
    lead = (1 - r) * math.exp(t) / t
    assert abs(val / lead - 1.0) < 0.05


def test_1f1_asymptotic_against_mpmath():
    for a, b, t in ((0.7, 1.9, 45.0), (-1.5, -0.5, 52.0), (1 - 2.5, 2 - 2.5, 31.0)):
        val, est = kummer_1f1_detailed(a, b, t)
        want = complex(mp.hyp1f1(a, b, t))
        assert rel_err(val, want) < 1e-8
        assert rel_err(val, want) < 10.0 * max(est, 1e-12)


def test_1f1_rejects_nonpositive_integer_b():
    with pytest.raises(DomainError):
        kummer_1f1(0.5, -1.0, 2.0)


# ---------------------------------------------------------------------------
# Hurwitz-Lerch zeta


def zeta3_oracle():
    # 1e6 direct terms plus integral tail and half term
    n = np.arange(1, 1_000_001, dtype=np.float64)
    head = float(np.sum(1.0 / n**3))
    N = 1_000_001.0
    return head + N**-2 / 2 + 0.5 * N**-3


def test_lerch_reduces_to_hurwitz_zeta():
    oracle = zeta3_oracle()
    assert abs(oracle - 1.202056903159595) < 1e-12
    assert abs(hurwitz_lerch(3.0, 0.0, 1.0) - oracle) < 1e-9


def test_lerch_continuation_equals_direct_sum():
    d = hurwitz_lerch_detailed(2.5, 0.3, 1.7, method="direct")
    c = hurwitz_lerch_detailed(2.5, 0.3, 1.7, method="shifted")
    assert d.method == "direct" and c.method == "shifted"
    assert abs(d.value - c.value) <= 1e-9


def test_lerch_shift_identity_m7():
    s, a, z, m = 1.3, 0.2, 2.5, 7
    head = sum(cmath.exp(2j * math.pi * a * n) * (z + n) ** -s for n in range(m))
    rhs = head + cmath.exp(2j * math.pi * a * m) * hurwitz_lerch(s, a, z + m)
    assert rel_err(hurwitz_lerch(s, a, z), rhs) < 5e-13
    # for integer a the phase factor drops out
    s, a, z = 2.2, 0.0, 0.7
    rhs = sum((z + n) ** -s for n in range(m)) + hurwitz_lerch(s, a, z + m)
    assert rel_err(hurwitz_lerch(s, a, z), rhs) < 5e-13


def test_lerch_methods_agree_for_re_s_above_one():
    for s in (1.4, 2.2, 3 + 0.4j):
        for a in (0.0, 0.3, 0.1 + 0.2j):
            for z in (1.7, 6 + 2j):
                d = hurwitz_lerch_detailed(s, a, z, method="direct").value
                c = hurwitz_lerch_detailed(s, a, z, method="shifted").value
                assert abs(d - c) <= 1e-9 * max(1.0, abs(d))


def test_lerch_pole_and_domain_errors():
    with pytest.raises(PoleError):
        hurwitz_lerch(1.0, 0.0, 2.5)
    with pytest.raises(PoleError):
        hurwitz_lerch(1.0, 3.0, 2.5)  # a = 3 is still integer after reduction
    with pytest.raises(DomainError):
        hurwitz_lerch(2.0, -0.2j, 2.5)
    with pytest.raises(BranchError):
        hurwitz_lerch(2.0, 0.0, -3.0)


def test_lerch_against_mpmath_grid():
    for s in (2.5, 0.7, 1.6 + 0.4j, -0.5):
        for a in (0.0, 0.25, 0.3 + 0.04j, 0.2j):
            for z in (1.7, 40.5, 0.3, 2.5 + 3j, -3.6 + 0.2j):
                if abs(complex(a)) < 1e-14 and abs(complex(s) - 1) < 1e-14:
                    continue
                lam = mp.e ** (2j * mp.pi * mp.mpc(a))
                want = complex(mp.lerchphi(lam, mp.mpc(s), mp.mpc(z)))
                assert rel_err(hurwitz_lerch(s, a, z), want) < 1e-9


def test_lerch_negative_s_envelope():
    # the continuation stays usable down to Re s > -4, at reduced accuracy
    for s in (-2.5, -3.9):
        for a, z in ((0.45, 1.7), (0.25j, 40.5), (0.0, 6.0)):
            lam = mp.e ** (2j * mp.pi * mp.mpc(a))
            want = complex(mp.lerchphi(lam, mp.mpc(s), mp.mpc(z)))
            assert rel_err(hurwitz_lerch(s, a, z), want) < 1e-7


# ---------------------------------------------------------------------------
# Lerch asymptotics


def test_lerch_b1_at_lambda_one():
    for s in (2.5, 1.3 + 0.7j):
        b = lerch_b_coeffs(1.0, s, 3)
        assert abs(b[0]) < 1e-14
        assert abs(b[1] - (-s / 24.0)) < 1e-13
        assert abs(b[2]) < 1e-14


def test_lerch_b_closed_forms_generic_lambda():
    lam = cmath.exp(2j * math.pi * 0.3)
    s = 2.5 + 0.5j
    b = lerch_b_coeffs(lam, s, 2)
    assert abs(b[0] - 1.0 / (1.0 - lam)) < 1e-12
    assert abs(b[1] - (-(s / 2.0) * (1.0 + lam) / (1.0 - lam) ** 2)) < 1e-12


def test_lerch_b_reflection_identity():
    # lambda^{-1} b_k(lambda^{-1}, s) = (-1)^{k+1} b_k(lambda, s)
    lam = cmath.exp(2j * math.pi / 5.0)
    s = 2.5
    b_plus = lerch_b_coeffs(lam, s, 3)
    b_minus = lerch_b_coeffs(1.0 / lam, s, 3)
    for k in range(4):
        lhs = b_minus[k] / lam
        rhs = (-1) ** (k + 1) * b_plus[k]
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


def test_lerch_asymptotic_matches_evaluator():
    s, a, z = 2.5, 0.2, 40.5
    val, bound = lerch_asymptotic(s, a, z, 3)
    want = hurwitz_lerch(s, a, z)
    diff = abs(val - want)
    assert diff <= 10.0 * abs(z) ** -5.5
    assert diff <= bound


def test_lerch_asymptotic_lambda_one_leading_term():
    # integer a switches on the t^{1-s}/(s-1) term; a sign slip there would
    # show up at the 1e-3 level against the 1e-9 scale seen here
    s, z = 2.5, 40.5
    val, bound = lerch_asymptotic(s, 0.0, z, 3)
    want = hurwitz_lerch(s, 0.0, z)
    assert abs(val - want) <= bound
    assert abs(val - want) <= 1e-8


def test_lerch_asymptotic_error_scaling():
    s, a, K = 2.5, 0.2, 3
    errs = []
    for z in (40.0, 80.0):
        val, _ = lerch_asymptotic(s, a, z, K)
        errs.append(abs(val - hurwitz_lerch(s, a, z)))
    ratio = errs[1] / errs[0]
    model = 2.0 ** -(s + K)
    assert model / 4.0 <= ratio <= model * 4.0


def test_lerch_asymptotic_sector_and_order_errors():
    with pytest.raises(DomainError):
        lerch_asymptotic(2.5, 0.2, 40.5, 4)
    with pytest.raises(DomainError):
        lerch_asymptotic(2.5, 0.2, -5 + 0.5j, 3)
