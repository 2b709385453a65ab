"""One-sided averages, their Hurwitz-Lerch continuation, and the parabolic
difference equation.

The plus/minus averages

    Av+_g(t) = sum_{n>=0} lambda^{-n} g(t+n),
    Av-_g(t) = -sum_{n<=-1} lambda^{-n} g(t+n),

both solve Av(t) - lambda^{-1} Av(t+1) = g(t).  Direct summation works in
the absolute-convergence cells (|lambda|>1 for plus, <1 for minus, or
|lambda|=1 with Re r<1); outside them the average of g(z) = (z-i)^{r-2} h(z)
continues through Hurwitz-Lerch zeta values, one per coefficient of h at
infinity.  solve_parabolic gives the classical explicit solutions of the
inhomogeneous equation for Fourier data: incomplete-gamma series for the
cuspidal part, the (z0-t)^{r-1} primitive for the constant part.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence, Tuple, Union

import numpy as np

from .algebra import ARG_CUT_DOWN, ARG_CUT_UP, power_branch
from .cocycles import FormEvaluator
from .errors import BranchError, DomainError, PoleError, RefusalError
from .specfun import eta_power_coeffs, hurwitz_lerch, incomplete_gamma, lerch_b_coeffs

__all__ = [
    "AverageSpec", "average_asymptotic_coeffs", "average_continued",
    "one_sided_average", "solve_parabolic",
]

_UNIT_TOL = 1e-12


@dataclass(frozen=True)
class AverageSpec:
    """Parameters of a one-sided average: multiplier, direction, weight, input.

    g represents an element of D^omega_{2-r}: holomorphic where the shifted
    points t+n land, with g(t) = O(|t|^{Re r - 2}) toward the relevant end.
    """

    lam: complex
    sign: str
    r: complex
    g: Callable[[complex], complex]

    def __post_init__(self):
        if self.lam == 0:
            raise DomainError("multiplier lambda must be nonzero")
        if self.sign not in ("plus", "minus"):
            raise DomainError("sign must be 'plus' or 'minus'")

    @property
    def admissible(self) -> bool:
        """Absolute convergence of the direct sum, cell by cell."""
        mod = abs(complex(self.lam))
        unit = abs(mod - 1.0) <= _UNIT_TOL
        if unit:
            return complex(self.r).real < 1.0
        return mod > 1.0 if self.sign == "plus" else mod < 1.0


def _directed_sum(g: Callable[[complex], complex], lam: complex, sign: str,
                  t: complex, tol: float, max_terms: int,
                  scale_hint: float = 0.0) -> complex:
    # plus: sum_{n>=0} lam^{-n} g(t+n); minus: -sum_{m>=1} lam^m g(t-m).
    # Stopping rule: geometric extrapolation from the observed term ratio,
    # summation by parts on the unit circle, integral comparison at lam=1.
    if sign == "plus":
        mult, step = 1.0 / lam, 1.0
        w, z, out_sign = 1.0 + 0j, complex(t), 1.0
    else:
        mult, step = complex(lam), -1.0
        w, z, out_sign = complex(lam), t - 1.0, -1.0
    unit = abs(abs(mult) - 1.0) <= _UNIT_TOL
    at_one = unit and abs(mult - 1.0) <= _UNIT_TOL
    osc = abs(1.0 - mult) if unit and not at_one else 0.0

    acc = 0j
    window: list = []
    flat_run = 0
    for n in range(max_terms):
        term = w * g(z)
        acc += term
        m = abs(term)
        scale = max(abs(acc), scale_hint, 1e-300)
        if m <= 1e-15 * scale:
            flat_run += 1
        else:
            flat_run = 0
        window.append(m)
        if len(window) > 10:
            window.pop(0)
        if n >= 50:
            if flat_run >= 8:
                return out_sign * acc
            if len(window) == 10 and window[0] > 0 and m > 0:
                rho = (m / window[0]) ** (1.0 / 9.0)
                if at_one:
                    p = -n * math.log(rho) if rho < 1.0 else 0.0
                    tail = math.inf if p <= 1.05 else 1.5 * m * n / (p - 1.0)
                elif unit:
                    tail = 2.0 * m / osc
                else:
                    q = min(max(rho, abs(mult)), 0.999999)
                    tail = m * q / (1.0 - q)
                if tail <= tol * scale:
                    return out_sign * acc
        w *= mult
        z += step
    raise RefusalError(f"average did not reach tol={tol:g} within {max_terms} terms")


def one_sided_average(spec: AverageSpec, t: complex, tol: float = 1e-9,
                      max_terms: int = 2_000_000) -> complex:
    """Direct summation of the one-sided average in its convergence cell."""
    if not spec.admissible:
        raise DomainError(
            "outside the absolute-convergence cell "
            f"(sign={spec.sign}, |lambda|={abs(complex(spec.lam)):.6g}, "
            f"Re r={complex(spec.r).real:.6g}); use average_continued")
    return _directed_sum(spec.g, complex(spec.lam), spec.sign, complex(t),
                         tol, max_terms)


def _coeffs_at_infinity(h: Callable[[complex], complex], radius: float,
                        count: int, samples: int = 256) -> list:
    # Cauchy coefficients of h(z) = sum_k a_k (z-i)^{-k} from a circle about i
    th = 2.0 * math.pi * np.arange(samples) / samples
    zs = 1j + radius * np.exp(1j * th)
    vals = np.array([complex(h(z)) for z in zs])
    c = np.fft.ifft(vals)
    return [complex(c[k]) * radius ** k for k in range(count)]


def average_continued(h: Callable[[complex], complex], r: complex, lam: complex,
                      sign: str, t: complex, N: int = 8, tol: float = 1e-10,
                      radius: float = 8.0, max_terms: int = 2_000_000) -> complex:
    """Av^± of g(z) = (z-i)^{r-2} h(z) by Hurwitz-Lerch continuation.

    h must be holomorphic for |z-i| >= radius with a finite limit at
    infinity, and evaluable along the shifted points t+n.  The first N
    coefficients of h are pushed through H(k+2-r, ...) values; the
    remainder decays like |z|^{Re r-2-N} and is summed directly.
    """
    r = complex(r)
    lam = complex(lam)
    t = complex(t)
    if sign not in ("plus", "minus"):
        raise DomainError("sign must be 'plus' or 'minus'")
    if abs(abs(lam) - 1.0) > 1e-9:
        raise DomainError("continuation is for |lambda| = 1")
    if N < 1 or N <= r.real - 1.0:
        raise DomainError("remainder order N must exceed Re r - 1")
    a = _coeffs_at_infinity(h, radius, N)
    scale_a = max(max(abs(x) for x in a), 1.0)
    kmin = 2 if abs(a[0]) <= 1e-9 * scale_a else 1
    if abs(r.imag) <= 1e-12 and abs(r.real - round(r.real)) <= 1e-12 \
            and round(r.real) >= kmin:
        raise PoleError(f"r = {round(r.real)} is an excluded integer weight")

    alpha = cmath.phase(lam) / (2.0 * math.pi)
    head = 0j
    for k in range(N):
        s = k + 2.0 - r
        if sign == "plus":
            head += a[k] * hurwitz_lerch(s, -alpha, t - 1j, tol=min(tol, 1e-11))
        else:
            head += -a[k] * lam * cmath.exp(1j * math.pi * (k - r)) \
                * hurwitz_lerch(s, alpha, 1.0 + 1j - t, tol=min(tol, 1e-11))

    def g_rem(z: complex) -> complex:
        wk = 1.0 / (z - 1j)
        poly = 0j
        p = 1.0 + 0j
        for k in range(N):
            poly += a[k] * p
            p *= wk
        return power_branch(z - 1j, r - 2.0, ARG_CUT_UP) * (h(z) - poly)

    return head + _directed_sum(g_rem, lam, sign, t, tol, max_terms,
                                scale_hint=max(abs(head), 1e-30))


def average_asymptotic_coeffs(a0: complex, a1: complex, a2: complex,
                              r: complex, lam: complex) -> Tuple[complex, complex, complex]:
    """(c_{-1}, c_0, c_1) of Av^± g as t -> infinity on the real line.

    For g(z) = (iz)^{r-2}(a0 + a1/z + a2/z^2 + ...) both one-sided averages
    expand as i^{r-2}(c_{-1} tau^{r-1} + c_0 tau^{r-2} + c_1 tau^{r-3} + ...)
    in the half-shifted variable tau = t - 1/2 (the shift makes the lambda=1
    column rational in r with no parasitic a0/2 term).
    """
    r = complex(r)
    lam = complex(lam)
    if abs(abs(lam) - 1.0) > 1e-9:
        raise DomainError("asymptotic table is for |lambda| = 1")
    at_one = abs(lam - 1.0) <= _UNIT_TOL
    if at_one:
        for bad in (1.0, 2.0, 3.0):
            if abs(r - bad) <= 1e-12:
                raise PoleError(f"table has a pole at r = {int(bad)} for lambda = 1")
    eps = 1.0 if at_one else 0.0
    mu = 1.0 / lam
    b0_2r, b1_2r = lerch_b_coeffs(mu, 2.0 - r, 1)
    b0_3r = lerch_b_coeffs(mu, 3.0 - r, 0)[0]
    cm1 = eps * a0 / (1.0 - r)
    c0 = eps * a1 / (2.0 - r) + a0 * b0_2r
    c1 = eps * a2 / (3.0 - r) + a1 * b0_3r + a0 * b1_2r
    return (cm1, c0, c1)


# ---------------------------------------------------------------------------
# explicit solutions of the parabolic difference equation
#   lambda^{-1} h(t+1) - h(t) = int_{z0-1}^{z0} (z-t)^{r-2} E(z) dz

FourierData = Union[FormEvaluator, Sequence[Tuple[complex, complex]]]


def _fourier_terms(E: FourierData, r: complex, kmax: int) -> Tuple[Tuple[complex, complex], ...]:
    if isinstance(E, FormEvaluator):
        if E.source == "eta-power":
            if abs(E.weight - r) > 1e-12:
                raise DomainError("eta-power weight disagrees with r")
            p = eta_power_coeffs(r, kmax).coeffs
            return tuple((k + r / 12.0, p[k]) for k in range(kmax + 1))
        if E.source == "constant-one":
            return ((0j, 1.0 + 0j),)
        if E.source == "fourier-series":
            return E.terms
        raise DomainError("quasi-E2 is not Fourier data at the cusp")
    return tuple((complex(n), complex(c)) for n, c in E)


def solve_parabolic(E: FourierData, r: complex, lam: complex, z0: complex,
                    t: complex, tol: float = 1e-10, kmax: int = 200) -> complex:
    """h(t) with lambda^{-1} h(t+1) - h(t) = int_{z0-1}^{z0} (z-t)^{r-2} E(z) dz.

    E(z) = sum c e^{2 pi i n z} with e^{2 pi i n} = lambda throughout.  Terms
    with Re n > 0 integrate to incomplete-gamma values; an n = 0 constant
    contributes (1-r)^{-1}(z0-t)^{r-1} (or -log(z0-t) at r = 1) with
    arg(z0-t) in (-pi/2, 3pi/2).  Terms with Re n < 0 grow toward i*infinity
    and their branch choice is left open, so they are refused.
    """
    r = complex(r)
    lam = complex(lam)
    z0 = complex(z0)
    t = complex(t)
    if z0.imag <= 0:
        raise DomainError("base point must lie in the upper half-plane")
    if z0.real - 1.0 - 1e-12 <= t.real <= z0.real + 1e-12 and t.imag >= z0.imag - 1e-12:
        raise BranchError("t lies in the cut strip above the base point")
    terms = _fourier_terms(E, r, kmax)
    for n, _ in terms:
        if abs(cmath.exp(2j * math.pi * n) - lam) > 1e-8 * max(1.0, abs(lam)):
            raise DomainError(f"Fourier order {n} is inconsistent with lambda")

    acc = 0j
    small = 0
    phase = cmath.exp(1j * math.pi * (r - 1.0) / 2.0)
    for n, c in terms:
        if c == 0:
            continue
        if n == 0:
            if abs(r - 1.0) <= 1e-12:
                ang = cmath.phase(z0 - t)
                if ang < -math.pi / 2.0:
                    ang += 2.0 * math.pi
                acc += -c * (math.log(abs(z0 - t)) + 1j * ang)
            else:
                acc += c * power_branch(z0 - t, r - 1.0, ARG_CUT_DOWN) / (1.0 - r)
            continue
        if n.real <= 0:
            raise RefusalError(
                f"Fourier order {n} with Re n <= 0: the incomplete-gamma branch "
                "is not determined; only cuspidal and constant parts are supported")
        term = c * phase * (2.0 * math.pi * n) ** (1.0 - r) \
            * cmath.exp(2j * math.pi * n * t) \
            * incomplete_gamma(r - 1.0, 2j * math.pi * n * (t - z0))
        acc += term
        if abs(term) < tol * max(abs(acc), 1e-300):
            small += 1
            if small >= 8:
                break
        else:
            small = 0
    return acc
