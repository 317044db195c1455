"""Riemann zeta in double precision and zero location on the critical line.

Euler-Maclaurin summation covers ``Re(s) >= 1/2``; the functional equation
reflects the left half-plane onto it.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from scipy.optimize import brentq
from scipy.special import loggamma

from .errors import PoleAtOne, SearchExhausted

__all__ = [
    "zeta",
    "xi",
    "theta",
    "hardy_z",
    "locate_zero",
    "VARIANT_REAL_PART",
]

_EM_TERMS = 30
_LOG_PI = math.log(math.pi)
_LOG_2 = math.log(2.0)

VARIANT_REAL_PART = {"riemann": 0.5, "bsd": 1.0}


@lru_cache(maxsize=None)
def _em_coefficients(m: int) -> tuple[float, ...]:
    """``B_{2k} / (2k)!`` for ``k = 1..m``, from the exact Bernoulli recurrence."""
    top = 2 * m
    bern = [Fraction(0)] * (top + 1)
    bern[0] = Fraction(1)
    for n in range(1, top + 1):
        acc = Fraction(0)
        for k in range(n):
            acc += math.comb(n + 1, k) * bern[k]
        bern[n] = -acc / (n + 1)
    return tuple(float(bern[2 * k] / math.factorial(2 * k)) for k in range(1, m + 1))


def _zeta_em(s: complex) -> complex:
    n_cut = 20 + int(abs(s.imag))
    head = 0j
    for n in range(1, n_cut):
        head += cmath.exp(-s * math.log(n))
    log_n = math.log(n_cut)
    n_pow = cmath.exp(-s * log_n)
    total = head + n_cut * n_pow / (s - 1) + 0.5 * n_pow
    # rising factorial s (s+1) ... (s+2k-2) times N^{-s-2k+1}
    rising = s
    term_pow = n_pow / n_cut
    inv_n2 = 1.0 / (n_cut * n_cut)
    for k, c in enumerate(_em_coefficients(_EM_TERMS), start=1):
        corr = c * rising * term_pow
        total += corr
        if abs(corr) < 1e-18 * abs(total):
            break
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        term_pow *= inv_n2
    return total


def zeta(s: complex) -> complex:
    """zeta(s) for any complex ``s != 1``."""
    s = complex(s)
    if s == 1:
        raise PoleAtOne("zeta has a pole at s = 1")
    # near s = 0 the reflected point sits on the pole; summation is accurate there
    if s.real >= 0.5 or abs(s) < 0.5:
        return _zeta_em(s)
    w = 1.0 - s
    log_factor = s * _LOG_2 + (s - 1.0) * _LOG_PI + complex(loggamma(w))
    return cmath.exp(log_factor) * cmath.sin(math.pi * s / 2) * _zeta_em(w)


def xi(s: complex) -> complex:
    """Completed zeta ``(s-1) pi^{-s/2} Gamma(s/2+1) zeta(s)``; symmetric under ``s -> 1-s``."""
    s = complex(s)
    if s == 1:
        return 1.0 + 0j
    return (s - 1) * cmath.exp(-s / 2 * _LOG_PI + complex(loggamma(s / 2 + 1))) * zeta(s)


def theta(t: float) -> float:
    return complex(loggamma(0.25 + 0.5j * t)).imag - 0.5 * t * _LOG_PI


def hardy_z(t: float) -> float:
    """Real-valued rotation of zeta on the critical line; its sign changes mark zeros."""
    return (cmath.exp(1j * theta(t)) * zeta(complex(0.5, t))).real


def locate_zero(k: int, t_max: float = 60.0, step: float = 0.05, xtol: float = 1e-13) -> float:
    """Ordinate of the k-th zero of zeta on Re(s) = 1/2, by sign-change scan and bisection."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    found = 0
    n_steps = int(round(t_max / step))
    t0 = step
    z0 = hardy_z(t0)
    for i in range(2, n_steps + 1):
        t1 = i * step
        z1 = hardy_z(t1)
        if z0 == 0.0 or z0 * z1 < 0:
            found += 1
            if found == k:
                if z0 == 0.0:
                    return t0
                return brentq(hardy_z, t0, t1, xtol=xtol, rtol=1e-15)
        t0, z0 = t1, z1
    raise SearchExhausted(f"only {found} sign changes in (0, {t_max}]; zero #{k} not bracketed")
