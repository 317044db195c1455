"""Short Weierstrass curves over Q and their reductions modulo odd primes."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .ellipmod import FourierSemimodule
from .errors import BadReduction, EvenCharacteristic, SingularCurve
from .hecke import hecke_lambda
from .primes import is_prime

__all__ = [
    "WeierstrassCurve",
    "ReductionReport",
    "MpReport",
    "count_points_bruteforce",
    "good_reduction",
    "reduction_table",
    "mp_formula_check",
    "curve_to_semimodule",
    "restricted_rank_count",
    "read_battery",
]


@dataclass(frozen=True)
class WeierstrassCurve:
    """``y^2 = x^3 + a x + b`` over the integers."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.discriminant == 0:
            raise SingularCurve(f"y^2 = x^3 + {self.a}x + {self.b} is singular")

    @property
    def discriminant(self) -> int:
        return -16 * (4 * self.a**3 + 27 * self.b**2)

    def __str__(self) -> str:
        return f"y^2 = x^3 + {self.a}x + {self.b}"


@dataclass(frozen=True)
class ReductionReport:
    p: int
    good: bool
    count: int
    a_p: int

    def row(self) -> tuple[int, bool, int, int]:
        return self.p, self.good, self.count, self.a_p


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def good_reduction(c: WeierstrassCurve, p: int) -> bool:
    """True for odd primes not dividing the discriminant; p = 2 is excluded by policy."""
    _require_prime(p)
    return p != 2 and c.discriminant % p != 0


def count_points_bruteforce(c: WeierstrassCurve, p: int) -> ReductionReport:
    """``#E(F_p)`` by enumerating every ``(x, y)`` pair, plus the point at infinity."""
    _require_prime(p)
    if p == 2:
        raise EvenCharacteristic("short Weierstrass form degenerates in characteristic 2")
    if c.discriminant % p == 0:
        raise BadReduction(f"{c} has bad reduction at p={p}")
    roots_of = [0] * p
    for y in range(p):
        roots_of[y * y % p] += 1
    a, b = c.a % p, c.b % p
    count = 1 + sum(roots_of[(x * x * x + a * x + b) % p] for x in range(p))
    return ReductionReport(p, True, count, p + 1 - count)


def reduction_table(c: WeierstrassCurve, p_max: int) -> list[ReductionReport]:
    """Reports for every odd prime up to ``p_max``; bad primes carry ``count = a_p = 0``."""
    out = []
    for p in range(3, p_max + 1, 2):
        if not is_prime(p):
            continue
        if good_reduction(c, p):
            out.append(count_points_bruteforce(c, p))
        else:
            out.append(ReductionReport(p, False, 0, 0))
    return out


@dataclass(frozen=True)
class MpReport:
    p: int
    N: int
    m: int
    det: int
    trace: int
    value: int
    root: int

    @property
    def holds(self) -> bool:
        return self.root * self.root == self.value and self.root == self.m


def mp_formula_check(p: int, N: int, m: int) -> MpReport:
    """Evaluate ``sqrt(|det - trace + 1|)`` for ``det = p_N^2``, ``trace = 1 + m^2 + p_N^2``."""
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    p_n = p * N
    det = p_n * p_n
    trace = 1 + m * m + det
    value = abs(det - trace + 1)
    return MpReport(p, N, m, det, trace, value, math.isqrt(value))


def curve_to_semimodule(c: WeierstrassCurve, p_max: int, N: int = 1, branch: str = "minus", side: str = "left") -> FourierSemimodule:
    """One term per good odd prime ``p``: representative ``m_p = #E(F_p)``, coefficient
    ``lambda_branch((p*N)^2, (m_p*N)^2)``."""
    terms = []
    for rep in reduction_table(c, p_max):
        if rep.good:
            terms.append((rep.p, rep.count, hecke_lambda(rep.p * N, rep.count * N, branch)))
    return FourierSemimodule(side, tuple(terms), N)


def restricted_rank_count(c: WeierstrassCurve, p_max: int) -> tuple[int, list[int]]:
    """Number and list of good-reduction odd primes up to ``p_max``.

    This is a count of restricted places, not the Mordell-Weil rank.
    """
    places = [rep.p for rep in reduction_table(c, p_max) if rep.good]
    return len(places), places


def read_battery(text: str) -> list[WeierstrassCurve]:
    """Parse ``a b`` lines; blank lines and ``#`` comments are skipped."""
    curves = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            a, b = line.split()
            curves.append(WeierstrassCurve(int(a), int(b)))
    return curves
