"""Global elliptic semimodules as truncated Fourier series.

A left series evaluates ``sum c(n, m) * exp(+2*pi*i*n*x)``, a right series uses
``exp(-2*pi*i*n*x)``.  Coefficients stay exact (:class:`QuadNum`) and are only
lowered to floating point inside :func:`evaluate`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import GridMismatch, NegativeInput, UnknownClass, UnknownRule, WrongRule
from .exactalg import QuadNum, sqrt_rational
from .hecke import BRANCHES, hecke_lambda
from .placelat import PlaceSpec

__all__ = [
    "FourierSemimodule",
    "BisemiProduct",
    "SupercuspidalRep",
    "RULES",
    "build_phi",
    "evaluate",
    "exact_coefficient_sum",
    "eis_coefficient",
    "semitorus_split",
    "diagonal_tensor",
    "kernel_bipoints",
    "apply_nilpotent_multiplicity",
    "dumps",
    "loads",
]

SIDES = ("left", "right")
RULES = ("hecke", "simple")

Term = tuple[int, int, QuadNum]


@dataclass(frozen=True)
class FourierSemimodule:
    side: str
    terms: tuple[Term, ...]
    N: int = 1

    def __post_init__(self) -> None:
        if self.side not in SIDES:
            raise ValueError(f"side must be one of {SIDES}, got {self.side!r}")
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        terms = tuple((int(n), int(m), QuadNum.coerce(c)) for n, m, c in self.terms)
        keys = [(n, m) for n, m, _ in terms]
        if any(n < 1 or m < 0 for n, m in keys):
            raise ValueError("class index n must be >= 1 and representative m >= 0")
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate (n, m) term")
        ns = [n for n, _ in keys]
        if ns != sorted(ns):
            raise ValueError("terms must be grouped by ascending n")
        object.__setattr__(self, "terms", terms)

    @property
    def grid(self) -> tuple[tuple[int, int], ...]:
        return tuple((n, m) for n, m, _ in self.terms)

    def mirror(self) -> FourierSemimodule:
        """Same coefficients on the opposite side."""
        return replace(self, side="right" if self.side == "left" else "left")

    def __len__(self) -> int:
        return len(self.terms)


def build_phi(spec: PlaceSpec, rule: str, branch: str = "plus", side: str = "left") -> FourierSemimodule:
    """Series over the place grid ``n = 1..s``, ``m = 0..m(n)-1``.

    ``hecke``: ``c(n, m) = lambda_branch((n*N)^2, (m*N)^2)``.
    ``simple``: one term per class, ``c(n, 0) = n*N``.
    """
    if rule not in RULES:
        raise UnknownRule(f"unknown coefficient rule {rule!r}; expected one of {RULES}")
    if branch not in BRANCHES:
        raise ValueError(f"branch must be one of {BRANCHES}, got {branch!r}")
    N = spec.N
    terms: list[Term] = []
    for n in range(1, spec.s + 1):
        if rule == "simple":
            terms.append((n, 0, QuadNum(n * N)))
            continue
        for m in range(spec.multiplicities[n - 1]):
            terms.append((n, m, hecke_lambda(n * N, m * N, branch)))
    return FourierSemimodule(side, tuple(terms), N)


def evaluate(phi: FourierSemimodule, x: float) -> complex:
    sign = 1.0 if phi.side == "left" else -1.0
    x = math.fmod(x, 1.0)
    total = 0j
    for n, _, c in phi.terms:
        # reduce n*x first so the phase stays accurate for large n
        phase = math.fmod(n * x, 1.0)
        total += complex(c) * cmath.exp(sign * 2j * math.pi * phase)
    return total


def exact_coefficient_sum(phi: FourierSemimodule) -> dict[int, QuadNum]:
    """Coefficient sum grouped by radicand (mixed radicands do not add exactly)."""
    groups: dict[int, QuadNum] = {}
    for _, _, c in phi.terms:
        if c.is_rational:
            groups[1] = groups.get(1, QuadNum(0)) + c
        else:
            groups[c.d] = groups.get(c.d, QuadNum(0)) + c
    return groups


def eis_coefficient(n: int, N: int) -> tuple[int, int]:
    """Weight-two coefficient pair ``(n*N, sigma_1(n))``."""
    if n < 1 or N < 1:
        raise ValueError("n and N must be >= 1")
    sigma = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            sigma += d
            if d * d != n:
                sigma += n // d
        d += 1
    return n * N, sigma


def semitorus_split(lam: int | Fraction | float) -> tuple:
    """Symmetric split of ``lam`` into two radii whose product is ``lam``.

    Exact (rational) radii when ``lam`` is the square of a rational, floats otherwise.
    """
    if lam < 0:
        raise NegativeInput(f"cannot split a negative value {lam}")
    if isinstance(lam, (int, Fraction)):
        root = sqrt_rational(lam)
        if root.is_rational:
            return root.a, root.a
        r = float(root)
        return r, r
    r = math.sqrt(lam)
    return r, r


@dataclass(frozen=True)
class BisemiProduct:
    terms: tuple[tuple[int, int, QuadNum, QuadNum], ...]

    def __len__(self) -> int:
        return len(self.terms)


def diagonal_tensor(phi_r: FourierSemimodule, phi_l: FourierSemimodule) -> BisemiProduct:
    """Keep only matched ``(n, m)`` pairs of a right and a left series."""
    if phi_r.side != "right" or phi_l.side != "left":
        raise GridMismatch(f"expected (right, left) sides, got ({phi_r.side}, {phi_l.side})")
    if phi_r.grid != phi_l.grid:
        raise GridMismatch("right and left series have different (n, m) grids")
    return BisemiProduct(
        tuple((n, m, cr, cl) for (n, m, cr), (_, _, cl) in zip(phi_r.terms, phi_l.terms))
    )


def kernel_bipoints(p: BisemiProduct) -> list[tuple[int, int]]:
    """Doubled class products ``(2*c_R) * (2*c_L)``; equals ``4 n^2`` for the simple rule."""
    out = []
    for n, m, cr, cl in p.terms:
        if m != 0 or cr != n or cl != n:
            raise WrongRule(f"term ({n}, {m}) does not follow the simple rule at N=1")
        out.append((n, int((2 * cr * 2 * cl).rational())))
    return out


@dataclass(frozen=True)
class SupercuspidalRep:
    classes: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        classes = tuple((int(n), int(m)) for n, m in self.classes)
        ns = [n for n, _ in classes]
        if ns != sorted(set(ns)):
            raise ValueError("class indices must be unique and ascending")
        if any(m < 1 for _, m in classes):
            raise ValueError("multiplicities must be >= 1")
        object.__setattr__(self, "classes", classes)

    def multiplicity(self, n: int) -> int:
        for k, m in self.classes:
            if k == n:
                return m
        raise UnknownClass(f"class {n} not present")


def apply_nilpotent_multiplicity(rep: SupercuspidalRep, n: int, m: int) -> SupercuspidalRep:
    if m < 1:
        raise ValueError(f"multiplicity must be >= 1, got {m}")
    rep.multiplicity(n)
    return SupercuspidalRep(tuple((k, m if k == n else mk) for k, mk in rep.classes))


def dumps(phi: FourierSemimodule) -> str:
    """Line form: header ``side N``, then one ``n m a b d`` line per term."""
    lines = [f"# side={phi.side} N={phi.N}"]
    lines += [f"{n} {m} {c.a} {c.b} {c.d}" for n, m, c in phi.terms]
    return "\n".join(lines) + "\n"


def loads(text: str) -> FourierSemimodule:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise ValueError("missing '# side=... N=...' header")
    header = dict(tok.split("=", 1) for tok in lines[0].lstrip("#").split())
    terms = []
    for ln in lines[1:]:
        n, m, a, b, d = ln.split()
        terms.append((int(n), int(m), QuadNum(Fraction(a), Fraction(b), int(d))))
    return FourierSemimodule(header["side"], tuple(terms), int(header.get("N", 1)))
