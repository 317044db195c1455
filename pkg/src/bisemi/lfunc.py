"""Hecke L-series partial sums, Euler products and the zero maps.

Series coefficients are the level-scaled Hecke eigenvalues
``lambda_branch(n_N^2, m_N^2)`` of :mod:`bisemi.hecke`, evaluated here in
vectorised double precision.  The zero maps send the square of a trivial zero
``(-2n)^2`` to the determinant of ``D @ E @ alpha`` (times ``M = diag(1, 2)``
for the BSD variant), whose eigenvalues sit on ``Re = 1/2`` (resp. ``Re = 1``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import ClassOutOfRange, GridMismatch, SubcriticalEnergy
from .exactalg import Mat2Q, QuadNum, eigen_quad
from .hecke import BRANCHES
from .primes import primes_upto
from .zeta import VARIANT_REAL_PART, locate_zero, zeta

__all__ = [
    "SeriesSpec",
    "PartitionResult",
    "EulerProduct",
    "ZeroCandidate",
    "ZeroMapReport",
    "lambda_values",
    "partial_sum",
    "degenerate_product",
    "euler_product",
    "partition_series",
    "zeta_numeric",
    "locate_zeta_zero",
    "zero_map_matrix",
    "nontrivial_candidate",
    "energy_from_tau",
    "zero_map_check",
]

VARIANTS = ("riemann", "bsd")
MRule = Union[int, Mapping[int, int]]


@dataclass(frozen=True)
class SeriesSpec:
    """Truncated Hecke L-series ``sum_{n <= n_max} lambda_branch(n_N^2, m(n)_N^2) n^{-s}``.

    ``m`` is a constant representative index or a per-class table (missing
    classes use 0).  ``classes`` restricts the sum to a subset of ``1..n_max``;
    ``coefficients`` replaces the Hecke rule by an explicit per-class table.
    """

    branch: str = "minus"
    N: int = 1
    m: MRule = 0
    n_max: int = 1000
    classes: frozenset[int] | None = None
    coefficients: Mapping[int, complex] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.branch not in BRANCHES:
            raise ValueError(f"branch must be one of {BRANCHES}, got {self.branch!r}")
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        if self.classes is not None:
            object.__setattr__(self, "classes", frozenset(int(c) for c in self.classes))

    def class_array(self) -> np.ndarray:
        if self.classes is None:
            return np.arange(1, self.n_max + 1, dtype=np.int64)
        return np.array(sorted(c for c in self.classes if 1 <= c <= self.n_max), dtype=np.int64)

    def m_array(self, n: np.ndarray) -> np.ndarray:
        if isinstance(self.m, Mapping):
            return np.array([self.m.get(int(k), 0) for k in n], dtype=np.float64)
        return np.full(n.shape, float(self.m))


def lambda_values(n: np.ndarray, m: np.ndarray, N: int, branch: str) -> np.ndarray:
    """Vectorised ``lambda_branch((n*N)^2, (m*N)^2)``.

    The discriminant factors as ``((n_N-1)^2 + m_N^2) ((n_N+1)^2 + m_N^2)`` and the
    minus root is taken as ``det / lambda_plus`` to avoid cancellation.
    """
    n_n = np.asarray(n, dtype=np.float64) * N
    m_n = np.asarray(m, dtype=np.float64) * N
    trace = 1.0 + m_n * m_n + n_n * n_n
    root = np.sqrt(((n_n - 1.0) ** 2 + m_n * m_n) * ((n_n + 1.0) ** 2 + m_n * m_n))
    plus = 0.5 * (trace + root)
    if branch == "plus":
        return plus
    return (n_n * n_n) / plus


def _coefficients(spec: SeriesSpec, n: np.ndarray) -> np.ndarray:
    if spec.coefficients is not None:
        return np.array([complex(spec.coefficients.get(int(k), 0.0)) for k in n], dtype=np.complex128)
    return lambda_values(n, spec.m_array(n), spec.N, spec.branch).astype(np.complex128)


def _dirichlet(coeff: np.ndarray, n: np.ndarray, s: complex) -> complex:
    if n.size == 0:
        return 0j
    return complex(np.sum(coeff * np.exp(-complex(s) * np.log(n.astype(np.float64)))))


def partial_sum(spec: SeriesSpec, s: complex) -> complex:
    n = spec.class_array()
    return _dirichlet(_coefficients(spec, n), n, s)


def degenerate_product(spec_r: SeriesSpec, spec_l: SeriesSpec, x: float) -> float:
    """Diagonal product ``sum_n lambda_R(n) lambda_L(n) n^{-2x}``; cross terms are dropped."""
    n_r = spec_r.class_array()
    n_l = spec_l.class_array()
    if not np.array_equal(n_r, n_l):
        raise GridMismatch("right and left series run over different classes")
    value = _dirichlet(_coefficients(spec_r, n_r) * _coefficients(spec_l, n_l), n_r, 2 * x)
    return value.real


@dataclass(frozen=True)
class EulerProduct:
    value: complex
    p_max: int
    n_factors: int
    # largest |(1 - a_q)^{-1}|; a blow-up here flags the non-convergent region
    max_factor: float
    # |lambda^2 q^{-s}| at the largest prime used; a truncation indicator
    last_term: float = 0.0

    @property
    def diverging(self) -> bool:
        # the local geometric series stops converging once its ratio reaches 1
        return not math.isfinite(self.max_factor) or self.max_factor > 1e12 or self.last_term >= 1.0


def euler_product(
    spec: SeriesSpec,
    s: complex,
    p_max: int,
    character: Mapping[int, complex] | Callable[[int], complex] | None = None,
    m_grid: Sequence[int] | None = None,
    weight: int = 1,
) -> EulerProduct:
    """Finite Euler product over primes ``q <= p_max``.

    Factors are ``(1 - lambda^2(q) q^{-s})^{-1}`` for ``q | N`` and
    ``(1 - lambda^2(q) eps(q)^2 q^{2k-2-s})^{-1}`` otherwise, with
    ``lambda^2(q) = sum_m lambda^2(q_N^2, m_N^2)`` over ``m_grid`` (default: the
    spec's own ``m``).  ``eps`` is a table or callable on residues mod ``N``,
    trivial by default.  With ``weight=1`` and ``lambda = 1`` this is zeta(s).
    """
    q = primes_upto(p_max)
    if spec.classes is not None:
        q = q[np.isin(q, np.fromiter(spec.classes, dtype=np.int64))]
    if m_grid is None:
        lam2 = _coefficients(spec, q) ** 2
    else:
        lam2 = np.zeros(q.shape, dtype=np.complex128)
        for m in m_grid:
            lam2 += lambda_values(q, np.full(q.shape, float(m)), spec.N, spec.branch) ** 2
    divides = (spec.N % q) == 0
    if character is None:
        eps = np.ones(q.shape, dtype=np.complex128)
    else:
        lookup = character if callable(character) else (lambda r: character.get(r, 0.0))
        eps = np.array([complex(lookup(int(k) % spec.N)) for k in q], dtype=np.complex128)
    s = complex(s)
    logq = np.log(q.astype(np.float64))
    ramified = lam2 * np.exp(-s * logq)
    unramified = lam2 * eps**2 * np.exp((2 * weight - 2 - s) * logq)
    a = np.where(divides, ramified, unramified)
    with np.errstate(divide="ignore", invalid="ignore"):
        factors = 1.0 / (1.0 - a)
    value = complex(np.prod(factors)) if q.size else 1.0 + 0j
    max_factor = float(np.max(np.abs(factors))) if q.size else 1.0
    last_term = float(abs(a[-1])) if q.size else 0.0
    return EulerProduct(value, p_max, int(q.size), max_factor, last_term)


@dataclass(frozen=True)
class PartitionResult:
    kept: SeriesSpec
    complement: SeriesSpec


def partition_series(spec: SeriesSpec, kept_classes: Iterable[int]) -> PartitionResult:
    """Split a series into the subseries on ``kept_classes`` and the residual one."""
    universe = set(spec.class_array().tolist())
    kept = frozenset(int(c) for c in kept_classes)
    stray = kept - universe
    if stray:
        raise ClassOutOfRange(f"classes {sorted(stray)} are not in the series")
    return PartitionResult(
        replace(spec, classes=kept),
        replace(spec, classes=frozenset(universe - kept)),
    )


def zeta_numeric(s: complex) -> complex:
    return zeta(s)


def locate_zeta_zero(k: int, variant: str = "riemann", t_max: float = 60.0, step: float = 0.05) -> float:
    """k-th positive ordinate of a zeta zero on the critical line.

    The BSD variant reports the same ordinate; its shifted real part is
    ``VARIANT_REAL_PART['bsd']``.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    return locate_zero(k, t_max=t_max, step=step)


Energy = Union[int, Fraction, float]
_I = QuadNum(0, 1, -1)


def _is_exact(e: Energy) -> bool:
    return isinstance(e, (int, Fraction)) and not isinstance(e, bool)


def zero_map_matrix(n: int, energy: int | Fraction, variant: str) -> Mat2Q:
    """``D @ E @ alpha`` (riemann) or ``D @ E @ alpha @ M`` (bsd) over Q(i).

    ``D = [[1, i], [0, 1]] @ [[1, 0], [i, 1]]``, ``E = diag(energy, 1)``,
    ``alpha = diag(4 n^2, 1)``, ``M = diag(1, 2)``.
    """
    d = Mat2Q(1, _I, 0, 1) @ Mat2Q(1, 0, _I, 1)
    out = d @ Mat2Q.diag(Fraction(energy), 1) @ Mat2Q.diag(4 * n * n, 1)
    if variant == "bsd":
        out = out @ Mat2Q.diag(1, 2)
    return out


def _float_zero_map_det(n: int, energy: float, variant: str) -> float:
    i = 1j
    d = ((1 + i * i, i), (i, 1))
    e = (energy * 4 * n * n, 1.0 if variant == "riemann" else 2.0)
    m = ((d[0][0] * e[0], d[0][1] * e[1]), (d[1][0] * e[0], d[1][1] * e[1]))
    return (m[0][0] * m[1][1] - m[0][1] * m[1][0]).real


def _radicand(n: int, energy: Energy, variant: str):
    scale = 16 if variant == "riemann" else 8
    return scale * n * n * energy - 1


@dataclass(frozen=True)
class ZeroCandidate:
    n: int
    E: Energy
    variant: str
    plus: complex
    minus: complex
    product: float
    exact_plus: QuadNum | None = None
    exact_minus: QuadNum | None = None
    exact_product: Fraction | None = None

    @property
    def tau(self) -> float:
        return self.plus.imag


def nontrivial_candidate(n: int, energy: Energy, variant: str = "riemann") -> ZeroCandidate:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    if n < 1:
        raise ValueError(f"class n must be >= 1, got {n}")
    if energy <= 0:
        raise ValueError(f"energy must be positive, got {energy}")
    rad = _radicand(n, energy, variant)
    if rad < 0:
        raise SubcriticalEnergy(f"radicand {rad} < 0 for n={n}, E={energy} ({variant})")
    if _is_exact(energy):
        plus, minus = eigen_quad(zero_map_matrix(n, energy, variant))
        product = (plus * minus).rational()
        return ZeroCandidate(
            n, energy, variant, complex(plus), complex(minus), float(product), plus, minus, product
        )
    root = math.sqrt(rad)
    if variant == "riemann":
        plus, minus = complex(0.5, root / 2), complex(0.5, -root / 2)
        product = 4.0 * n * n * energy
    else:
        plus, minus = complex(1.0, root), complex(1.0, -root)
        product = 8.0 * n * n * energy
    return ZeroCandidate(n, energy, variant, plus, minus, product)


def energy_from_tau(n: int, tau: float, variant: str = "riemann") -> float:
    """Invert the candidate's imaginary part back to the energy parameter."""
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau}")
    if variant == "riemann":
        return (4.0 * tau * tau + 1.0) / (16.0 * n * n)
    if variant == "bsd":
        return (tau * tau + 1.0) / (8.0 * n * n)
    raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")


@dataclass(frozen=True)
class ZeroMapReport:
    n: int
    E: Energy
    variant: str
    trivial: int
    matrix_det: Fraction | float
    product: Fraction | float
    det_equals_product: bool
    equals_trivial: bool


def zero_map_check(n: int, energy: Energy, variant: str = "riemann") -> ZeroMapReport:
    cand = nontrivial_candidate(n, energy, variant)
    trivial = (2 * n) ** 2
    if cand.exact_product is not None:
        det = zero_map_matrix(n, energy, variant).det()
        product = cand.exact_product
        same = det == product
    else:
        det = _float_zero_map_det(n, float(energy), variant)
        product = cand.product
        same = abs(det - product) <= 1e-12 * max(1.0, abs(product))
    return ZeroMapReport(n, energy, variant, trivial, det, product, same, product == trivial)


def critical_real_part(variant: str) -> float:
    return VARIANT_REAL_PART[variant]
