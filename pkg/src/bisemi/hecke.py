"""Hecke coset representatives, decomposition-group elements and their eigenvalues.

The coset representative at level ``N`` is

    g2(q_N^2, b_N) = u(b_N) @ u(b_N).T @ diag(1, q_N^2)
                   = [[1 + b_N^2, b_N*q_N^2], [b_N, q_N^2]]

with ``q_N = q*N`` and ``b_N = b*N``.  Its eigenvalues have trace
``1 + b_N^2 + q_N^2`` and determinant ``q_N^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactalg import Mat2Q, QuadNum, sqrt_rational

__all__ = [
    "HeckeParams",
    "EigenPair",
    "unipotent",
    "split_cartan",
    "coset_matrix",
    "lambda_pair",
    "hecke_lambda",
    "eigenvalues",
    "frobenius_eigenvalues",
    "decomposition_element",
    "translate_to_origin",
]

BRANCHES = ("plus", "minus")


@dataclass(frozen=True)
class HeckeParams:
    q: int
    b: int = 0
    N: int = 1

    def __post_init__(self) -> None:
        if self.q < 1:
            raise ValueError(f"q must be >= 1, got {self.q}")
        if self.b < 0:
            raise ValueError(f"b must be >= 0, got {self.b}")
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")

    @property
    def q_N(self) -> int:
        return self.q * self.N

    @property
    def b_N(self) -> int:
        return self.b * self.N


@dataclass(frozen=True)
class EigenPair:
    plus: QuadNum
    minus: QuadNum
    trace: Fraction
    det: Fraction

    def __iter__(self):
        return iter((self.plus, self.minus))

    def select(self, branch: str) -> QuadNum:
        if branch not in BRANCHES:
            raise ValueError(f"branch must be one of {BRANCHES}, got {branch!r}")
        return self.plus if branch == "plus" else self.minus


def unipotent(b: int | Fraction) -> Mat2Q:
    return Mat2Q(1, b, 0, 1)


def split_cartan(q2: int | Fraction) -> Mat2Q:
    return Mat2Q.diag(1, q2)


def coset_matrix(p: HeckeParams) -> Mat2Q:
    u = unipotent(p.b_N)
    return u @ u.transpose() @ split_cartan(p.q_N**2)


def lambda_pair(trace: int | Fraction, det: int | Fraction) -> EigenPair:
    """Roots of ``X^2 - trace*X + det`` in closed form."""
    trace = Fraction(trace)
    det = Fraction(det)
    half_root = sqrt_rational(trace * trace - 4 * det) / 2
    return EigenPair(half_root + trace / 2, -half_root + trace / 2, trace, det)


def hecke_lambda(q_N: int, m_N: int, branch: str) -> QuadNum:
    """``lambda_branch(q_N^2, m_N^2)``: one eigenvalue of the level-scaled coset matrix."""
    return lambda_pair(1 + m_N**2 + q_N**2, q_N**2).select(branch)


def eigenvalues(p: HeckeParams) -> EigenPair:
    return lambda_pair(1 + p.b_N**2 + p.q_N**2, p.q_N**2)


def frobenius_eigenvalues(q: int, b: int) -> EigenPair:
    """Eigenvalues in the unramified case, i.e. level ``N = 1``."""
    return eigenvalues(HeckeParams(q, b, 1))


def decomposition_element(b_N: int) -> Mat2Q:
    if b_N < 0:
        raise ValueError(f"b_N must be >= 0, got {b_N}")
    u = unipotent(b_N)
    return u @ u.transpose()


def translate_to_origin(e: EigenPair) -> tuple[QuadNum, QuadNum]:
    """Half-sum ``r`` and half-difference ``cent`` of the eigenvalue pair.

    ``r + cent == plus`` and ``r - cent == minus`` exactly.
    """
    r = (e.plus + e.minus) / 2
    cent = (e.plus - e.minus) / 2
    return r, cent
