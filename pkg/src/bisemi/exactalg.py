"""Exact 2x2 matrix algebra over the rationals and real/imaginary quadratic fields.

Rationals are :class:`fractions.Fraction`.  Elements ``a + b*sqrt(d)`` are
:class:`QuadNum`; a negative radicand means ``sqrt(d) = i*sqrt(|d|)``, so the
same type covers Q(i) and the complex eigenvalues of the zero maps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import IncompatibleRadicands, NotTriangular, SingularDiagonal

Rat = Fraction
Scalar = Union[int, Fraction, "QuadNum"]

__all__ = [
    "Rat",
    "QuadNum",
    "Mat2Q",
    "squarefree_decompose",
    "sqrt_rational",
    "charpoly",
    "eigen_quad",
    "gauss_decompose_triangular",
    "bilinear_gauss",
    "recompose",
    "involution_first_kind",
    "exchange_involution",
]


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


_PRIMES = _small_primes(1 << 16)


@lru_cache(maxsize=1 << 16)
def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(k, f)`` with ``n == k*k*f`` and ``f`` squarefree (sign kept in ``f``).

    ``squarefree_decompose(0) == (0, 1)``.
    """
    if n == 0:
        return 0, 1
    sign = -1 if n < 0 else 1
    r = abs(n)
    k = 1
    f = 1
    for p in _PRIMES:
        if p * p * p > r:
            break
        if r % p:
            continue
        e = 0
        while r % p == 0:
            r //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            f *= p
    else:
        if r > 1 and _PRIMES[-1] ** 3 <= r:
            # cofactor may still carry repeated primes above the table; fall back to trial division
            p = _PRIMES[-1] + 2
            while p * p <= r:
                e = 0
                while r % p == 0:
                    r //= p
                    e += 1
                k *= p ** (e // 2)
                if e % 2:
                    f *= p
                p += 2
            return k, sign * f * r
    # every prime factor of r now exceeds its cube root: r is 1, p, p*q or p*p
    s = math.isqrt(r)
    if s > 1 and s * s == r:
        k *= s
    else:
        f *= r
    return k, sign * f


def _rat(x: int | Fraction) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class QuadNum:
    """Immutable ``a + b*sqrt(d)`` with rational ``a``, ``b`` and squarefree ``d``.

    The radicand is canonical: rational values always carry ``d == 1, b == 0``,
    so equality and hashing are structural.
    """

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, a: int | Fraction = 0, b: int | Fraction = 0, d: int = 1) -> None:
        a = _rat(a)
        b = _rat(b)
        if d == 0:
            b = Fraction(0)
        elif b != 0:
            k, d = squarefree_decompose(int(d))
            b *= k
        if d == 1:
            a, b = a + b, Fraction(0)
        if b == 0:
            d = 1
        self._a = a
        self._b = b
        self._d = int(d)

    @classmethod
    def _make(cls, a: Fraction, b: Fraction, d: int) -> QuadNum:
        # trusted path for arithmetic results: d is already squarefree
        self = object.__new__(cls)
        if b == 0 or d == 1:
            self._a, self._b, self._d = a + b if d == 1 else a, Fraction(0), 1
        else:
            self._a, self._b, self._d = a, b, d
        return self

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @property
    def d(self) -> int:
        return self._d

    @property
    def is_rational(self) -> bool:
        return self._b == 0

    @property
    def is_imaginary(self) -> bool:
        return self._d < 0

    @classmethod
    def coerce(cls, x: Scalar) -> QuadNum:
        if isinstance(x, QuadNum):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot interpret {x!r} as a quadratic number")

    def rational(self) -> Fraction:
        if self._b:
            raise ValueError(f"{self} is irrational")
        return self._a

    def conjugate(self) -> QuadNum:
        """Galois conjugate ``a - b*sqrt(d)`` (complex conjugation when ``d < 0``)."""
        return QuadNum._make(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        return self._a * self._a - self._b * self._b * self._d

    def _common(self, other: QuadNum) -> int:
        if self._b == 0:
            return other._d
        if other._b == 0 or other._d == self._d:
            return self._d
        raise IncompatibleRadicands(f"sqrt({self._d}) and sqrt({other._d}) do not share a field")

    def __add__(self, other: Scalar) -> QuadNum:
        try:
            o = QuadNum.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadNum._make(self._a + o._a, self._b + o._b, self._common(o))

    __radd__ = __add__

    def __neg__(self) -> QuadNum:
        return QuadNum._make(-self._a, -self._b, self._d)

    def __pos__(self) -> QuadNum:
        return self

    def __sub__(self, other: Scalar) -> QuadNum:
        try:
            o = QuadNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Scalar) -> QuadNum:
        return (-self) + other

    def __mul__(self, other: Scalar) -> QuadNum:
        try:
            o = QuadNum.coerce(other)
        except TypeError:
            return NotImplemented
        if o._b == 0:
            return QuadNum._make(self._a * o._a, self._b * o._a, self._d)
        d = self._common(o)
        return QuadNum._make(
            self._a * o._a + self._b * o._b * d,
            self._a * o._b + self._b * o._a,
            d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> QuadNum:
        try:
            o = QuadNum.coerce(other)
        except TypeError:
            return NotImplemented
        if o._b == 0:
            if o._a == 0:
                raise ZeroDivisionError("division by zero quadratic number")
            return QuadNum._make(self._a / o._a, self._b / o._a, self._d)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero quadratic number")
        num = self * o.conjugate()
        return QuadNum._make(num._a / n, num._b / n, num._d)

    def __rtruediv__(self, other: Scalar) -> QuadNum:
        return QuadNum.coerce(other) / self

    def __pow__(self, e: int) -> QuadNum:
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return QuadNum(1) / self ** (-e)
        out = QuadNum(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadNum):
            return (self._a, self._b, self._d) == (other._a, other._b, other._d)
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and self._a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b, self._d))

    def __complex__(self) -> complex:
        if self._d < 0:
            return complex(float(self._a), float(self._b) * math.sqrt(-self._d))
        return complex(float(self), 0.0)

    def __float__(self) -> float:
        if self._d < 0 and self._b:
            raise TypeError(f"{self} is not real")
        return float(self._a) + float(self._b) * math.sqrt(self._d)

    def __repr__(self) -> str:
        return f"QuadNum({self._a!s}, {self._b!s}, {self._d})"

    def __str__(self) -> str:
        a, b, d = self._a, self._b, self._d
        if b == 0:
            return str(a)
        root = f"sqrt({d})"
        if b == 1:
            tail = root
        elif b == -1:
            tail = "-" + root
        else:
            tail = f"{b}*{root}"
        if a == 0:
            return tail
        return f"{a}{tail}" if tail.startswith("-") else f"{a}+{tail}"


def sqrt_rational(x: int | Fraction) -> QuadNum:
    """Exact principal square root of a rational as a :class:`QuadNum`."""
    x = _rat(x)
    num = x.numerator * x.denominator
    k, f = squarefree_decompose(num)
    return QuadNum(0, Fraction(k, x.denominator), f)


def _lower(x: Scalar) -> Fraction | QuadNum:
    if isinstance(x, QuadNum):
        return x.a if x.is_rational else x
    return _rat(x)


@dataclass(frozen=True)
class Mat2Q:
    """2x2 matrix ``[[e11, e12], [e21, e22]]`` with exact entries.

    Entries are rationals, or quadratic numbers when the matrix lives over
    Q(sqrt d) (e.g. the Gaussian entries of the zero-map matrices).
    """

    e11: Fraction | QuadNum
    e12: Fraction | QuadNum
    e21: Fraction | QuadNum
    e22: Fraction | QuadNum

    def __post_init__(self) -> None:
        for name in ("e11", "e12", "e21", "e22"):
            object.__setattr__(self, name, _lower(getattr(self, name)))

    @classmethod
    def from_rows(cls, rows) -> Mat2Q:
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def identity(cls) -> Mat2Q:
        return cls(1, 0, 0, 1)

    @classmethod
    def diag(cls, a: Scalar, d: Scalar) -> Mat2Q:
        return cls(a, 0, 0, d)

    def rows(self) -> tuple[tuple, tuple]:
        return (self.e11, self.e12), (self.e21, self.e22)

    def __matmul__(self, o: Mat2Q) -> Mat2Q:
        if not isinstance(o, Mat2Q):
            return NotImplemented
        return Mat2Q(
            self.e11 * o.e11 + self.e12 * o.e21,
            self.e11 * o.e12 + self.e12 * o.e22,
            self.e21 * o.e11 + self.e22 * o.e21,
            self.e21 * o.e12 + self.e22 * o.e22,
        )

    def trace(self) -> Fraction | QuadNum:
        return _lower(self.e11 + self.e22)

    def det(self) -> Fraction | QuadNum:
        return _lower(self.e11 * self.e22 - self.e12 * self.e21)

    def transpose(self) -> Mat2Q:
        return Mat2Q(self.e11, self.e21, self.e12, self.e22)

    @property
    def is_upper(self) -> bool:
        return self.e21 == 0

    @property
    def is_lower(self) -> bool:
        return self.e12 == 0

    def __str__(self) -> str:
        return f"[[{self.e11}, {self.e12}], [{self.e21}, {self.e22}]]"


def charpoly(m: Mat2Q) -> tuple[Fraction | QuadNum, Fraction | QuadNum]:
    """Coefficients ``(trace, det)`` of ``X^2 - trace*X + det``."""
    return m.trace(), m.det()


def eigen_quad(m: Mat2Q) -> tuple[QuadNum, QuadNum]:
    """Exact eigenvalues ``(lambda_plus, lambda_minus)`` of a matrix with rational char poly.

    ``lambda_plus`` takes the ``+sqrt`` branch of ``(t +- sqrt(t^2 - 4 det)) / 2``.
    """
    t, det = charpoly(m)
    if isinstance(t, QuadNum) or isinstance(det, QuadNum):
        raise ValueError("characteristic polynomial is not rational")
    half_root = sqrt_rational(t * t - 4 * det) / 2
    return half_root + t / 2, -half_root + t / 2


def gauss_decompose_triangular(t: Mat2Q, side: str) -> tuple[Mat2Q, Mat2Q]:
    """Split a triangular matrix into unipotent and diagonal parts.

    Upper: ``t == unipotent @ diagonal``.  Lower is the transposed mirror,
    ``t == diagonal @ unipotent``, so that ``t.T`` splits as the upper case.
    """
    if side not in ("upper", "lower"):
        raise ValueError(f"side must be 'upper' or 'lower', got {side!r}")
    off = t.e21 if side == "upper" else t.e12
    if off != 0:
        raise NotTriangular(f"matrix is not {side} triangular: {t}")
    if t.e11 == 0 or t.e22 == 0:
        raise SingularDiagonal(f"zero diagonal entry in {t}")
    diagonal = Mat2Q.diag(t.e11, t.e22)
    if side == "upper":
        unipotent = Mat2Q(1, t.e12 / t.e22, 0, 1)
    else:
        unipotent = Mat2Q(1, 0, t.e21 / t.e22, 1)
    return unipotent, diagonal


def bilinear_gauss(g_r: Mat2Q, g_l: Mat2Q) -> tuple[Mat2Q, Mat2Q, Mat2Q, Mat2Q]:
    """Decompose a (lower, upper) pair; returns ``(u_R, u_L, d_R, d_L)``."""
    u_r, d_r = gauss_decompose_triangular(g_r, "lower")
    u_l, d_l = gauss_decompose_triangular(g_l, "upper")
    return u_r, u_l, d_r, d_l


def recompose(unipotent: Mat2Q, diagonal: Mat2Q, side: str) -> Mat2Q:
    """Inverse of :func:`gauss_decompose_triangular`."""
    return unipotent @ diagonal if side == "upper" else diagonal @ unipotent


def involution_first_kind(t: Mat2Q) -> Mat2Q:
    return t.transpose()


def exchange_involution(pair: tuple[Mat2Q, Mat2Q]) -> tuple[Mat2Q, Mat2Q]:
    first, second = pair
    return second, first
