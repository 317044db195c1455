"""Places, pseudo-ramified extension ranks and lattice/bilattice bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import AsymmetricSpecs, PlaceOutOfRange

__all__ = [
    "PlaceSpec",
    "LatticeDecomposition",
    "BorelSerreReport",
    "extension_degree",
    "decompose_lattice",
    "decompose_bilattice",
    "check_borel_serre",
]

KINDS = ("real", "complex")


@dataclass(frozen=True)
class PlaceSpec:
    """``s`` places of one kind, ramification order ``N`` and a multiplicity per place.

    ``multiplicities`` defaults to all ones.
    """

    kind: str
    s: int
    N: int = 1
    multiplicities: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.s < 1:
            raise ValueError(f"s must be >= 1, got {self.s}")
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        mult = tuple(int(m) for m in self.multiplicities) or (1,) * self.s
        if len(mult) != self.s:
            raise ValueError(f"expected {self.s} multiplicities, got {len(mult)}")
        if any(m < 1 for m in mult):
            raise ValueError(f"multiplicities must be >= 1, got {mult}")
        object.__setattr__(self, "multiplicities", mult)

    def multiplicity(self, n: int) -> int:
        self._check(n)
        return self.multiplicities[n - 1]

    def _check(self, n: int) -> None:
        if not 1 <= n <= self.s:
            raise PlaceOutOfRange(f"place index {n} outside 1..{self.s}")


def extension_degree(spec: PlaceSpec, n: int) -> int:
    """Rank of the n-th completion: ``n*N`` (real) or ``n*N*m(n)`` (complex)."""
    spec._check(n)
    if spec.kind == "real":
        return n * spec.N
    return n * spec.N * spec.multiplicities[n - 1]


@dataclass(frozen=True)
class LatticeDecomposition:
    entries: tuple[tuple[int, int, int], ...]

    @property
    def total_rank(self) -> int:
        return sum(rank for _, _, rank in self.entries)


def decompose_lattice(spec: PlaceSpec) -> LatticeDecomposition:
    """Sublattice descriptors ``(n, m, rank)`` over the grid ``m = 1..m(n)``."""
    return LatticeDecomposition(
        tuple(
            (n, m, extension_degree(spec, n))
            for n in range(1, spec.s + 1)
            for m in range(1, spec.multiplicities[n - 1] + 1)
        )
    )


def decompose_bilattice(spec_r: PlaceSpec, spec_l: PlaceSpec) -> list[tuple[int, int, int, int]]:
    """Grid of ``(n, m, rank_R, rank_L)`` for matching right and left place specs."""
    if (spec_r.s, spec_r.N, spec_r.multiplicities) != (spec_l.s, spec_l.N, spec_l.multiplicities):
        raise AsymmetricSpecs(
            f"right {spec_r.s, spec_r.N, spec_r.multiplicities} != left {spec_l.s, spec_l.N, spec_l.multiplicities}"
        )
    right = decompose_lattice(spec_r).entries
    left = decompose_lattice(spec_l).entries
    return [(n, m, rr, rl) for (n, m, rr), (_, _, rl) in zip(right, left)]


@dataclass(frozen=True)
class BorelSerreReport:
    equal_place_count: bool
    unit_complex_multiplicity: bool
    ranks_covered: bool
    # per place: (n, sum of real ranks over m, covered complex rank)
    rank_table: tuple[tuple[int, int, int], ...]

    @property
    def ok(self) -> bool:
        return self.equal_place_count and self.unit_complex_multiplicity and self.ranks_covered


def check_borel_serre(complex_spec: PlaceSpec, real_spec: PlaceSpec) -> BorelSerreReport:
    """Arithmetic shadow of the boundary covering conditions.

    Condition three compares, place by place, the summed real ranks
    ``sum_m n*N_real`` with the rank ``n*N_complex*m(n)`` of the complex
    completion covered by the ``m(n)`` real places (times its own complex
    multiplicity).  Only places present on both sides are compared.
    """
    if complex_spec.kind != "complex" or real_spec.kind != "real":
        raise ValueError("expected a complex spec and a real spec")
    same_count = complex_spec.s == real_spec.s
    unit = all(m == 1 for m in complex_spec.multiplicities)
    table = []
    for n in range(1, min(complex_spec.s, real_spec.s) + 1):
        m_real = real_spec.multiplicities[n - 1]
        real_sum = sum(extension_degree(real_spec, n) for _ in range(m_real))
        covered = extension_degree(complex_spec, n) * m_real
        table.append((n, real_sum, covered))
    covered_ok = all(a == b for _, a, b in table)
    return BorelSerreReport(same_count, unit, covered_ok, tuple(table))
