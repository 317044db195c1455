"""Exact bilinear 2x2 algebra, Hecke eigenvalues, elliptic semimodules, L-series and curve counts."""

from .exactalg import Mat2Q, QuadNum, Rat
from .hecke import EigenPair, HeckeParams
from .placelat import PlaceSpec

__version__ = "0.1.0"

__all__ = ["Mat2Q", "QuadNum", "Rat", "EigenPair", "HeckeParams", "PlaceSpec", "__version__"]
