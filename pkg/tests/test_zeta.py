import cmath
import math

import mpmath
import pytest

from bisemi.errors import PoleAtOne, SearchExhausted
from bisemi.lfunc import locate_zeta_zero, zeta_numeric
from bisemi.zeta import hardy_z, xi

GRID = [complex(x, y) for x in (-10, -6.5, -2.5, -0.3, 0.0, 0.25, 0.5, 0.9, 1.5, 3, 10) for y in (0, 0.5, 7, 23.5, 50)]


@pytest.mark.parametrize("s", [s for s in GRID if s != 1])
def test_matches_mpmath(s):
    got = zeta_numeric(s)
    want = complex(mpmath.zeta(s))
    # absolute 1e-10 where |zeta| is moderate; relative where it grows like |t|^(1/2 - sigma)
    assert abs(got - want) <= 1e-10 * max(1.0, abs(want))


def test_special_values():
    assert abs(zeta_numeric(2) - math.pi**2 / 6) < 1e-10
    assert abs(zeta_numeric(0) + 0.5) < 1e-12
    for n in (1, 2, 3, 4, 5):
        assert abs(zeta_numeric(-2 * n)) < 1e-8
    assert zeta_numeric(-1) == pytest.approx(-1 / 12, rel=1e-12)
    assert zeta_numeric(4) == pytest.approx(math.pi**4 / 90, rel=1e-14)


def test_pole():
    with pytest.raises(PoleAtOne):
        zeta_numeric(1)


@pytest.mark.parametrize("s", [0.3 + 5j, 0.7 + 13j, 2 + 0j, -3.5 + 21j])
def test_functional_equation(s):
    assert abs(xi(s) - xi(1 - s)) <= 1e-8 * abs(xi(s))


def test_xi_reference():
    s = 0.3 + 5j
    want = complex((s - 1) * mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2 + 1) * mpmath.zeta(s))
    assert xi(s) == pytest.approx(want, rel=1e-12)


@pytest.mark.parametrize("k, tau", [(1, 14.134725), (2, 21.022040), (3, 25.010858)])
def test_zero_examples(k, tau):
    assert abs(locate_zeta_zero(k) - tau) < 1e-4


@pytest.mark.parametrize("k", range(1, 14))
def test_zeros_match_mpmath(k):
    got = locate_zeta_zero(k)
    assert got == pytest.approx(float(mpmath.zetazero(k).imag), abs=1e-9)
    assert abs(zeta_numeric(complex(0.5, got))) < 1e-8


def test_bsd_variant_reports_same_ordinate():
    assert locate_zeta_zero(2, "bsd") == locate_zeta_zero(2, "riemann")


def test_search_exhausted():
    with pytest.raises(SearchExhausted):
        locate_zeta_zero(14)
    assert locate_zeta_zero(14, t_max=62) == pytest.approx(60.831778, abs=1e-5)


def test_hardy_z_is_real_rotation():
    t = 17.3
    z = cmath.exp(1j * float(mpmath.siegeltheta(t))) * complex(mpmath.zeta(0.5 + 1j * t))
    assert hardy_z(t) == pytest.approx(z.real, rel=1e-12)
