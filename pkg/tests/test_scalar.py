from fractions import Fraction

import mpmath
import pytest

from oracles import gtilde, pade_sqrt, pade_sqrt_at
from spdmean.scalar import (
    newton_sqrt, scalar_averaging, scalar_cf_closed, scalar_cf_convergent, scalar_pade_iterate,
)


def test_oracle_pade_matches_taylor():
    # [2/1] of sqrt(1+x): numerator and denominator from the exact solver
    p, q = pade_sqrt(2, 1)
    # sqrt(1+x) = 1 + x/2 - x^2/8 + x^3/16 - ...; 1/16 - q1/8 = 0 gives q1 = 1/2
    assert q == [1, Fraction(1, 2)] and p == [1, 1, Fraction(1, 8)]


def test_gtilde_examples():
    assert scalar_pade_iterate(1.0, 2) == 1.0
    assert scalar_pade_iterate(3.0, 2) == pytest.approx((1 + 9) / 6)
    with pytest.raises(ValueError):
        scalar_pade_iterate(2.0, 0)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
@pytest.mark.parametrize("z", [0.3, 2.0, 7.5])
def test_gtilde_matches_mp(z, k):
    assert scalar_pade_iterate(z, k) == pytest.approx(float(gtilde(z, k)), rel=1e-13)


def test_newton_two_steps_is_17_12():
    assert newton_sqrt(2.0, 2) == pytest.approx(17 / 12, rel=1e-16)
    assert pade_sqrt_at(2, 2, 1) == Fraction(17, 12)


@pytest.mark.parametrize("z", [0.5, 2, 10])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_newton_iterates_are_pade(z, k):
    m = 2 ** (k - 1)
    ref = pade_sqrt_at(Fraction(z), m, m - 1)
    assert newton_sqrt(float(z), k) == pytest.approx(float(ref), rel=1e-14)


@pytest.mark.parametrize("r,s", [(2, 2), (2, 3), (3, 2), (4, 3), (3, 3)])
@pytest.mark.parametrize("z", [0.2, 1.7, 5.0])
def test_composition_lemma(r, s, z):
    inner = scalar_pade_iterate(z, s)
    outer = scalar_pade_iterate(inner if r % 2 == 0 else 1 / inner, r)
    assert outer == pytest.approx(scalar_pade_iterate(z, r * s), rel=1e-12)


def test_averaging_scalar_examples():
    assert scalar_averaging(1.0, 9.0, 1) == (5.0, 1.8)
    a2, b2 = scalar_averaging(1.0, 9.0, 2)
    assert a2 == pytest.approx(3.4) and b2 == pytest.approx(2 * 5 * 1.8 / 6.8)


@pytest.mark.parametrize("N", range(0, 8))
@pytest.mark.parametrize("a,b", [(1.0, 9.0), (2.0, 3.0), (5.0, 0.1)])
def test_cf_closed_form(a, b, N):
    assert scalar_cf_convergent(a, b, N) == pytest.approx(scalar_cf_closed(a, b, N), rel=1e-12)


def test_cf_converges_to_sqrt():
    assert scalar_cf_convergent(1.0, 9.0, 30) == pytest.approx(3.0, rel=1e-14)
    with pytest.raises(ValueError):
        scalar_cf_convergent(1.0, 9.0, -1)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_averaging_is_cf_convergent(k):
    # A_k = t_{2^(k-1) - 1}; checked with exact rationals as well
    a, b = 1.0, 9.0
    assert scalar_averaging(a, b, k)[0] == pytest.approx(scalar_cf_convergent(a, b, 2 ** (k - 1) - 1), rel=1e-14)
    fa, fb = Fraction(1), Fraction(9)
    for _ in range(k):
        fa, fb = (fa + fb) / 2, 2 * fa * fb / (fa + fb)
    s, c, tail = Fraction(10), -Fraction(16), Fraction(0)
    for _ in range(2 ** (k - 1) - 1):
        tail = c / (s + tail)
    assert fa == s / 2 + tail


def test_newton_is_averaging_with_one():
    # z_k = A_k(1, z): Newton from z_0 = z is averaging of (1, z) in one variable
    for z in (0.5, 2.0, 10.0):
        for k in range(1, 5):
            assert newton_sqrt(z, k) == pytest.approx(scalar_averaging(1.0, z, k)[0], rel=1e-14)
