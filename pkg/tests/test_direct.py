import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given
from hypothesis import strategies as st

from oracles import mp_mean, random_pair, random_spd, rel, sqrtm_mean
from spdmean import cond_exact
from spdmean.direct import (
    GeodesicFactor, condition_swap, gmean_2x2_closed, gmean_cholesky_schur, gmean_reference,
)
from spdmean.exceptions import NotPositiveDefinite, ParamOutOfRange

A81 = np.array([[2.0, 1.0], [1.0, 2.0]])
B81 = np.array([[10.0, 1.0], [1.0, 2.0]])
G81 = np.array([[(1 + math.sqrt(57)) / 2, 1.0], [1.0, 2.0]])

pairs = st.tuples(st.integers(2, 8), st.integers(0, 2**32 - 1), st.sampled_from([None, 1e2, 1e4]))


def make(p):
    n, seed, cond = p
    return random_pair(np.random.default_rng(seed), n, cond)


def tol_for(a, b):
    return 1e-10 * cond_exact(a, b).kappa_rel


class TestCholeskySchur:
    def test_scalar_consistency(self):
        g = gmean_cholesky_schur(np.eye(2), np.diag([4.0, 9.0]))
        np.testing.assert_allclose(g, np.diag([2.0, 3.0]), rtol=1e-15)

    def test_closed_form_case(self):
        assert rel(gmean_cholesky_schur(A81, B81), G81) <= 1e-15

    @pytest.mark.parametrize("t", [0.0, 0.3, 0.5, 1.0])
    def test_equal_arguments(self, t):
        h = scipy.linalg.hilbert(4)
        assert rel(gmean_cholesky_schur(h, h, t), h) <= 1e-12

    def test_endpoints(self, rng):
        a, b = random_pair(rng, 5)
        assert rel(gmean_cholesky_schur(a, b, 0.0), a) <= 1e-14
        assert rel(gmean_cholesky_schur(a, b, 1.0), b) <= 1e-14

    def test_geodesic_point_oracle(self, rng):
        a, b = random_pair(rng, 4)
        for t in (0.2, 0.7):
            ref = a @ np.real(scipy.linalg.fractional_matrix_power(np.linalg.solve(a, b), t))
            assert rel(gmean_cholesky_schur(a, b, t), ref) <= 1e-12

    def test_matches_high_precision(self, rng):
        for _ in range(5):
            a, b = random_pair(rng, 4, 1e3)
            kappa = max(np.linalg.cond(a), np.linalg.cond(b))
            assert rel(gmean_cholesky_schur(a, b), mp_mean(a, b)) <= 10 * 4 * 2.2e-16 * kappa

    def test_rejects_bad_input(self):
        with pytest.raises(NotPositiveDefinite):
            gmean_cholesky_schur(np.eye(2), -np.eye(2))
        with pytest.raises(ParamOutOfRange):
            gmean_cholesky_schur(np.eye(2), np.eye(2), t=2.0)

    def test_output_exactly_symmetric(self, rng):
        a, b = random_pair(rng, 6)
        g = gmean_cholesky_schur(a, b)
        assert np.array_equal(g, g.T)
        assert np.all(np.linalg.eigvalsh(g) > 0)


class TestConditionSwap:
    def test_identity_first_no_swap(self, rng):
        b = random_spd(rng, 3)
        a2, b2, t2 = condition_swap(np.eye(3), b, 0.3)
        assert a2 is not b and t2 == 0.3

    def test_swap_to_identity(self):
        h = scipy.linalg.hilbert(5)
        a2, b2, t2 = condition_swap(h, np.eye(5), 0.3)
        assert np.array_equal(a2, np.eye(5)) and np.array_equal(b2, h) and t2 == pytest.approx(0.7)

    def test_tie_keeps_order(self, rng):
        a = random_spd(rng, 3)
        a2, b2, t2 = condition_swap(a, a.copy(), 0.25)
        assert a2 is a and t2 == 0.25


class TestOracles:
    def test_reference_examples(self):
        np.testing.assert_allclose(gmean_reference(np.eye(3), np.eye(3)), np.eye(3))
        np.testing.assert_allclose(gmean_reference(np.diag([1.0, 4.0]), np.diag([9.0, 1.0])),
                                   np.diag([3.0, 2.0]), rtol=1e-15)

    @given(pairs)
    def test_reference_matches_cholesky_schur(self, p):
        a, b = make(p)
        n = a.shape[0]
        # the a^-1/2 route loses about kappa^(3/2) digits
        kappa = max(np.linalg.cond(a), np.linalg.cond(b)) ** 1.5
        assert rel(gmean_reference(a, b), gmean_cholesky_schur(a, b)) <= 10 * n * 2.2e-16 * kappa

    def test_2x2_closed(self, rng):
        np.testing.assert_allclose(gmean_2x2_closed(np.eye(2), np.eye(2)), np.eye(2))
        assert rel(gmean_2x2_closed(A81, B81), G81) <= 1e-15
        for _ in range(20):
            a, b = random_pair(rng, 2)
            assert rel(gmean_2x2_closed(a, b), sqrtm_mean(a, b)) <= 1e-13
        with pytest.raises(ValueError):
            gmean_2x2_closed(np.eye(3), np.eye(3))


class TestInvariants:
    @given(pairs)
    def test_commutativity(self, p):
        a, b = make(p)
        assert rel(gmean_cholesky_schur(a, b), gmean_cholesky_schur(b, a)) <= tol_for(a, b)

    @given(pairs, st.integers(0, 2**32 - 1))
    def test_congruence(self, p, seed):
        a, b = make(p)
        n = a.shape[0]
        s = np.random.default_rng(seed).standard_normal((n, n)) + 2 * np.eye(n)
        sa, sb = s.T @ a @ s, s.T @ b @ s
        lhs = gmean_cholesky_schur(sa, sb)
        rhs = s.T @ gmean_cholesky_schur(a, b) @ s
        assert rel(lhs, rhs) <= tol_for(sa, sb) * np.linalg.cond(s)

    @given(pairs)
    def test_riccati(self, p):
        a, b = make(p)
        g = gmean_cholesky_schur(a, b)
        assert rel(g @ np.linalg.solve(a, g), b) <= tol_for(a, b)

    @given(st.lists(st.floats(0.01, 100), min_size=2, max_size=8), st.integers(0, 2**32 - 1))
    def test_commuting_case(self, d, seed):
        rng = np.random.default_rng(seed)
        d = np.array(d)
        e = rng.uniform(0.01, 100, d.size)
        q, _ = np.linalg.qr(rng.standard_normal((d.size, d.size)))
        a, b = (q * d) @ q.T, (q * e) @ q.T
        expected = (q * np.sqrt(d * e)) @ q.T
        assert rel(gmean_cholesky_schur(a, b), expected) <= 1e-10 * cond_exact(a, b).kappa_rel

    @given(pairs, st.floats(0, 1))
    def test_geodesic_symmetry(self, p, t):
        a, b = make(p)
        assert rel(gmean_cholesky_schur(a, b, t), gmean_cholesky_schur(b, a, 1 - t)) <= tol_for(a, b)

    @given(pairs, st.floats(1e-3, 1e3), st.floats(1e-3, 1e3))
    def test_scaling_identity(self, p, alpha, beta):
        a, b = make(p)
        lhs = gmean_cholesky_schur(a, b)
        rhs = gmean_cholesky_schur(alpha * a, beta * b) / math.sqrt(alpha * beta)
        assert rel(lhs, rhs) <= tol_for(a, b)

    @given(st.integers(2, 8), st.integers(0, 2**32 - 1))
    def test_circulant_preserved(self, n, seed):
        rng = np.random.default_rng(seed)

        def circ_spd():
            # symmetric circulant with positive spectrum
            lam = rng.uniform(0.5, 5.0, n)
            lam = (lam + np.roll(lam[::-1], 1)) / 2
            c = np.real(np.fft.ifft(lam))
            return scipy.linalg.circulant(c)

        a, b = circ_spd(), circ_spd()
        g = gmean_cholesky_schur(a, b)
        assert rel(g, scipy.linalg.circulant(g[:, 0])) <= tol_for(a, b)

    @given(pairs)
    def test_loewner_sandwich(self, p):
        a, b = make(p)
        g = gmean_cholesky_schur(a, b)
        harm = 2 * np.linalg.inv(np.linalg.inv(a) + np.linalg.inv(b))
        arith = (a + b) / 2
        slack = tol_for(a, b) * np.linalg.norm(g)
        assert np.linalg.eigvalsh(g - harm)[0] >= -slack
        assert np.linalg.eigvalsh(arith - g)[0] >= -slack


class TestGeodesicFactor:
    def test_points_match_direct(self, rng):
        a, b = random_pair(rng, 5, 1e3)
        f = GeodesicFactor(a, b)
        for t in (0.0, 0.25, 0.5, 0.9, 1.0):
            assert rel(f.point(t), gmean_cholesky_schur(a, b, t)) <= 1e-12

    def test_swap_recorded(self):
        h = scipy.linalg.hilbert(4)
        f = GeodesicFactor(h, np.eye(4))
        assert f.swapped
        assert rel(f.point(0.0), h) <= 1e-12
        assert not GeodesicFactor(h, np.eye(4), swap=False).swapped
