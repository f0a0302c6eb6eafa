import itertools
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from plasmonstack.charpoly import (
    CharPoly,
    build_charpoly,
    disk_limit_poly,
    h_coeff,
    recursion_determinant,
    thin_strip_limit,
)
from plasmonstack.errors import CombinatorialCapError
from plasmonstack.geometry import LayerStack
from plasmonstack.npcore import EVEN, ODD, gpm_entries

from conftest import random_stack


def brute_force_h(N, k):
    """Test-only oracle: exhaustive enumeration of the alternating sign sums."""
    total = 0
    for combo in itertools.combinations(range(1, N + 1), k):
        total += (-1) ** sum(combo)
    return total


class TestBuildCharpoly:
    def test_single_layer(self):
        stack = LayerStack(R=1.0, xi=(0.9,))
        plus = build_charpoly(stack, 2, +1)
        minus = build_charpoly(stack, 2, -1)
        assert_allclose(plus.coeffs, [1.0, -0.5 * math.exp(-4 * 0.9)], rtol=1e-15)
        assert_allclose(minus.coeffs, [1.0, 0.5 * math.exp(-4 * 0.9)], rtol=1e-15)

    def test_monic_and_symmetry_exact(self, rng):
        for _ in range(10):
            stack = random_stack(rng, max_layers=9)
            n = int(rng.integers(1, 9))
            plus = build_charpoly(stack, n, +1)
            minus = build_charpoly(stack, n, -1)
            assert plus.coeffs[0] == 1.0
            signs = (-1.0) ** np.arange(stack.N + 1)
            # exact coefficient relation, not a tolerance check
            assert np.array_equal(minus.coeffs, signs * plus.coeffs)

    def test_coefficient_bound(self, rng):
        for _ in range(10):
            stack = random_stack(rng, max_layers=10)
            n = int(rng.integers(1, 5))
            poly = build_charpoly(stack, n, +1)
            for k, c in enumerate(poly.coeffs):
                assert abs(c) <= math.comb(stack.N, k) / 2**k + 1e-15

    def test_cap(self):
        stack = LayerStack(R=1.0, xi=tuple(np.linspace(25.0, 1.0, 25)))
        with pytest.raises(CombinatorialCapError):
            build_charpoly(stack, 1, +1)

    def test_parity_reflection_identity(self, rng):
        # f+(lam) == (-1)^N f-(-lam) at random complex points
        for _ in range(10):
            stack = random_stack(rng, max_layers=8)
            n = int(rng.integers(1, 6))
            plus = build_charpoly(stack, n, +1)
            minus = build_charpoly(stack, n, -1)
            lam = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            assert_allclose(
                plus.evaluate(lam),
                (-1.0) ** stack.N * minus.evaluate(-lam),
                rtol=1e-12,
            )

    def test_residual_at_roots(self, rng):
        stack = random_stack(rng, max_layers=10)
        poly = build_charpoly(stack, 2, +1)
        vals = np.abs(poly.evaluate(poly.roots()))
        assert vals.max() < 1e-10 * np.abs(poly.coeffs).max()


class TestRecursionDeterminant:
    def test_base_case(self, rng):
        stack = random_stack(rng, max_layers=6)
        n = 2
        lam = 0.37
        lam_N = lam if stack.N % 2 == 1 else -lam
        expected_even = lam_N - 0.5 * math.exp(-2 * n * stack.xi[-1])
        expected_odd = lam_N + 0.5 * math.exp(-2 * n * stack.xi[-1])
        assert_allclose(recursion_determinant(stack, lam, n, EVEN, i=stack.N), expected_even, rtol=1e-15)
        assert_allclose(recursion_determinant(stack, lam, n, ODD, i=stack.N), expected_odd, rtol=1e-15)

    def test_matches_dense_determinant(self, rng):
        for _ in range(20):
            stack = random_stack(rng, max_layers=10)
            n = int(rng.integers(1, 9))
            lam = complex(rng.uniform(-1, 1), rng.uniform(0.1, 1.0))
            for parity in (EVEN, ODD):
                dense = np.linalg.det(gpm_entries(stack, lam, n, parity))
                rec = recursion_determinant(stack, lam, n, parity, i=1)
                assert abs(dense - rec) <= 1e-10 * max(abs(dense), abs(rec))

    def test_matches_charpoly(self, rng):
        for _ in range(20):
            stack = random_stack(rng, max_layers=10)
            n = int(rng.integers(1, 9))
            lam = complex(rng.uniform(-1, 1), rng.uniform(0.1, 1.0))
            for parity, sign in ((EVEN, +1), (ODD, -1)):
                rec = recursion_determinant(stack, lam, n, parity, i=1)
                ref = (-1.0) ** (stack.N // 2) * build_charpoly(stack, n, sign).evaluate(lam)
                assert abs(rec - ref) <= 1e-10 * max(abs(rec), abs(ref))

    def test_bad_block_index(self):
        stack = LayerStack(R=1.0, xi=(1.0,))
        with pytest.raises(ValueError):
            recursion_determinant(stack, 0.1, 1, EVEN, i=2)


class TestHCoefficients:
    def test_reference_values(self):
        assert h_coeff(4, 1) == 0
        assert h_coeff(5, 1) == -1
        assert h_coeff(6, 2) == -3

    def test_closed_forms(self):
        for N in range(1, 41):
            assert h_coeff(N, 1) == ((-1) ** N - 1) // 2
            if N >= 2:
                assert h_coeff(N, 2) == -(N // 2)
            assert h_coeff(N, N) == (-1) ** (N * (N + 1) // 2)
            assert h_coeff(N, 2 * (N // 2)) == (-1) ** (N // 2)

    def test_even_layer_binomial_form(self):
        for N in range(2, 31, 2):
            for k in range(0, N // 2 + 1):
                assert h_coeff(N, 2 * k) == (-1) ** k * math.comb(N // 2, k)

    def test_odd_index_vanishing_for_even_layers(self):
        for N in range(1, 21):
            for k in range(1, N + 1):
                assert h_coeff(2 * N, 2 * k - 1) == 0

    def test_parity_recursions(self):
        # the three parity-split recursions, exact integers, N <= 40
        for N in range(1, 20):
            for k in range(1, N + 1):
                assert h_coeff(2 * N + 1, 2 * k) == h_coeff(2 * N, 2 * k)
            for k in range(2, N + 1):
                assert h_coeff(2 * N + 2, 2 * k) == h_coeff(2 * N + 1, 2 * k) - h_coeff(2 * N + 1, 2 * k - 2)
                if 2 * N - 1 >= 2 * k - 1:
                    assert h_coeff(2 * N + 1, 2 * k - 1) == h_coeff(2 * N - 1, 2 * k - 1) - h_coeff(2 * N - 1, 2 * k - 3)

    def test_append_recursion(self):
        for N in range(2, 41):
            for k in range(1, N):
                assert h_coeff(N, k) == h_coeff(N - 1, k) + (-1) ** N * h_coeff(N - 1, k - 1)

    def test_against_brute_force(self):
        for N in range(0, 13):
            for k in range(0, N + 1):
                assert h_coeff(N, k) == brute_force_h(N, k)

    def test_range_check(self):
        with pytest.raises(ValueError):
            h_coeff(3, 4)


class TestDiskLimit:
    def test_two_layer_closed_form(self):
        stack = LayerStack(R=1.0, xi=(1.2, 0.8))
        n = 3
        poly = disk_limit_poly(stack, n)
        assert_allclose(
            poly.coeffs,
            [1.0, 0.0, -0.25 * math.exp(2 * n * (0.8 - 1.2))],
            atol=1e-16,
        )

    def test_coefficient_split_under_radial_shift(self):
        # odd-k coefficients shrink like exp(-2 n xi_tilde); even-k converge
        shifts = (0.9, 0.6, 0.3, 0.1)
        n = 1
        odd_norm = {}
        even_coeffs = {}
        for xt in (5.0, 10.0, 15.0):
            stack = LayerStack(R=1.0, xi=tuple(xt + c for c in shifts))
            poly = build_charpoly(stack, n, +1)
            odd_norm[xt] = np.abs(poly.coeffs[1::2]).max()
            even_coeffs[xt] = poly.coeffs[0::2].copy()
        ratio1 = odd_norm[10.0] / odd_norm[5.0]
        ratio2 = odd_norm[15.0] / odd_norm[10.0]
        target = math.exp(-2 * n * 5.0)
        assert target / 30 < ratio1 < target * 30
        assert target / 30 < ratio2 < target * 30
        assert np.abs(even_coeffs[15.0] - even_coeffs[10.0]).max() < np.abs(
            even_coeffs[10.0] - even_coeffs[5.0]
        ).max()

    def test_root_distance_decay(self):
        shifts = (0.9, 0.6, 0.3, 0.1)
        n = 1
        dists = []
        for xt in (5.0, 10.0):
            stack = LayerStack(R=1.0, xi=tuple(xt + c for c in shifts))
            exact = np.sort(build_charpoly(stack, n, +1).roots().real)
            limit = np.sort(disk_limit_poly(stack, n).roots().real)
            dists.append(np.abs(exact - limit).max())
        ratio = dists[1] / dists[0]
        target = math.exp(-2 * n * 5.0)
        assert target / 100 < ratio < target * 100


class TestThinStripLimit:
    def test_small_cases(self):
        assert_allclose(thin_strip_limit(2, +1), [1.0, 0.0, -0.25], atol=1e-16)
        assert_allclose(thin_strip_limit(2, -1), [1.0, 0.0, -0.25], atol=1e-16)
        # (lam - 1/2)(lam^2 - 1/4)
        assert_allclose(thin_strip_limit(3, +1), [1.0, -0.5, -0.25, 0.125], atol=1e-16)
        assert_allclose(thin_strip_limit(3, -1), [1.0, 0.5, -0.25, -0.125], atol=1e-16)

    def test_root_convergence(self):
        N, sign = 4, +1
        limit_roots = np.sort(np.roots(thin_strip_limit(N, sign)).real)
        devs = []
        for eps in (1e-1, 1e-2, 1e-3):
            stack = LayerStack(R=1.0, xi=tuple(eps * k for k in range(N, 0, -1)))
            roots = np.sort(build_charpoly(stack, 1, sign).roots().real)
            devs.append(np.abs(roots - limit_roots).max())
        assert devs[0] > devs[1] > devs[2]


class TestCharPolyObject:
    def test_parity_label(self):
        stack = LayerStack(R=1.0, xi=(1.0,))
        assert build_charpoly(stack, 1, +1).parity == EVEN
        assert build_charpoly(stack, 1, -1).parity == ODD

    def test_bad_sign(self):
        stack = LayerStack(R=1.0, xi=(1.0,))
        with pytest.raises(ValueError):
            build_charpoly(stack, 1, 0)
