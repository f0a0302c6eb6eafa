import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from plasmonstack.charpoly import build_charpoly
from plasmonstack.geometry import LayerStack
from plasmonstack.npcore import (
    EVEN,
    ODD,
    build_gpm,
    build_np,
    gpm_entries,
    normal_derivative_action,
    single_layer_action,
    structure_vectors,
)
from table_data import TABLE1_LAMBDA_EVEN

from conftest import random_stack


class TestSingleLayerAction:
    def test_odd_vanishes_on_focal_segment(self):
        assert single_layer_action(3, ODD, 1.0, 0.0) == 0.0

    def test_branches_agree_on_surface(self):
        n, xi0 = 2, 0.8
        val = single_layer_action(n, EVEN, xi0, xi0)
        assert_allclose(val, -math.cosh(n * xi0) / (n * math.exp(n * xi0)), rtol=1e-15)

    def test_closed_forms_both_sides(self):
        n, src = 3, 1.1
        assert_allclose(
            single_layer_action(n, EVEN, src, 0.4),
            -math.cosh(n * 0.4) / (n * math.exp(n * src)),
            rtol=1e-15,
        )
        assert_allclose(
            single_layer_action(n, ODD, src, 2.0),
            -math.sinh(n * src) / (n * math.exp(n * 2.0)),
            rtol=1e-15,
        )

    def test_no_overflow_at_extreme_order(self):
        val = single_layer_action(200, EVEN, 12.0, 11.0)
        assert np.isfinite(val) and abs(val) < 1.0


class TestNormalDerivativeAction:
    def test_on_surface_values(self):
        assert_allclose(normal_derivative_action(1, EVEN, 1.0, 1.0), 1.0 / (2 * math.e**2), rtol=1e-15)
        assert normal_derivative_action(1, ODD, 1.0, 1.0) == -normal_derivative_action(1, EVEN, 1.0, 1.0)

    def test_jump_relation(self):
        # outside minus inside limit equals the density weight; each one-sided
        # limit differs from the principal value by half of it
        n, xi0, eps = 2, 0.9, 1e-9
        for parity in (EVEN, ODD):
            outside = normal_derivative_action(n, parity, xi0, xi0 + eps)
            inside = normal_derivative_action(n, parity, xi0, xi0 - eps)
            pv = normal_derivative_action(n, parity, xi0, xi0)
            assert_allclose(outside - inside, 1.0, rtol=1e-6)
            assert_allclose(outside - pv, 0.5, rtol=1e-6)
            assert_allclose(pv - inside, 0.5, rtol=1e-6)

    def test_interior_exterior_closed_forms(self):
        n, src = 4, 1.3
        assert_allclose(
            normal_derivative_action(n, EVEN, src, 0.5),
            -math.sinh(n * 0.5) / math.exp(n * src),
            rtol=1e-14,
        )
        assert_allclose(
            normal_derivative_action(n, ODD, src, 2.2),
            math.sinh(n * src) / math.exp(n * 2.2),
            rtol=1e-14,
        )


class TestGPM:
    def test_single_layer(self):
        stack = LayerStack(R=1.0, xi=(0.7,))
        m = build_gpm(stack, 0.3, 2, EVEN)
        assert_allclose(m.entries, [[0.3 - 0.5 * math.exp(-4 * 0.7)]], rtol=1e-15)
        m_odd = build_gpm(stack, 0.3, 2, ODD)
        assert_allclose(m_odd.entries, [[0.3 + 0.5 * math.exp(-4 * 0.7)]], rtol=1e-15)

    def test_two_layer_hand_instantiation(self):
        stack = LayerStack(R=1.0, xi=(2.0, 1.0))
        lam = 0.17
        m = build_gpm(stack, lam, 1, EVEN).entries
        expected = np.array(
            [
                [lam - 0.5 * math.exp(-4.0), -math.cosh(1.0) / math.e**2],
                [math.sinh(1.0) / math.e**2, -lam - 0.5 * math.exp(-2.0)],
            ]
        )
        assert_allclose(m, expected, rtol=1e-14)

    def test_determinant_matches_charpoly(self, rng):
        for _ in range(25):
            stack = random_stack(rng, max_layers=8)
            n = int(rng.integers(1, 9))
            lam = complex(rng.uniform(-1, 1), rng.uniform(0.1, 1.0))
            det = np.linalg.det(gpm_entries(stack, lam, n, EVEN))
            poly = build_charpoly(stack, n, +1)
            ref = (-1.0) ** (stack.N // 2) * poly.evaluate(lam)
            assert abs(det - ref) <= 1e-10 * max(abs(det), abs(ref))

    def test_affine_in_lambda(self, rng):
        stack = random_stack(rng, max_layers=6)
        n = 3
        alt = np.diag((-1.0) ** np.arange(stack.N))
        m0 = gpm_entries(stack, 0.0, n, ODD)
        for lam in (0.25, -1.1, 2.0):
            assert_allclose(gpm_entries(stack, lam, n, ODD), m0 + lam * alt, rtol=1e-15)


class TestNPMatrix:
    def test_single_layer(self):
        stack = LayerStack(R=1.0, xi=(0.7,))
        K = build_np(stack, 2, EVEN)
        assert_allclose(K.entries, [[-0.5 * math.exp(-4 * 0.7)]], rtol=1e-15)

    def test_sign_conjugation_identity(self, rng):
        # -lam I - K^T == -D M(lam) with D the alternating sign matrix
        for _ in range(20):
            stack = random_stack(rng, max_layers=10)
            n = int(rng.integers(1, 9))
            lam = float(rng.uniform(-1, 1))
            D = np.diag((-1.0) ** np.arange(stack.N))
            for parity in (EVEN, ODD):
                lhs = -lam * np.eye(stack.N) - build_np(stack, n, parity).entries
                rhs = -D @ gpm_entries(stack, lam, n, parity)
                assert np.abs(lhs - rhs).max() < 1e-14

    def test_entries_bounded_by_one(self, rng):
        for _ in range(10):
            stack = random_stack(rng, max_layers=12)
            n = int(rng.integers(1, 9))
            for parity in (EVEN, ODD):
                assert np.abs(build_np(stack, n, parity).entries).max() <= 1.0

    def test_reference_table_eigenvalues(self):
        stack = LayerStack(R=1.0, xi=tuple(float(16 - i) for i in range(1, 16)))
        eig = np.sort(np.linalg.eigvals(-build_np(stack, 1, EVEN).entries).real)[::-1]
        assert np.abs(eig - np.array(TABLE1_LAMBDA_EVEN)).max() < 5e-5

    def test_spectra_real_bounded_and_antisymmetric(self, rng):
        for _ in range(20):
            stack = random_stack(rng, max_layers=12)
            n = int(rng.integers(1, 9))
            ev = np.linalg.eigvals(build_np(stack, n, EVEN).entries)
            od = np.linalg.eigvals(build_np(stack, n, ODD).entries)
            for vals in (ev, od):
                assert np.abs(vals.imag).max() < 1e-10
                assert np.abs(vals.real).max() <= 0.5 + 1e-10
            assert np.abs(np.sort(ev.real) + np.sort(od.real)[::-1]).max() < 1e-10


class TestStructureVectors:
    def test_values_and_alternation(self):
        stack = LayerStack(R=1.0, xi=(1.5, 0.5))
        sv = structure_vectors(stack, 3)
        assert_allclose(sv.s, np.sinh([4.5, 1.5]), rtol=1e-15)
        assert_allclose(sv.c, np.cosh([4.5, 1.5]), rtol=1e-15)
        assert_allclose(sv.s_alt, [math.sinh(4.5), -math.sinh(1.5)], rtol=1e-15)
        assert_allclose(sv.c_alt, [math.cosh(4.5), -math.cosh(1.5)], rtol=1e-15)


class TestValidation:
    def test_bad_order_and_parity(self):
        stack = LayerStack(R=1.0, xi=(1.0,))
        with pytest.raises(ValueError):
            build_np(stack, 0, EVEN)
        with pytest.raises(ValueError):
            build_gpm(stack, 0.1, 1, "both")
        with pytest.raises(ValueError):
            single_layer_action(1, EVEN, -1.0, 0.5)


class TestMatrixCsv:
    def test_round_trippable_dump(self, tmp_path):
        from plasmonstack.npcore import matrix_to_csv

        stack = LayerStack(R=1.0, xi=(1.2, 0.6))
        K = build_np(stack, 2, ODD)
        path = tmp_path / "np.csv"
        matrix_to_csv(K, path)
        lines = path.read_text().strip().splitlines()
        assert lines[0].startswith("# order n=2 parity=odd")
        parsed = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
        assert_allclose(parsed, K.entries, rtol=1e-16)

    def test_complex_dump(self, tmp_path):
        from plasmonstack.npcore import matrix_to_csv

        stack = LayerStack(R=1.0, xi=(1.2, 0.6))
        M = build_gpm(stack, 0.3 + 0.1j, 1, EVEN)
        path = tmp_path / "gpm.csv"
        matrix_to_csv(M, path)
        lines = path.read_text().strip().splitlines()[1:]
        parsed = np.array([[complex(v) for v in line.split(",")] for line in lines])
        assert_allclose(parsed, M.entries, rtol=1e-16)
