"""Core arithmetic: inner products, Gram matrices, lifting."""

import numpy as np
import pytest

from besselkit import (
    DegenerateReference,
    DimensionMismatch,
    Family,
    gram,
    inner,
    lift_gram_values,
    norm,
    project_orthogonal,
)

E1 = np.array([1.0, 0.0], dtype=complex)
E2 = np.array([0.0, 1.0], dtype=complex)


def slow_inner(u, v):
    """Independent reference implementation over plain Python scalars."""
    return sum(complex(a) * complex(b).conjugate() for a, b in zip(u, v))


class TestInner:
    def test_orthogonal_basis(self):
        assert inner(E1, E2) == 0

    def test_self_inner_with_imaginary_entry(self):
        assert inner([1, 1j], [1, 1j]) == pytest.approx(2)

    def test_conjugate_linear_in_second_slot(self):
        assert inner([1, 0], [1j, 0]) == pytest.approx(-1j)

    def test_linear_in_first_slot(self):
        rng = np.random.default_rng(1)
        u = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        lam = 0.7 - 2.1j
        assert inner(lam * u, v) == pytest.approx(lam * inner(u, v))
        assert inner(u, lam * v) == pytest.approx(np.conj(lam) * inner(u, v))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            inner([1, 0], [1, 0, 0])

    def test_self_inner_is_real_nonnegative(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            u = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            val = inner(u, u)
            assert val.imag == 0
            assert val.real >= 0

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            inner([np.nan, 0], [1, 0])


class TestNorm:
    def test_three_four_five(self):
        assert norm([3, 4]) == pytest.approx(5)

    def test_zero(self):
        assert norm([0, 0]) == 0

    def test_unit_imaginary(self):
        assert norm([1j, 0]) == pytest.approx(1)


class TestGram:
    def test_orthonormal_identity(self):
        assert np.allclose(gram([E1, E2]), np.eye(2))

    def test_repeated_vector_all_ones(self):
        assert np.allclose(gram([E1, E1]), np.ones((2, 2)))

    def test_matches_entrywise_recomputation(self):
        rng = np.random.default_rng(3)
        ys = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
        g = gram(ys)
        for i in range(3):
            for j in range(3):
                assert g[i, j] == pytest.approx(slow_inner(ys[i], ys[j]), rel=1e-12)

    def test_conjugate_symmetry_and_real_diagonal(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            ys = rng.standard_normal((5, 3)) + 1j * rng.standard_normal((5, 3))
            g = gram(ys)
            scale = max(1.0, float(np.abs(g).max()))
            assert float(np.abs(g - g.conj().T).max()) <= 1e-12 * scale
            assert float(np.abs(g.diagonal().imag).max()) <= 1e-12 * scale
            assert np.all(g.diagonal().real >= 0)

    def test_ragged_input_rejected(self):
        with pytest.raises(DimensionMismatch):
            gram([[1, 0], [1, 0, 0]])


class TestLift:
    def test_single_coefficient(self):
        ys = lift_gram_values(E1, [1 + 1j])
        assert np.allclose(ys[0], [1 - 1j, 0])
        assert inner(E1, ys[0]) == pytest.approx(1 + 1j)

    def test_zero_coefficients_give_orthogonal_vectors(self):
        x = np.array([1.0, 2.0, -1.0], dtype=complex)
        ys = lift_gram_values(x, [0, 0, 0])
        for y in ys:
            assert abs(inner(x, y)) <= 1e-15

    def test_round_trip_on_three_four(self):
        ys = lift_gram_values([3, 4], [5])
        assert inner([3, 4], ys[0]) == pytest.approx(5, rel=1e-12)

    def test_round_trip_random_with_free_components(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            d = int(rng.integers(1, 6))
            n = int(rng.integers(1, 7))
            x = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            zs = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            ws = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
            ys = lift_gram_values(x, zs, ws)
            for j in range(n):
                got = inner(x, ys[j])
                assert abs(got - zs[j]) <= 1e-12 * max(1.0, abs(zs[j]))

    def test_projection_is_orthogonal(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            w = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            p = project_orthogonal(w, x)
            assert abs(inner(x, p)) <= 1e-12 * norm(x) * norm(w)

    def test_zero_reference_rejected(self):
        with pytest.raises(DegenerateReference):
            lift_gram_values([0, 0], [1])
        with pytest.raises(DegenerateReference):
            project_orthogonal([1, 0], [0, 0])

    def test_ws_shape_mismatch(self):
        with pytest.raises(DimensionMismatch):
            lift_gram_values(E1, [1, 2], [[1, 0]])


class TestCauchySchwarz:
    def test_random_pairs(self):
        rng = np.random.default_rng(7)
        for _ in range(300):
            d = int(rng.integers(1, 8))
            u = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            scale = norm(u) * norm(v)
            assert abs(inner(u, v)) <= scale + 1e-12 * max(1.0, scale)


class TestFamily:
    def test_dimension_consistency_enforced(self):
        with pytest.raises(DimensionMismatch):
            Family([1, 0], [[1, 0, 0]])

    def test_empty_ys_rejected(self):
        with pytest.raises(DimensionMismatch):
            Family([1, 0], [])

    def test_real_mode_rejects_imaginary_parts(self):
        with pytest.raises(ValueError):
            Family([1, 1j], [[1, 0]], field_mode="real")
        fam = Family([1, 2], [[3, 4]], field_mode="real")
        assert fam.field_mode == "real"

    def test_unknown_field_mode(self):
        with pytest.raises(ValueError):
            Family([1, 0], [[1, 0]], field_mode="quaternion")

    def test_cached_quantities_match_definitions(self):
        rng = np.random.default_rng(8)
        x = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        ys = rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))
        fam = Family(x, ys)
        for j in range(4):
            assert fam.coefficients[j] == pytest.approx(inner(x, ys[j]), rel=1e-12)
        assert np.allclose(fam.gram, gram(ys))
        assert fam.x_norm == pytest.approx(norm(x), rel=1e-15)
        assert fam.coefficients_sq_sum == pytest.approx(
            sum(abs(inner(x, y)) ** 2 for y in ys), rel=1e-12
        )
        assert fam.coeff_p_norm(1.0) == pytest.approx(
            sum(abs(z) for z in fam.coefficients), rel=1e-12
        )
        assert fam.row_q_norm_max(3.0) == pytest.approx(
            max(sum(abs(v) ** 3 for v in row) ** (1 / 3) for row in fam.gram),
            rel=1e-12,
        )

    def test_zero_vectors_allowed(self):
        fam = Family([1, 0], [[0, 0], [1, 0]])
        assert fam.n == 2
