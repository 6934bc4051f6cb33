import numpy as np
import pytest

from specht_young.errors import ConditionError, DomainError, InputError
from specht_young.spd import (
    SpdMatrix,
    SpectralBounds,
    as_symmetric,
    loewner_geq,
    matrix_power,
    power_mean,
    random_spd_with_spectrum,
    spectral_bounds_from,
    sym_eigen,
    weighted_arith,
    weighted_harm,
)


def random_symmetric(rng, n):
    x = rng.standard_normal((n, n)) * 10.0 ** rng.uniform(-2, 2)
    return 0.5 * (x + x.T)


class TestSymEigen:
    def test_identity(self):
        d = sym_eigen(np.eye(3))
        np.testing.assert_array_equal(d.lam, [1.0, 1.0, 1.0])
        np.testing.assert_allclose(d.q.T @ d.q, np.eye(3), atol=1e-15)

    def test_diagonal_sorted(self):
        np.testing.assert_array_equal(sym_eigen(np.diag([3.0, 1.0, 2.0])).lam, [1.0, 2.0, 3.0])

    def test_two_by_two(self):
        # lambda^2 - 4 lambda + 3 = 0
        np.testing.assert_allclose(sym_eigen([[2.0, 1.0], [1.0, 2.0]]).lam, [1.0, 3.0], rtol=1e-15)

    @pytest.mark.parametrize("n", [2, 3, 5, 8, 16])
    def test_against_lapack(self, n):
        rng = np.random.default_rng(n)
        for _ in range(20):
            a = random_symmetric(rng, n)
            d = sym_eigen(a)
            scale = 1.0 + np.abs(a).max()
            assert np.abs(d.q.T @ d.q - np.eye(n)).max() <= 1e-12
            assert np.abs(d.reconstruct() - a).max() <= 1e-11 * scale
            assert np.all(np.diff(d.lam) >= 0)
            np.testing.assert_allclose(d.lam, np.linalg.eigvalsh(a), atol=1e-12 * scale)

    def test_rejects_asymmetric(self):
        with pytest.raises(DomainError):
            sym_eigen([[1.0, 2.0], [0.0, 1.0]])

    def test_rejects_non_square_and_oversize(self):
        with pytest.raises(InputError):
            sym_eigen(np.ones((2, 3)))
        with pytest.raises(InputError):
            sym_eigen(np.eye(65))

    def test_symmetrises(self):
        x = np.array([[1.0, 2.0], [2.0 + 1e-15, 1.0]])
        y = as_symmetric(x)
        assert y[0, 1] == y[1, 0]


class TestSpdMatrix:
    def test_rejects_indefinite(self):
        with pytest.raises(DomainError):
            SpdMatrix([[1.0, 2.0], [2.0, 1.0]])

    def test_rejects_near_singular(self):
        with pytest.raises(DomainError):
            SpdMatrix(np.diag([1.0, 1e-14]))

    def test_read_only(self):
        a = SpdMatrix(np.diag([1.0, 2.0]))
        with pytest.raises(ValueError):
            a.array[0, 0] = 5.0


class TestMatrixPower:
    def test_zero_power(self):
        a = random_spd_with_spectrum(4, 0.5, 3.0, 1)
        np.testing.assert_allclose(matrix_power(a, 0).array, np.eye(4), atol=1e-12)

    def test_one_power(self):
        a = random_spd_with_spectrum(4, 0.5, 3.0, 2)
        np.testing.assert_allclose(matrix_power(a, 1).array, a.array, atol=1e-12)

    def test_diagonal_sqrt(self):
        np.testing.assert_allclose(matrix_power(np.diag([4.0, 9.0]), 0.5).array, np.diag([2.0, 3.0]), rtol=1e-15)

    def test_inverse_round_trip(self):
        a = random_spd_with_spectrum(5, 0.1, 10.0, 3)
        np.testing.assert_allclose(matrix_power(a, -1).array @ a.array, np.eye(5), atol=1e-10)

    def test_nonfinite(self):
        with pytest.raises(DomainError):
            matrix_power(np.eye(2), np.inf)


class TestMeans:
    def test_power_mean_same(self):
        a = random_spd_with_spectrum(3, 1.0, 4.0, 5)
        np.testing.assert_allclose(power_mean(a, a, 0.3).array, a.array, rtol=1e-12, atol=1e-12)

    def test_power_mean_diagonal(self):
        np.testing.assert_allclose(power_mean(np.diag([1.0, 2.0]), np.diag([4.0, 8.0]), 0.5).array,
                                   np.diag([2.0, 4.0]), rtol=1e-14, atol=1e-14)

    def test_power_mean_endpoints_generic(self):
        rng = np.random.default_rng(9)
        a = random_spd_with_spectrum(4, 0.5, 2.0, rng)
        b = random_spd_with_spectrum(4, 1.0, 9.0, rng)
        for nu, want in ((0.0, a), (1.0, b)):
            got = power_mean(a, b, nu).array
            assert np.abs(got - want.array).max() <= 1e-11 * np.abs(want.array).max()
        # the generic formula at nu -> 1 also reproduces b
        near = power_mean(a, b, 1.0 - 1e-15).array
        assert np.abs(near - b.array).max() <= 1e-11 * np.abs(b.array).max()

    def test_geometric_mean_symmetric(self):
        rng = np.random.default_rng(11)
        a = random_spd_with_spectrum(4, 0.5, 2.0, rng)
        b = random_spd_with_spectrum(4, 1.0, 9.0, rng)
        np.testing.assert_allclose(power_mean(a, b, 0.5).array, power_mean(b, a, 0.5).array, rtol=1e-10, atol=1e-10)

    def test_arith_harm_diagonal(self):
        a, b = np.diag([1.0, 2.0]), np.diag([4.0, 8.0])
        np.testing.assert_allclose(weighted_arith(a, b, 0.5).array, np.diag([2.5, 5.0]), rtol=1e-15)
        np.testing.assert_allclose(weighted_harm(a, b, 0.5).array, np.diag([1.6, 3.2]), rtol=1e-14, atol=1e-15)

    def test_arith_harm_endpoints(self):
        rng = np.random.default_rng(4)
        a = random_spd_with_spectrum(3, 1.0, 2.0, rng)
        b = random_spd_with_spectrum(3, 2.0, 5.0, rng)
        for f in (weighted_arith, weighted_harm):
            np.testing.assert_allclose(f(a, b, 0.0).array, a.array, atol=1e-12)
            np.testing.assert_allclose(f(a, b, 1.0).array, b.array, atol=1e-12)
            np.testing.assert_allclose(f(a, a, 0.4).array, a.array, atol=1e-11)

    def test_dimension_mismatch(self):
        with pytest.raises(InputError):
            power_mean(np.eye(2), np.eye(3), 0.5)
        with pytest.raises(InputError):
            weighted_arith(np.eye(2), np.eye(3), 0.5)

    def test_bad_nu(self):
        with pytest.raises(DomainError):
            power_mean(np.eye(2), np.eye(2), 1.5)


class TestLoewner:
    def test_self(self):
        a = np.diag([1.0, 3.0])
        assert loewner_geq(a, a) == (True, 0.0)

    def test_diag(self):
        holds, gap = loewner_geq(np.diag([2.0, 5.0]), np.diag([1.0, 4.0]))
        assert holds and gap == pytest.approx(1.0, rel=1e-15)

    def test_singular_difference(self):
        holds, gap = loewner_geq([[2.0, 1.0], [1.0, 2.0]], np.eye(2))
        assert holds and abs(gap) <= 1e-15

    def test_violation(self):
        holds, gap = loewner_geq(np.eye(2), np.diag([1.0, 1.001]))
        assert not holds and gap == pytest.approx(-0.001, rel=1e-9)

    def test_mismatch(self):
        with pytest.raises(InputError):
            loewner_geq(np.eye(2), np.eye(3))


class TestSpectralBounds:
    def test_condition_one(self):
        bd = spectral_bounds_from(np.diag([1.0, 2.0]), np.diag([4.0, 8.0]))
        assert (bd.m_prime, bd.m, bd.big_m, bd.big_m_prime) == (1.0, 2.0, 4.0, 8.0)
        assert bd.h == 2.0 and bd.h_prime == 8.0 and bd.condition == 1

    def test_condition_two(self):
        bd = spectral_bounds_from(np.diag([4.0, 8.0]), np.diag([1.0, 2.0]))
        assert (bd.m_prime, bd.m, bd.big_m, bd.big_m_prime, bd.h, bd.h_prime) == (1.0, 2.0, 4.0, 8.0, 2.0, 8.0)
        assert bd.condition == 2

    def test_overlap(self):
        with pytest.raises(ConditionError, match="conditions not satisfied"):
            spectral_bounds_from(np.diag([1.0, 5.0]), np.diag([4.0, 8.0]))

    def test_touching_spectra_rejected(self):
        with pytest.raises(ConditionError):
            spectral_bounds_from(np.diag([1.0, 2.0]), np.diag([2.0, 3.0]))

    def test_invalid_constants(self):
        with pytest.raises(ConditionError):
            SpectralBounds(1.0, 2.0, 2.0, 3.0)

    def test_admits(self):
        a, b = np.diag([1.0, 2.0]), np.diag([4.0, 8.0])
        assert SpectralBounds(0.5, 2.5, 3.0, 10.0).admits(a, b)
        assert not SpectralBounds(1.5, 2.5, 3.0, 10.0).admits(a, b)


class TestRandomSpd:
    def test_degenerate(self):
        np.testing.assert_array_equal(random_spd_with_spectrum(2, 3.0, 3.0, 0).array, 3.0 * np.eye(2))

    def test_spectrum(self):
        lam = sym_eigen(random_spd_with_spectrum(4, 1.0, 2.0, 7).array).lam
        assert lam[0] == pytest.approx(1.0, abs=1e-12)
        assert lam[-1] == pytest.approx(2.0, abs=1e-12)
        assert np.all((lam >= 1.0 - 1e-12) & (lam <= 2.0 + 1e-12))

    def test_deterministic(self):
        x = random_spd_with_spectrum(5, 0.3, 4.0, 123).array
        y = random_spd_with_spectrum(5, 0.3, 4.0, 123).array
        assert x.tobytes() == y.tobytes()

    @pytest.mark.parametrize("dim, lo, hi", [(1, 1.0, 2.0), (65, 1.0, 2.0), (3, 0.0, 1.0), (3, 2.0, 1.0)])
    def test_invalid(self, dim, lo, hi):
        with pytest.raises(InputError):
            random_spd_with_spectrum(dim, lo, hi, 0)
