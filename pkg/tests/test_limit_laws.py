"""Limit-law objects: regime gates, CDFs, sampling, truncation stability."""

import numpy as np
import pytest
import scipy.linalg

from graphonlab import (
    BlockModel,
    GaussianLaw,
    GridKernel,
    ParameterError,
    PowerKernel,
    WrongRegimeError,
    analytic_spectrum,
    chi_square_law,
    gaussian_law,
    law_cdf,
    law_quantiles,
    law_variance,
    nystrom_spectrum,
    regime_constants,
    sample_law,
)
from graphonlab.experiment import ks_two_sample

SYM = BlockModel([0.5, 0.5], [[0.6, 0.2], [0.2, 0.6]])
UNEQ = BlockModel([1.0 / 3.0, 2.0 / 3.0], [[0.6, 0.2], [0.2, 0.6]])
SYM_SPEC = analytic_spectrum(SYM)
UNEQ_SPEC = analytic_spectrum(UNEQ)


def normal_cdf_oracle(x):
    """Taylor-series standard normal CDF, independent of scipy.

    Phi(x) = 1/2 + pdf(x) * sum_{k>=0} x^{2k+1} / (1 * 3 * ... * (2k+1)).
    """
    term = x
    total = 0.0
    for k in range(80):
        total += term
        term *= x * x / (2 * k + 3)
    return 0.5 + np.exp(-x * x / 2.0) / np.sqrt(2.0 * np.pi) * total


def hadamard_block_model():
    """8 equal blocks whose connectivity diagonalizes in the Hadamard basis.

    Every eigenfunction takes values +-1, so every mode is degenerate; the
    last five eigenvalues are tiny, giving a nearly rank-3 spectrum with a
    controlled tail.
    """
    d = np.array([0.5, 0.06, 0.05, 4e-6, 3e-6, 2.5e-6, 2e-6, 1.5e-6])
    H = scipy.linalg.hadamard(8).astype(float)
    P = H @ np.diag(d) @ H.T
    assert np.all((P >= 0.0) & (P <= 1.0))
    return BlockModel(np.full(8, 0.125), P), d


class TestRegimeGates:
    def test_gaussian_rejects_degenerate(self):
        cons = regime_constants(SYM_SPEC, 2)
        with pytest.raises(WrongRegimeError):
            gaussian_law(cons)

    def test_chi_square_rejects_nondegenerate(self):
        cons = regime_constants(UNEQ_SPEC, 2)
        with pytest.raises(WrongRegimeError):
            chi_square_law(UNEQ_SPEC, cons)

    def test_negative_variance_rejected(self):
        with pytest.raises(ParameterError):
            GaussianLaw(variance=-1.0)
        with pytest.raises(ParameterError):
            GaussianLaw(variance=float("nan"))


class TestGaussianLaw:
    def test_variance_composition(self):
        cons = regime_constants(UNEQ_SPEC, 2)
        law = gaussian_law(cons)
        assert law.variance == pytest.approx(cons.eigenvalue**2 * cons.sigma_sq, rel=1e-14)
        assert law.variance == pytest.approx(0.16256315**2 * 1.2662933916258674, rel=1e-6)

    def test_power_kernel_variance(self):
        cons = regime_constants(analytic_spectrum(PowerKernel(0.5)), 1)
        assert gaussian_law(cons).variance == pytest.approx(1.0 / 12.0, rel=1e-12)

    def test_cdf_matches_series_oracle(self):
        got = float(law_cdf(GaussianLaw(variance=1.0), 1.0))
        assert got == pytest.approx(normal_cdf_oracle(1.0), abs=1e-12)
        assert got == pytest.approx(0.8413447460685429, abs=1e-12)
        scaled = float(law_cdf(GaussianLaw(variance=4.0), 2.0))
        assert scaled == pytest.approx(normal_cdf_oracle(1.0), abs=1e-12)

    def test_cdf_symmetry_and_vector_input(self):
        law = GaussianLaw(variance=0.5)
        x = np.linspace(-3, 3, 41)
        F = law_cdf(law, x)
        assert F.shape == x.shape
        assert np.all(np.diff(F) > 0)
        assert np.max(np.abs(F + F[::-1] - 1.0)) < 1e-14

    def test_sampling_moments(self):
        law = GaussianLaw(variance=0.25)
        s = sample_law(law, 200000, np.random.default_rng(6))
        assert abs(np.mean(s)) < 4.0 * 0.5 / np.sqrt(len(s))
        assert np.var(s, ddof=1) == pytest.approx(0.25, rel=0.03)

    def test_quantiles(self):
        law = GaussianLaw(variance=2.0)
        p = np.array([0.05, 0.25, 0.5, 0.75, 0.95])
        q = law_quantiles(law, p)
        assert np.all(np.diff(q) > 0)
        assert np.max(np.abs(q + q[::-1])) < 1e-12
        with pytest.raises(ParameterError):
            law_quantiles(law, [0.0, 0.5])

    def test_zero_variance_point_mass(self):
        law = GaussianLaw(variance=0.0)
        assert np.all(sample_law(law, 100, np.random.default_rng(0)) == 0.0)
        assert float(law_cdf(law, -1e-12)) == 0.0
        assert float(law_cdf(law, 0.0)) == 1.0


class TestChiSquareLaw:
    def test_symmetric_block_frozen_constants(self):
        cons = regime_constants(SYM_SPEC, 2)
        law = chi_square_law(SYM_SPEC, cons)
        assert list(law.modes) == [1]
        assert law.coefficients[0] == pytest.approx(-0.4, abs=1e-12)
        assert law.centering == pytest.approx(-0.8, abs=1e-12)
        assert law_variance(law) == pytest.approx(0.32, abs=1e-12)
        assert law.tail_sq_mass == pytest.approx(0.0, abs=1e-12)

    def test_top_mode_law(self):
        cons = regime_constants(SYM_SPEC, 1)
        law = chi_square_law(SYM_SPEC, cons)
        assert law.coefficients[0] == pytest.approx(0.4, abs=1e-12)
        assert law.centering == pytest.approx(0.2, abs=1e-12)

    def test_single_coefficient_support_bounds(self):
        # c (Z^2 - 1) is bounded by |c| on the side where c (Z^2 - 1) < c Z^2
        rng = np.random.default_rng(3)
        low = chi_square_law(SYM_SPEC, regime_constants(SYM_SPEC, 2))
        s = sample_law(low, 100000, rng)
        assert np.max(s) <= 0.4 + 1e-12
        high = chi_square_law(SYM_SPEC, regime_constants(SYM_SPEC, 1))
        s = sample_law(high, 100000, rng)
        assert np.min(s) >= -0.4 - 1e-12

    def test_sampling_moments_and_skew(self):
        law = chi_square_law(SYM_SPEC, regime_constants(SYM_SPEC, 2))
        s = sample_law(law, 200000, np.random.default_rng(11))
        assert abs(np.mean(s)) < 5.0 * np.sqrt(0.32 / len(s))
        assert np.var(s, ddof=1) == pytest.approx(0.32, rel=0.05)
        # negative coefficient makes the series left-skewed
        m3 = np.mean((s - np.mean(s)) ** 3)
        assert m3 < 0

    def test_cdf_against_analytic_oracle(self):
        # P(-0.4 (Z^2 - 1) <= x) = P(Z^2 >= 1 - x / 0.4) for x <= 0.4
        law = chi_square_law(SYM_SPEC, regime_constants(SYM_SPEC, 2))
        for x in (0.0, 0.2):
            want = 2.0 * (1.0 - normal_cdf_oracle(np.sqrt(1.0 - x / 0.4)))
            assert float(law_cdf(law, x)) == pytest.approx(want, abs=6e-3)

    def test_cdf_monotone_with_limits(self):
        law = chi_square_law(SYM_SPEC, regime_constants(SYM_SPEC, 2))
        grid = np.linspace(-3.0, 1.0, 101)
        F = law_cdf(law, grid)
        assert np.all(np.diff(F) >= 0)
        assert float(law_cdf(law, -1e9)) == 0.0
        assert float(law_cdf(law, 1e9)) == 1.0

    def test_cdf_table_deterministic_across_instances(self):
        cons = regime_constants(SYM_SPEC, 2)
        a = chi_square_law(SYM_SPEC, cons)
        b = chi_square_law(SYM_SPEC, cons)
        x = np.linspace(-2, 0.4, 17)
        assert np.array_equal(law_cdf(a, x), law_cdf(b, x))

    def test_quantiles_monotone(self):
        law = chi_square_law(SYM_SPEC, regime_constants(SYM_SPEC, 2))
        q = law_quantiles(law, [0.05, 0.25, 0.5, 0.75, 0.95])
        assert np.all(np.diff(q) > 0)
        assert q[-1] <= 0.4 + 1e-12

    def test_rank_one_degenerate_is_point_mass(self):
        spec = nystrom_spectrum(GridKernel([[0.4]]), grid_size=64, modes=1)
        cons = regime_constants(spec, 1)
        law = chi_square_law(spec, cons)
        assert len(law.coefficients) == 0
        assert np.all(sample_law(law, 50, np.random.default_rng(0)) == 0.0)
        assert float(law_cdf(law, -1e-9)) == 0.0
        assert float(law_cdf(law, 0.0)) == 1.0
        assert np.all(law_quantiles(law, [0.1, 0.9]) == 0.0)
        assert law_variance(law) == 0.0

    def test_truncation_gates(self):
        cons = regime_constants(SYM_SPEC, 2)
        with pytest.raises(ParameterError):
            chi_square_law(SYM_SPEC, cons, truncation=1)
        with pytest.raises(ParameterError):
            chi_square_law(SYM_SPEC, cons, truncation=3)


class TestCoefficientAlgebra:
    def test_centering_coefficient_identity(self):
        # lambda_k + lambda_k^2 / (lambda_r - lambda_k)
        #   == lambda_r lambda_k / (lambda_r - lambda_k)
        _model, d = hadamard_block_model()
        for lams, r in ((UNEQ_SPEC.eigenvalues, 1), (UNEQ_SPEC.eigenvalues, 2), (d, 2)):
            lam_r = lams[r - 1]
            for k, lam_k in enumerate(lams, start=1):
                if k == r:
                    continue
                lhs = lam_k + lam_k**2 / (lam_r - lam_k)
                rhs = lam_r * lam_k / (lam_r - lam_k)
                assert lhs == pytest.approx(rhs, rel=1e-12)


class TestTruncationStability:
    def test_hadamard_model_spectrum(self):
        model, d = hadamard_block_model()
        spec = analytic_spectrum(model)
        assert np.allclose(spec.eigenvalues, d, rtol=1e-9, atol=1e-12)
        nys = nystrom_spectrum(model, grid_size=512, modes=8)
        assert np.allclose(nys.eigenvalues, d, rtol=1e-7, atol=1e-12)
        for k in range(1, 9):
            assert regime_constants(nys, k).regime == "degenerate"

    def test_law_stable_under_extra_tiny_modes(self):
        model, _d = hadamard_block_model()
        nys = nystrom_spectrum(model, grid_size=512, modes=8)
        cons = regime_constants(nys, 2)
        small = chi_square_law(nys, cons, truncation=3)
        full = chi_square_law(nys, cons, truncation=8)
        assert list(small.modes) == [1, 3]
        assert small.coefficients[0] == pytest.approx(0.06 * 0.5 / (0.06 - 0.5), rel=1e-6)
        assert small.coefficients[1] == pytest.approx(0.3, rel=1e-6)
        assert small.centering == full.centering
        # the dropped-mass precondition for distributional stability
        assert small.tail_sq_mass < 1e-6 * float(np.sum(small.coefficients**2))
        a = sample_law(small, 100000, np.random.default_rng(101))
        b = sample_law(full, 100000, np.random.default_rng(202))
        assert ks_two_sample(a, b).statistic < 0.01
