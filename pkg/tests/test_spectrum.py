"""Population spectra against independently derived oracles.

The block-model oracles below never touch the package's eigensolver: two-block
eigenvalues come from the quadratic formula on the reduced matrix P diag(pi),
eigenfunction block values from the explicit null-space ratio, and moments
from exact cell sums. Power-kernel quantities are closed form.
"""

import numpy as np
import pytest

from graphonlab import (
    AssumptionViolation,
    BlockModel,
    BrownianSqrt,
    GridKernel,
    ParameterError,
    PowerKernel,
    UnsupportedModelError,
    analytic_spectrum,
    l2_residual,
    nystrom_spectrum,
    regime_constants,
)
from graphonlab.spectrum import DEGENERATE, NONDEGENERATE

P = [[0.6, 0.2], [0.2, 0.6]]
SYM = BlockModel([0.5, 0.5], P)
UNEQ = BlockModel([1 / 3, 2 / 3], P)


def two_block_oracle(p, q, pi1):
    """Eigenvalues and normalized block values of P diag(pi), by hand.

    Reduced matrix M = [[p pi1, q pi2], [q pi1, p pi2]]; eigenvalues from
    the quadratic formula, eigenvector ratio from the first row of
    (M - lam I) v = 0, normalization from pi1 v1^2 + pi2 v2^2 = 1.
    """
    pi2 = 1.0 - pi1
    tr = p * pi1 + p * pi2
    det = (p * pi1) * (p * pi2) - (q * pi2) * (q * pi1)
    disc = np.sqrt(tr * tr - 4.0 * det)
    lams = [(tr + disc) / 2.0, (tr - disc) / 2.0]
    pairs = []
    for lam in lams:
        # (p pi1 - lam) v1 + q pi2 v2 = 0
        ratio = (lam - p * pi1) / (q * pi2)
        v1 = 1.0 / np.sqrt(pi1 + pi2 * ratio**2)
        pairs.append((lam, np.array([v1, v1 * ratio])))
    return pairs


class TestAnalyticBlock:
    def test_symmetric_sbm_eigenvalues(self):
        spec = analytic_spectrum(SYM)
        oracle = two_block_oracle(0.6, 0.2, 0.5)
        assert spec.eigenvalues == pytest.approx([l for l, _ in oracle], abs=1e-14)
        assert spec.eigenvalues == pytest.approx([0.4, 0.2], abs=1e-14)
        assert spec.rank_exact
        assert spec.provenance == "analytic"

    def test_symmetric_sbm_eigenfunctions(self):
        spec = analytic_spectrum(SYM)
        x = np.array([0.1, 0.3, 0.6, 0.9])
        # first eigenfunction is identically 1; second is +1 / -1 by block
        assert spec.phi(1, x) == pytest.approx([1, 1, 1, 1], abs=1e-12)
        assert spec.phi(2, x) == pytest.approx([1, 1, -1, -1], abs=1e-12)

    def test_unequal_sbm_against_oracle(self):
        spec = analytic_spectrum(UNEQ)
        oracle = two_block_oracle(0.6, 0.2, 1 / 3)
        assert spec.eigenvalues == pytest.approx([l for l, _ in oracle], abs=1e-14)
        for k, (_, v) in enumerate(oracle, start=1):
            got = spec.phi(k, np.array([0.1, 0.9]))
            sign = 1.0 if got[0] * v[0] > 0 else -1.0
            assert got == pytest.approx(sign * v, abs=1e-12)

    def test_block_moment_quadrature_is_exact(self):
        spec = analytic_spectrum(UNEQ)
        oracle = two_block_oracle(0.6, 0.2, 1 / 3)
        for k, (_, v) in enumerate(oracle, start=1):
            m2 = (1 / 3) * v[0] ** 2 + (2 / 3) * v[1] ** 2
            m4 = (1 / 3) * v[0] ** 4 + (2 / 3) * v[1] ** 4
            assert spec.mean_phi_power(k, 2) == pytest.approx(m2, abs=1e-12)
            assert spec.mean_phi_power(k, 4) == pytest.approx(m4, abs=1e-12)
        assert spec.mean_phi_prod(1, 2) == pytest.approx(0.0, abs=1e-12)

    def test_rank_one_block_drops_zero_modes(self):
        flat = BlockModel([0.25, 0.75], [[0.3, 0.3], [0.3, 0.3]])
        spec = analytic_spectrum(flat)
        assert len(spec.eigenvalues) == 1
        assert spec.eigenvalues[0] == pytest.approx(0.3, abs=1e-14)
        assert spec.phi(1, np.array([0.1, 0.8])) == pytest.approx([1, 1], abs=1e-10)

    def test_tie_detection(self):
        with pytest.raises(AssumptionViolation, match="tie"):
            analytic_spectrum(BlockModel([0.5, 0.5], [[0.4, 0.0], [0.0, 0.4]]))
        # a +/- pair ties in |lambda| as well
        with pytest.raises(AssumptionViolation, match="tie"):
            analytic_spectrum(BlockModel([0.5, 0.5], [[0.0, 0.8], [0.8, 0.0]]))

    def test_sign_convention_first_node_positive(self):
        for model in (SYM, UNEQ):
            spec = analytic_spectrum(model)
            vals = spec.phi(1, np.array([0.01]))  # smallest node, mode 1
            assert vals[0] > 0
            vals2 = spec.phi(2, np.array([0.01]))
            assert vals2[0] > 0


class TestAnalyticPower:
    def test_eigenpair_closed_form(self):
        for alpha in (0.25, 0.5, 0.75):
            spec = analytic_spectrum(PowerKernel(alpha))
            assert len(spec.eigenvalues) == 1
            assert spec.eigenvalues[0] == pytest.approx(1 / (2 * alpha + 1), abs=1e-15)
            x = np.array([0.04, 0.36, 1.0])
            want = np.sqrt(2 * alpha + 1) * x**alpha
            assert spec.phi(1, x) == pytest.approx(want, abs=1e-14)

    def test_moments_closed_form(self):
        spec = analytic_spectrum(PowerKernel(0.5))
        assert spec.mean_phi_power(1, 2) == pytest.approx(1.0, abs=1e-15)
        # E[phi^4] = (2a+1)^2/(4a+1) = 4/3 at a = 1/2
        assert spec.mean_phi_power(1, 4) == pytest.approx(4 / 3, abs=1e-15)

    def test_unsupported_models(self):
        with pytest.raises(UnsupportedModelError):
            analytic_spectrum(BrownianSqrt())
        with pytest.raises(UnsupportedModelError):
            analytic_spectrum(GridKernel([[0.5]]))


class TestNystrom:
    def test_parameter_gates(self):
        with pytest.raises(ParameterError):
            nystrom_spectrum(SYM, grid_size=32)
        with pytest.raises(ParameterError):
            nystrom_spectrum(SYM, grid_size=64, modes=65)

    def test_matches_analytic_on_aligned_grid(self):
        # block boundaries fall on grid boundaries: discretization is exact
        spec_a = analytic_spectrum(SYM)
        spec_n = nystrom_spectrum(SYM, grid_size=512, modes=8)
        assert len(spec_n.eigenvalues) == 2  # zero modes dropped
        assert spec_n.eigenvalues == pytest.approx(spec_a.eigenvalues, abs=1e-9)
        spec_a2 = analytic_spectrum(UNEQ)
        spec_n2 = nystrom_spectrum(UNEQ, grid_size=513, modes=8)
        assert spec_n2.eigenvalues == pytest.approx(spec_a2.eigenvalues, abs=1e-9)

    def test_node_moments_match_analytic(self):
        spec_n = nystrom_spectrum(SYM, grid_size=512, modes=4)
        assert spec_n.mean_phi_power(1, 2) == pytest.approx(1.0, abs=1e-12)
        assert spec_n.mean_phi_power(2, 4) == pytest.approx(1.0, abs=1e-12)
        assert spec_n.mean_phi_prod(1, 2) == pytest.approx(0.0, abs=1e-10)

    def test_extension_agrees_off_nodes(self):
        spec_a = analytic_spectrum(UNEQ)
        spec_n = nystrom_spectrum(UNEQ, grid_size=513, modes=4)
        x = np.array([0.05, 0.21, 0.47, 0.83])
        for k in (1, 2):
            assert spec_n.phi(k, x) == pytest.approx(spec_a.phi(k, x), abs=1e-8)

    def test_min_kernel_eigenvalues(self):
        # W(x,y) = min(x,y) discretized on cell centers; the continuum
        # operator solves T sin(w x) = sin(w x)/w^2 with cos(w) = 0, so
        # lambda_k = 1/((k - 1/2)^2 pi^2)
        m = 128
        centers = (np.arange(m) + 0.5) / m
        model = GridKernel(np.minimum(centers[:, None], centers[None, :]))
        spec = nystrom_spectrum(model, grid_size=m, modes=5)
        want = [1.0 / ((k - 0.5) ** 2 * np.pi**2) for k in range(1, 6)]
        assert spec.eigenvalues == pytest.approx(want, rel=3e-3)

    def test_brownian_sqrt_hs_mass_accounted(self):
        spec = nystrom_spectrum(BrownianSqrt(), grid_size=256, modes=6)
        pts = (np.arange(256) + 0.5) / 256
        W = BrownianSqrt().evaluate(pts[:, None], pts[None, :])
        hs = np.mean(W**2)
        assert np.sum(spec.eigenvalues**2) + spec.tail_sq == pytest.approx(hs, rel=1e-10)
        assert spec.tail_sq >= 0.0

    def test_quadrature_residuals_within_budget(self):
        cases = [
            (SYM, analytic_spectrum(SYM)),
            (PowerKernel(0.5), analytic_spectrum(PowerKernel(0.5))),
            (BrownianSqrt(), nystrom_spectrum(BrownianSqrt(), 512, 6)),
        ]
        for model, spec in cases:
            for k in range(1, len(spec.eigenvalues) + 1):
                budget = 1e-4 * max(abs(spec.eigenvalues[k - 1]), 1.0)
                assert l2_residual(model, spec, k) <= budget

    def test_orthonormal_on_independent_grid(self):
        spec = nystrom_spectrum(BrownianSqrt(), 512, 4)
        pts = (np.arange(4096) + 0.5) / 4096
        vals = np.stack([spec.phi(k, pts) for k in (1, 2, 3, 4)])
        gram = vals @ vals.T / len(pts)
        assert gram == pytest.approx(np.eye(4), abs=1e-4)


class TestRegimeConstants:
    def test_symmetric_sbm_constants(self):
        spec = analytic_spectrum(SYM)
        c = regime_constants(spec, 2)
        assert c.eigenvalue == pytest.approx(0.2, abs=1e-14)
        assert c.gap == pytest.approx(0.2, abs=1e-14)
        assert c.sigma_sq == pytest.approx(0.0, abs=1e-15)
        assert c.regime == DEGENERATE
        # centering constant: lambda_1^2 / (lambda_2 - lambda_1) = -0.8
        assert c.c_r == pytest.approx(-0.8, abs=1e-12)
        assert c.tail_bound == 0.0

    def test_unequal_sbm_nondegenerate(self):
        spec = analytic_spectrum(UNEQ)
        c = regime_constants(spec, 2)
        oracle = two_block_oracle(0.6, 0.2, 1 / 3)
        _, v = oracle[1]
        sigma_sq = (1 / 3) * v[0] ** 4 + (2 / 3) * v[1] ** 4 - 1.0
        assert c.sigma_sq == pytest.approx(sigma_sq, abs=1e-12)
        assert c.regime == NONDEGENERATE
        assert c.sigma_sq > 1e-2

    def test_power_kernel_constants(self):
        spec = analytic_spectrum(PowerKernel(0.5))
        c = regime_constants(spec, 1)
        assert c.sigma_sq == pytest.approx(1 / 3, abs=1e-12)
        # rank one: the only other spectral point is 0
        assert c.gap == pytest.approx(0.5, abs=1e-15)
        assert c.c_r == 0.0
        assert c.regime == NONDEGENERATE

    def test_gaussian_variance_one_twelfth(self):
        spec = analytic_spectrum(PowerKernel(0.5))
        c = regime_constants(spec, 1)
        assert c.eigenvalue**2 * c.sigma_sq == pytest.approx(1 / 12, abs=1e-12)

    def test_parameter_errors(self):
        spec = analytic_spectrum(SYM)
        with pytest.raises(ParameterError):
            regime_constants(spec, 0)
        with pytest.raises(ParameterError):
            regime_constants(spec, 3)
        with pytest.raises(ParameterError):
            regime_constants(spec, 2, truncation=1)

    def test_centering_respects_magnitude_bound(self):
        # |c_r| <= sum_{k != r} lambda_k^2 / gap for every computed spectrum
        for spec, r in [
            (analytic_spectrum(UNEQ), 1),
            (analytic_spectrum(UNEQ), 2),
            (nystrom_spectrum(BrownianSqrt(), 256, 6), 2),
            (nystrom_spectrum(BrownianSqrt(), 256, 6), 3),
        ]:
            c = regime_constants(spec, r)
            others = np.delete(spec.eigenvalues, r - 1)
            assert abs(c.c_r) <= np.sum(others**2) / c.gap + 1e-12

    def test_coefficient_square_sum_bound(self):
        # sum (lam_r lam_k / (lam_r - lam_k))^2 <= (lam_r^2 / gap^2) sum lam_k^2
        for spec, r in [
            (analytic_spectrum(SYM), 2),
            (analytic_spectrum(UNEQ), 1),
            (nystrom_spectrum(BrownianSqrt(), 256, 8), 2),
        ]:
            c = regime_constants(spec, r)
            lam_r = c.eigenvalue
            others = np.delete(spec.eigenvalues, r - 1)
            coeffs = lam_r * others / (lam_r - others)
            assert np.sum(coeffs**2) <= (lam_r**2 / c.gap**2) * np.sum(others**2) + 1e-12
