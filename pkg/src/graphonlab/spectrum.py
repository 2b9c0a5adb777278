"""Population spectra of graphon integral operators.

The integral operator of a kernel W acts on L2[0, 1] as
``(T f)(x) = integral W(x, y) f(y) dy``. This module computes its leading
eigenpairs either exactly (block models, power kernels) or by midpoint
Nystrom discretization, and derives the constants that classify the
fluctuation regime of a target eigenvalue:

* ``sigma_sq`` -- variance of phi_r(U)^2 under U ~ Unif[0,1]; zero exactly
  when phi_r^2 = 1 a.e., which is the degenerate regime,
* ``gap`` -- distance from lambda_r to the rest of the spectrum,
* ``c_r`` -- the spectral centering sum(k != r) lambda_k^2 / (lambda_r - lambda_k).

Conventions: modes are numbered from 1 in decreasing |eigenvalue| order;
eigenfunctions are normalized to E[phi_k(U)^2] = 1 and signed so that the
first quadrature node where |phi_k| > 1e-8 takes a positive value.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    AssumptionViolation,
    NumericError,
    ParameterError,
    UnsupportedModelError,
)
from .models import BlockModel, PowerKernel

__all__ = [
    "SpectralData",
    "RegimeConstants",
    "DEGENERATE",
    "NONDEGENERATE",
    "analytic_spectrum",
    "nystrom_spectrum",
    "regime_constants",
    "l2_residual",
]

DEGENERATE = "degenerate"
NONDEGENERATE = "nondegenerate"

#: relative threshold below which a discrete eigenvalue counts as zero
_RANK_TOL = 1e-12
#: absolute |lambda| spacing below which the decreasing-|lambda| order is
#: ambiguous; we refuse to guess
_TIE_TOL = 1e-12
#: variance threshold for the degenerate classification
_SIGMA_TOL = 1e-8


class SpectralData:
    """Retained eigenpairs of a graphon operator.

    Attributes
    ----------
    eigenvalues : ndarray
        Retained nonzero eigenvalues in decreasing |lambda| order.
    rank_exact : bool
        True when the retained modes are the entire nonzero spectrum.
    method : str
        "analytic" or "nystrom".
    grid_size : int or None
        Nystrom grid size (None for analytic spectra).
    tail_sq : float
        Sum of lambda_k^2 over modes not retained (0 when ``rank_exact``).
    """

    def __init__(self, eigenvalues, rank_exact, method, grid_size, tail_sq, backend):
        self.eigenvalues = np.asarray(eigenvalues, dtype=float)
        self.rank_exact = bool(rank_exact)
        self.method = method
        self.grid_size = grid_size
        self.tail_sq = float(tail_sq)
        self._backend = backend
        _check_order(self.eigenvalues)

    @property
    def provenance(self):
        if self.method == "analytic":
            return "analytic"
        return f"nystrom(m={self.grid_size}, modes={len(self.eigenvalues)})"

    def __len__(self):
        return len(self.eigenvalues)

    def _check_mode(self, k):
        if not 1 <= k <= len(self.eigenvalues):
            raise ParameterError(
                f"mode index {k} outside 1..{len(self.eigenvalues)}"
            )

    def phi(self, k, x):
        """Evaluate eigenfunction ``k`` (1-based) at points ``x``."""
        self._check_mode(k)
        return self._backend.phi(k - 1, np.asarray(x, dtype=float))

    def mean_phi_power(self, k, p):
        """E[phi_k(U)^p] under the spectrum's own quadrature."""
        self._check_mode(k)
        return self._backend.moment(k - 1, p)

    def mean_phi_prod(self, j, k):
        """E[phi_j(U) phi_k(U)] under the spectrum's own quadrature."""
        self._check_mode(j)
        self._check_mode(k)
        return self._backend.cross(j - 1, k - 1)


@dataclass
class RegimeConstants:
    """Constants governing the fluctuation law of one target eigenvalue.

    ``regime`` is ``DEGENERATE`` when sigma_sq < 1e-8 (phi_r^2 constant) and
    ``NONDEGENERATE`` otherwise. ``c_r`` is the finite-truncation centering
    constant and ``tail_bound`` an upper bound on the centering mass ignored
    by the truncation.
    """

    r: int
    eigenvalue: float
    gap: float
    sigma_sq: float
    regime: str
    c_r: float
    tail_bound: float
    truncation: int


# ---------------------------------------------------------------------------
# evaluation backends


class _BlockBackend:
    """Piecewise-constant eigenfunctions: values per block, weights pi."""

    def __init__(self, model, block_values):
        self.model = model
        self.values = block_values  # (B, K): phi_k value on block b
        self.weights = model.proportions

    def phi(self, k0, x):
        return self.values[self.model.block_index(x), k0]

    def moment(self, k0, p):
        return float(np.sum(self.weights * self.values[:, k0] ** p))

    def cross(self, j0, k0):
        return float(np.sum(self.weights * self.values[:, j0] * self.values[:, k0]))


class _PowerBackend:
    """Single closed-form eigenfunction sqrt(2a+1) x^a."""

    def __init__(self, alpha):
        self.alpha = alpha

    def phi(self, k0, x):
        return np.sqrt(2.0 * self.alpha + 1.0) * x**self.alpha

    def moment(self, k0, p):
        a = self.alpha
        return (2.0 * a + 1.0) ** (p / 2.0) / (p * a + 1.0)

    def cross(self, j0, k0):
        return self.moment(0, 2)


class _NystromBackend:
    """Node values plus the standard Nystrom extension off the nodes."""

    def __init__(self, model, nodes, node_values, eigenvalues):
        self.model = model
        self.nodes = nodes
        self.values = node_values  # (m, K)
        self.eigenvalues = eigenvalues

    def phi(self, k0, x):
        lam = self.eigenvalues[k0]
        flat = np.ravel(x)
        W = self.model.evaluate(flat[:, None], self.nodes[None, :])
        out = (W @ self.values[:, k0]) / (lam * len(self.nodes))
        return out.reshape(np.shape(x))

    def moment(self, k0, p):
        return float(np.mean(self.values[:, k0] ** p))

    def cross(self, j0, k0):
        return float(np.mean(self.values[:, j0] * self.values[:, k0]))


# ---------------------------------------------------------------------------
# spectrum constructors


def _check_order(lams):
    mags = np.abs(lams)
    if np.any(np.diff(mags) > 0):
        raise AssumptionViolation("eigenvalues not in decreasing |lambda| order")


def _order_and_tie_check(lams, retain):
    """Indices of the top ``retain`` nonzero modes by |lambda|.

    Raises AssumptionViolation when adjacent retained magnitudes (or the
    retention boundary) are closer than the tie tolerance: the ordering
    would be a guess, not a computation.
    """
    mags = np.abs(lams)
    scale = mags.max(initial=0.0)
    if scale == 0.0:
        raise AssumptionViolation("operator has no nonzero eigenvalues")
    nonzero = np.flatnonzero(mags > _RANK_TOL * scale)
    order = nonzero[np.argsort(-mags[nonzero], kind="stable")]
    kept = order[:retain]
    boundary = order[: min(retain + 1, len(order))]
    gaps = -np.diff(mags[boundary])
    if len(gaps) and np.min(gaps) < _TIE_TOL:
        raise AssumptionViolation(
            "tied |eigenvalues| make the mode order ambiguous "
            f"(spacing {np.min(gaps):.3e} < {_TIE_TOL:g})"
        )
    return kept


def _apply_sign_convention(values):
    """Flip columns so the first row with |phi| > 1e-8 is positive."""
    for k in range(values.shape[1]):
        col = values[:, k]
        idx = np.flatnonzero(np.abs(col) > 1e-8)
        if len(idx) and col[idx[0]] < 0:
            values[:, k] = -col
    return values


def analytic_spectrum(model):
    """Exact spectrum for models whose operator is finite rank in closed form.

    Supported: :class:`BlockModel` (B x B reduced eigenproblem) and
    :class:`PowerKernel` (rank one). Other models need
    :func:`nystrom_spectrum`.
    """
    if isinstance(model, PowerKernel):
        a = model.alpha
        lam = 1.0 / (2.0 * a + 1.0)
        return SpectralData(
            eigenvalues=[lam],
            rank_exact=True,
            method="analytic",
            grid_size=None,
            tail_sq=0.0,
            backend=_PowerBackend(a),
        )
    if isinstance(model, BlockModel):
        pi = model.proportions
        P = model.connectivity
        root = np.sqrt(pi)
        # symmetrized B x B problem: same eigenvalues as P diag(pi), and
        # orthonormal eigenvectors w map to block values v = w / sqrt(pi)
        # with sum pi_b v_b^2 = 1
        S = root[:, None] * P * root[None, :]
        try:
            w, V = np.linalg.eigh(S)
        except np.linalg.LinAlgError as exc:  # pragma: no cover
            raise NumericError(f"block eigenproblem failed: {exc}") from exc
        keep = _order_and_tie_check(w, retain=len(w))
        lams = w[keep]
        block_values = _apply_sign_convention(V[:, keep] / root[:, None])
        return SpectralData(
            eigenvalues=lams,
            rank_exact=True,
            method="analytic",
            grid_size=None,
            tail_sq=0.0,
            backend=_BlockBackend(model, block_values),
        )
    raise UnsupportedModelError(
        f"no closed-form spectrum for {type(model).__name__}; use nystrom_spectrum"
    )


def nystrom_spectrum(model, grid_size=512, modes=16):
    """Midpoint-rule Nystrom approximation of the leading spectrum.

    The operator is discretized on nodes x_i = (i - 1/2) / m as the matrix
    W(x_i, x_j) / m; eigenvectors are rescaled to E[phi^2] = 1 on the node
    measure and extended off the nodes by the Nystrom formula.

    Parameters
    ----------
    grid_size : int
        Number of midpoint nodes m; at least 64.
    modes : int
        Number of leading nonzero modes to retain (at most ``grid_size``;
        fewer are returned when the discrete rank is smaller).
    """
    m = int(grid_size)
    K = int(modes)
    if m < 64:
        raise ParameterError("grid_size must be at least 64")
    if not 1 <= K <= m:
        raise ParameterError("modes must lie in 1..grid_size")
    nodes = (np.arange(m) + 0.5) / m
    H = model.evaluate(nodes[:, None], nodes[None, :]) / m
    try:
        w, V = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"Nystrom eigenproblem failed: {exc}") from exc
    keep = _order_and_tie_check(w, retain=K)
    lams = w[keep]
    node_values = _apply_sign_convention(np.sqrt(m) * V[:, keep])
    tail_sq = float(np.sum(w**2) - np.sum(lams**2))
    return SpectralData(
        eigenvalues=lams,
        rank_exact=False,
        method="nystrom",
        grid_size=m,
        tail_sq=max(tail_sq, 0.0),
        backend=_NystromBackend(model, nodes, node_values, lams),
    )


def regime_constants(spec, r, truncation=None):
    """Classify the fluctuation regime of mode ``r`` and compute its constants.

    Parameters
    ----------
    spec : SpectralData
    r : int
        Target mode, 1-based in decreasing |lambda| order.
    truncation : int, optional
        Number of leading modes entering the centering sum; defaults to all
        retained modes. Mass beyond the truncation is summarized in
        ``tail_bound``.

    Raises
    ------
    ParameterError
        If ``r`` or ``truncation`` is out of range.
    AssumptionViolation
        If the spectral gap at mode ``r`` is below 1e-10.
    """
    lams = spec.eigenvalues
    if not 1 <= r <= len(lams):
        raise ParameterError(f"target mode {r} outside 1..{len(lams)}")
    K = len(lams) if truncation is None else int(truncation)
    if not r <= K <= len(lams):
        raise ParameterError(f"truncation {K} must lie in {r}..{len(lams)}")
    lam_r = float(lams[r - 1])
    others = np.delete(lams, r - 1)
    # 0 always belongs to the essential spectrum of the integral operator,
    # so the gap never exceeds |lambda_r|
    gap = abs(lam_r)
    if len(others):
        gap = min(gap, float(np.min(np.abs(lam_r - others))))
    if gap < 1e-10:
        raise AssumptionViolation(
            f"spectral gap {gap:.3e} at mode {r} is below 1e-10"
        )
    sigma_sq = spec.mean_phi_power(r, 4) - spec.mean_phi_power(r, 2) ** 2
    sigma_sq = max(float(sigma_sq), 0.0)
    regime = DEGENERATE if sigma_sq < _SIGMA_TOL else NONDEGENERATE
    head = lams[:K]
    mask = np.arange(K) != (r - 1)
    c_r = float(np.sum(head[mask] ** 2 / (lam_r - head[mask])))
    tail_sq = spec.tail_sq + float(np.sum(lams[K:] ** 2))
    return RegimeConstants(
        r=r,
        eigenvalue=lam_r,
        gap=float(gap),
        sigma_sq=sigma_sq,
        regime=regime,
        c_r=c_r,
        tail_bound=tail_sq / gap,
        truncation=K,
    )


def l2_residual(model, spec, k, grid=2048):
    """L2 residual ||T phi_k - lambda_k phi_k|| by midpoint quadrature.

    A diagnostic for how faithfully a retained eigenpair solves the
    integral equation; used by the test suite against the documented
    1e-4 * max(|lambda_k|, 1) budget.
    """
    pts = (np.arange(grid) + 0.5) / grid
    phi = spec.phi(k, pts)
    W = model.evaluate(pts[:, None], pts[None, :])
    image = W @ phi / grid
    res = image - spec.eigenvalues[k - 1] * phi
    return float(np.sqrt(np.mean(res**2)))
