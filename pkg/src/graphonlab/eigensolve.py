"""Dense symmetric eigensolving and matching against a population target.

The solver wraps LAPACK's dense symmetric routines (via numpy) and adds the
contracts the rest of the lab relies on: explicit symmetry checking,
decreasing eigenvalue order, and typed failures. ``match_target`` locates
the sample eigenvalue tracking a population eigenvalue and says whether the
identification is unambiguous at the half-gap resolution.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, NumericError

__all__ = [
    "EigenDecomposition",
    "MatchedEigenvalue",
    "symmetric_eigen",
    "match_target",
    "estimate_op_norm",
]


@dataclass
class EigenDecomposition:
    """Eigenvalues in decreasing order; vectors (columns) when requested."""

    values: np.ndarray
    vectors: Optional[np.ndarray] = None


@dataclass
class MatchedEigenvalue:
    """Sample eigenvalue closest to the target after 1/(n-1) normalization.

    ``index`` points into the decreasing-order value list (0-based).
    ``unambiguous`` is True iff the match lies within half the population
    spectral gap of the target and every other eigenvalue lies at least
    half a gap away.
    """

    index: int
    value: float
    normalized: float
    distance: float
    unambiguous: bool


def _check_symmetric(M):
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {M.shape}")
    scale = max(1.0, float(np.max(np.abs(M))) if M.size else 0.0)
    asym = float(np.max(np.abs(M - M.T))) if M.size else 0.0
    if asym > 1e-12 * scale:
        raise DomainError(f"matrix is not symmetric: max |M - M^T| = {asym:.3e}")
    return M


def symmetric_eigen(M, want_vectors=False):
    """Full spectrum of a symmetric matrix, eigenvalues decreasing.

    Raises
    ------
    DomainError
        If ``M`` is not square-symmetric within 1e-12 (relative to scale).
    NumericError
        If the underlying LAPACK routine fails to converge.
    """
    M = _check_symmetric(M)
    try:
        if want_vectors:
            w, V = np.linalg.eigh(M)
            return EigenDecomposition(values=w[::-1].copy(), vectors=V[:, ::-1].copy())
        w = np.linalg.eigvalsh(M)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"symmetric eigensolver failed: {exc}") from exc
    return EigenDecomposition(values=w[::-1].copy())


def match_target(decomp, constants, n):
    """Find the sample eigenvalue tracking the population target.

    Eigenvalues are normalized by 1/(n-1) and compared with the target
    ``constants.eigenvalue``; the nearest wins (first index on exact ties,
    flagged ambiguous). The half-gap criterion uses ``constants.gap``.
    """
    values = np.asarray(decomp.values, dtype=float)
    if n < 2:
        raise DomainError("matching needs n >= 2")
    normalized = values / (n - 1)
    dist = np.abs(normalized - constants.eigenvalue)
    best = int(np.argmin(dist))
    half_gap = constants.gap / 2.0
    others = np.delete(dist, best)
    unambiguous = bool(
        dist[best] < half_gap and (len(others) == 0 or np.min(others) >= half_gap)
    )
    return MatchedEigenvalue(
        index=best,
        value=float(values[best]),
        normalized=float(normalized[best]),
        distance=float(dist[best]),
        unambiguous=unambiguous,
    )


def estimate_op_norm(M, iters=50, seed=0):
    """Power-iteration estimate of the spectral norm of a symmetric matrix.

    Deterministic: the start vector comes from a fixed-seed generator. The
    estimate converges from below; callers needing a safety margin scale it
    up themselves.
    """
    M = np.asarray(M, dtype=float)
    n = M.shape[0]
    if n == 0 or not np.any(M):
        return 0.0
    v = np.random.default_rng(seed).standard_normal(n)
    v /= np.linalg.norm(v)
    est = 0.0
    for _ in range(iters):
        y = M @ v
        norm = np.linalg.norm(y)
        if norm == 0.0:
            return 0.0
        est = norm
        v = y / norm
    return float(est)
