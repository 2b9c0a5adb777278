"""Per-draw diagnostics connecting sample eigenvalues to population limits.

These are the finite-n quantities whose limits drive the fluctuation
dichotomy:

* the Hoeffding split of the eigenfunction-weighted pair average into mean,
  linear, and degenerate parts,
* empirical cross-projections of the target eigenfunction onto the other
  modes (asymptotically standard normal, independent across modes),
* a Kato-Temple enclosure certifying where the matched sample eigenvalue
  must lie,
* the first-order eigenvalue expansion with its rigorous remainder bound,
* the resolvent (second-order) correction through the orthogonal complement
  of the target direction.

Index convention: mode and eigenvalue indices r, k are 1-based in
decreasing |lambda| order, matching the spectrum module.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    AssumptionViolation,
    DomainError,
    NumericError,
    PreconditionError,
)
from .eigensolve import estimate_op_norm, symmetric_eigen
from .sampling import kernel_matrix

__all__ = [
    "HoeffdingParts",
    "CrossProjections",
    "KatoTempleInterval",
    "ExpansionRemainder",
    "rayleigh_quotient",
    "hoeffding_decompose",
    "cross_projections",
    "kato_temple_interval",
    "expansion_remainder",
    "resolvent_correction",
    "degenerate_pair_sum",
    "normalization_expansion",
]


@dataclass
class HoeffdingParts:
    """Decomposition of the pair average of phi_r(U_i) W(U_i,U_j) phi_r(U_j).

    ``total = mean_term + linear_term + degenerate_term`` exactly;
    ``centered_sq_mean`` is the empirical mean of phi_r(U_i)^2 - 1 and
    ``sum_sq`` the raw sum of phi_r(U_i)^2, so that
    ``sum_sq = n (1 + centered_sq_mean)`` exactly.
    """

    total: float
    mean_term: float
    linear_term: float
    degenerate_term: float
    centered_sq_mean: float
    sum_sq: float


@dataclass
class CrossProjections:
    """T_k = n^{-1/2} sum_i phi_r(U_i) phi_k(U_i) for the listed modes."""

    target: int
    modes: np.ndarray
    values: np.ndarray


@dataclass
class KatoTempleInterval:
    """Two-sided enclosure from a Rayleigh quotient and residual norm.

    Valid whenever exactly one eigenvalue of the matrix lies in the window
    (alpha, beta) handed to :func:`kato_temple_interval`; certifying that
    hypothesis is the caller's job.
    """

    lower: float
    upper: float
    rayleigh: float
    residual_norm: float


@dataclass
class ExpansionRemainder:
    """First-order perturbation term and the actual vs. bounded remainder."""

    eigenvalue: float
    perturbed: float
    first_order: float
    remainder: float
    bound: float
    gap: float
    op_norm_estimate: float


def rayleigh_quotient(M, phi_vals):
    """Quotient phi^T M phi / phi^T phi for a raw eigenfunction vector."""
    phi = np.asarray(phi_vals, dtype=float)
    s = float(phi @ phi)
    if s <= 0.0:
        raise DomainError("eigenfunction vector has zero norm")
    return float(phi @ (np.asarray(M, dtype=float) @ phi)) / s


def hoeffding_decompose(model, spec, r, latents, kernel=None):
    """Split the normalized pair sum for mode ``r`` at the given latents.

    ``kernel`` may pass a precomputed zero-diagonal kernel matrix for these
    latents to avoid rebuilding it.
    """
    u = np.asarray(latents, dtype=float)
    n = len(u)
    if n < 2:
        raise DomainError("need at least 2 latents")
    K = kernel_matrix(model, u) if kernel is None else kernel
    phi = spec.phi(r, u)
    lam_r = float(spec.eigenvalues[r - 1])
    total = float(phi @ (K @ phi)) / (n * (n - 1))
    v_stat = float(np.mean(phi**2) - 1.0)
    linear = 2.0 * lam_r * v_stat
    return HoeffdingParts(
        total=total,
        mean_term=lam_r,
        linear_term=linear,
        degenerate_term=total - lam_r - linear,
        centered_sq_mean=v_stat,
        sum_sq=float(np.sum(phi**2)),
    )


def cross_projections(spec, r, latents, modes=None):
    """Empirical projections of mode ``r`` onto the other retained modes."""
    u = np.asarray(latents, dtype=float)
    n = len(u)
    if modes is None:
        modes = [k for k in range(1, len(spec.eigenvalues) + 1) if k != r]
    modes = np.asarray(modes, dtype=int)
    if np.any(modes == r):
        raise PreconditionError("cross-projection modes must exclude the target")
    phi_r = spec.phi(r, u)
    vals = np.array([float(phi_r @ spec.phi(k, u)) for k in modes]) / np.sqrt(n)
    return CrossProjections(target=r, modes=modes, values=vals)


def kato_temple_interval(M, u, alpha, beta):
    """Enclose the single eigenvalue inside the window (alpha, beta).

    Raises
    ------
    PreconditionError
        If ``u`` is not a unit vector to 1e-10, or the Rayleigh quotient
        falls outside the open window.
    """
    u = np.asarray(u, dtype=float)
    if abs(np.linalg.norm(u) - 1.0) > 1e-10:
        raise PreconditionError("u must be a unit vector (||u|| - 1| <= 1e-10)")
    if not alpha < beta:
        raise PreconditionError("window must satisfy alpha < beta")
    M = np.asarray(M, dtype=float)
    Mu = M @ u
    eta = float(u @ Mu)
    if not alpha < eta < beta:
        raise PreconditionError(
            f"Rayleigh quotient {eta:.6g} outside window ({alpha:.6g}, {beta:.6g})"
        )
    res = Mu - eta * u
    rn2 = float(res @ res)
    # Temple's form: the lower bound leans on the far (upper) window edge
    # and vice versa
    return KatoTempleInterval(
        lower=eta - rn2 / (beta - eta),
        upper=eta + rn2 / (eta - alpha),
        rayleigh=eta,
        residual_norm=float(np.sqrt(rn2)),
    )


def expansion_remainder(M, E, r):
    """First-order expansion of eigenvalue ``r`` of M under perturbation E.

    ``r`` is 1-based into the decreasing-value spectrum of M. The returned
    ``bound = 2 ||E||^2 / gap`` is rigorous once ``||E|| < gap / 2``; the
    operator norm is a fixed-seed power-iteration estimate inflated by 1%,
    and the precondition is checked against that estimate.

    Raises
    ------
    AssumptionViolation
        If eigenvalue ``r`` of M is not simple.
    PreconditionError
        If the perturbation is too large for the expansion to be certified.
    """
    base = symmetric_eigen(M, want_vectors=True)
    values = base.values
    if not 1 <= r <= len(values):
        raise PreconditionError(f"index {r} outside 1..{len(values)}")
    lam = float(values[r - 1])
    others = np.delete(values, r - 1)
    if len(others) == 0:
        raise AssumptionViolation("1 x 1 matrix has no spectral gap")
    gap = float(np.min(np.abs(lam - others)))
    if gap == 0.0:
        raise AssumptionViolation(f"eigenvalue {r} is not simple")
    est = estimate_op_norm(np.asarray(E, dtype=float)) * 1.01
    if est >= gap / 2.0:
        raise PreconditionError(
            f"perturbation norm estimate {est:.3e} is not below half the gap {gap:.3e}"
        )
    u = base.vectors[:, r - 1]
    first = float(u @ (np.asarray(E, dtype=float) @ u))
    perturbed = symmetric_eigen(np.asarray(M) + np.asarray(E)).values
    lam_pert = float(perturbed[r - 1])
    return ExpansionRemainder(
        eigenvalue=lam,
        perturbed=lam_pert,
        first_order=first,
        remainder=lam_pert - lam - first,
        bound=2.0 * est**2 / gap,
        gap=gap,
        op_norm_estimate=est,
    )


def _complement_basis_rank1(K, u):
    """Compress K to the orthogonal complement of u in O(n^2).

    Uses the Householder reflector Q with Q e_1 = u (Q symmetric
    orthogonal), whose trailing columns form an orthonormal basis V of the
    complement; returns (V^T K V, V^T K u) without forming V.
    """
    n = len(u)
    w = u.copy()
    w[0] -= 1.0
    nw = np.linalg.norm(w)
    if nw < 1e-14:
        # u is e_1 already; the complement is the remaining coordinates
        return K[1:, 1:].copy(), K[1:, 0].copy()
    w /= nw
    Kw = K @ w
    wKw = float(w @ Kw)
    # Q K Q with Q = I - 2 w w^T, via two rank-1 updates
    G = K - 2.0 * np.outer(w, Kw) - 2.0 * np.outer(Kw, w) + 4.0 * wKw * np.outer(w, w)
    return G[1:, 1:], G[0, 1:].copy()


def resolvent_correction(K, u, lam_r, n):
    """Second-order correction u^T K V ((n-1) lam_r I - V^T K V)^{-1} V^T K u.

    ``V`` is an orthonormal basis of the complement of ``u``; the value is
    basis-independent. Solved densely via LU; the shifted block must be
    safely invertible.

    Raises
    ------
    PreconditionError
        If ``u`` is not a unit vector to 1e-10.
    NumericError
        If the shifted complement block is near singular
        (smallest singular value estimate <= 1e-8 n).
    """
    u = np.asarray(u, dtype=float)
    if abs(np.linalg.norm(u) - 1.0) > 1e-10:
        raise PreconditionError("u must be a unit vector (||u|| - 1| <= 1e-10)")
    K = np.asarray(K, dtype=float)
    B, b = _complement_basis_rank1(K, u)
    S = -B
    idx = np.arange(len(S))
    S[idx, idx] += (n - 1) * lam_r
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
            lu, piv = scipy.linalg.lu_factor(S)
    except scipy.linalg.LinAlgError as exc:
        raise NumericError(f"LU factorization of shifted block failed: {exc}") from exc
    # inverse-iteration estimate of the smallest |eigenvalue| of symmetric S
    z = np.random.default_rng(0).standard_normal(len(S))
    z /= np.linalg.norm(z)
    smallest = np.inf
    for _ in range(8):
        y = scipy.linalg.lu_solve((lu, piv), z)
        ny = np.linalg.norm(y)
        if not np.isfinite(ny) or ny == 0.0:
            raise NumericError("shifted complement block is numerically singular")
        smallest = 1.0 / ny
        z = y / ny
    if smallest <= 1e-8 * n:
        raise NumericError(
            f"shifted complement block near singular (sigma_min ~ {smallest:.3e})"
        )
    return float(b @ scipy.linalg.lu_solve((lu, piv), b))


def degenerate_pair_sum(model, spec, r, latents, kernel=None):
    """Both sides of the exact finite-rank identity for the centered pair sum.

    For a rank-exact spectrum whose target eigenfunction squares to 1
    everywhere, the centered pair sum (1/n) sum_{i != j} (h_r - lambda_r)
    equals sum_{k != r} lambda_k (T_k^2 - mean phi_k^2) exactly; returns
    ``(lhs, rhs)`` so callers can check the gap.
    """
    u = np.asarray(latents, dtype=float)
    n = len(u)
    K = kernel_matrix(model, u) if kernel is None else kernel
    phi = spec.phi(r, u)
    lam_r = float(spec.eigenvalues[r - 1])
    lhs = (float(phi @ (K @ phi)) - n * (n - 1) * lam_r) / n
    proj = cross_projections(spec, r, u)
    rhs = 0.0
    for k, t in zip(proj.modes, proj.values):
        phi_k = spec.phi(int(k), u)
        rhs += float(spec.eigenvalues[k - 1]) * (t**2 - float(np.mean(phi_k**2)))
    return lhs, rhs


def normalization_expansion(phi_vals):
    """First-order expansion of 1 / sum phi^2 around 1/n, with its bound.

    Returns ``(gap, bound)`` where ``gap`` is the absolute error of the
    expansion (1/n)(1 - centered_sq_mean) and ``bound`` the algebraic
    bound centered_sq_mean^2 / (n (1 - |centered_sq_mean|)), valid while
    |centered_sq_mean| < 1/2.
    """
    phi = np.asarray(phi_vals, dtype=float)
    n = len(phi)
    v = float(np.mean(phi**2) - 1.0)
    if abs(v) >= 0.5:
        raise PreconditionError("expansion requires |centered_sq_mean| < 1/2")
    s = float(np.sum(phi**2))
    gap = abs(1.0 / s - (1.0 - v) / n)
    bound = v**2 / (n * (1.0 - abs(v)))
    return gap, bound
