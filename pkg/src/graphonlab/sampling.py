"""Sampling of latent positions, kernel matrices, and adjacency matrices.

Randomness is organized as named substreams keyed by (master seed,
replication index, stream label), built on numpy's SeedSequence spawn keys.
Every replication therefore has its own latent and edge streams, and a
record is a pure function of (config, replication) regardless of execution
order or thread count.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import AssumptionViolation, ParameterError

__all__ = [
    "MAX_N",
    "STREAM_LATENTS",
    "STREAM_EDGES",
    "STREAM_LAW",
    "stream",
    "draw_latents",
    "kernel_matrix",
    "adjacency_matrix",
    "SampleDraw",
    "draw",
]

#: hard cap on the number of vertices (dense n x n doubles)
MAX_N = 8192

STREAM_LATENTS = "latents"
STREAM_EDGES = "edges"
STREAM_LAW = "law"

_STREAM_IDS = {STREAM_LATENTS: 0, STREAM_EDGES: 1, STREAM_LAW: 2}


def stream(seed, replication, label):
    """Independent generator for one (seed, replication, label) triple."""
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ParameterError("seed must be a 64-bit unsigned integer")
    replication = int(replication)
    if replication < 0:
        raise ParameterError("replication index must be nonnegative")
    try:
        sid = _STREAM_IDS[label]
    except KeyError:
        raise ParameterError(f"unknown stream label {label!r}") from None
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(replication, sid))
    return np.random.default_rng(ss)


def _check_n(n):
    n = int(n)
    if n < 2:
        raise ParameterError("n must be at least 2")
    if n > MAX_N:
        raise ParameterError(f"n must not exceed {MAX_N}")
    return n


def draw_latents(n, rng):
    """n iid Unif[0,1) latent positions from the given generator."""
    return rng.random(_check_n(n))


def kernel_matrix(model, latents):
    """Conditional-mean matrix: W(U_i, U_j) off the diagonal, zeros on it."""
    u = np.asarray(latents, dtype=float)
    K = model.evaluate(u[:, None], u[None, :])
    np.fill_diagonal(K, 0.0)
    if __debug__:
        assert np.max(np.abs(K)) <= model.sup_norm_bound() + 1e-12
    return K


def adjacency_matrix(model, latents, rng):
    """Symmetric 0/1 adjacency with edge probabilities W(U_i, U_j).

    Upper-triangle entries (row-major order) are independent Bernoulli
    draws; the diagonal is zero. Only kernels bounded by 1 define edge
    probabilities.
    """
    if model.sup_norm_bound() > 1.0:
        raise AssumptionViolation("edge sampling requires sup norm <= 1")
    u = np.asarray(latents, dtype=float)
    n = len(u)
    P = model.evaluate(u[:, None], u[None, :])
    iu = np.triu_indices(n, k=1)
    edges = (rng.random(len(iu[0])) < P[iu]).astype(float)
    A = np.zeros((n, n))
    A[iu] = edges
    A += A.T
    return A


@dataclass
class SampleDraw:
    """One replication's raw material, with its seed provenance."""

    n: int
    seed: int
    replication: int
    latents: np.ndarray
    kernel: Optional[np.ndarray] = None
    adjacency: Optional[np.ndarray] = None


def draw(model, n, seed, replication=0, with_kernel=True, with_adjacency=False):
    """Draw latents and the requested matrices for one replication."""
    n = _check_n(n)
    u = draw_latents(n, stream(seed, replication, STREAM_LATENTS))
    K = kernel_matrix(model, u) if with_kernel else None
    A = None
    if with_adjacency:
        A = adjacency_matrix(model, u, stream(seed, replication, STREAM_EDGES))
    return SampleDraw(
        n=n, seed=int(seed), replication=int(replication),
        latents=u, kernel=K, adjacency=A,
    )
