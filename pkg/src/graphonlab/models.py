"""Graphon models: symmetric measurable kernels on the unit square.

A graphon here is a symmetric function W(x, y) on [0, 1]^2 taking values in
[0, sup_norm_bound]. Kernels bounded by 1 double as edge-probability
functions for dense random graphs; kernels exceeding 1 still define an
integral operator and a kernel matrix but cannot drive edge sampling.

All models evaluate elementwise on numpy arrays with broadcasting, which is
what the sampling code relies on to build n x n matrices without Python
loops.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ParameterError

__all__ = [
    "GraphonModel",
    "BlockModel",
    "PowerKernel",
    "BrownianSqrt",
    "GridKernel",
    "ValidationReport",
]

#: entrywise tolerance for "is this matrix symmetric" checks
_SYM_TOL = 1e-12


@dataclass
class ValidationReport:
    """Outcome of :meth:`GraphonModel.validate`.

    ``passed`` is True iff ``violations`` is empty.
    """

    passed: bool
    violations: list = field(default_factory=list)


def _as_unit_interval(z, name):
    """Coerce ``z`` to a float array and check every entry lies in [0, 1]."""
    arr = np.asarray(z, dtype=float)
    if arr.size and (np.min(arr) < 0.0 or np.max(arr) > 1.0 or not np.all(np.isfinite(arr))):
        raise DomainError(f"{name} must lie in [0, 1]")
    return arr


class GraphonModel:
    """Base class; concrete models implement :meth:`_kernel`."""

    #: short identifier used in reports and config files
    name = "abstract"

    def _kernel(self, x, y):
        raise NotImplementedError

    def evaluate(self, x, y):
        """Evaluate W at (x, y), elementwise with broadcasting.

        Raises
        ------
        DomainError
            If any coordinate falls outside [0, 1].
        """
        x = _as_unit_interval(x, "x")
        y = _as_unit_interval(y, "y")
        return self._kernel(x, y)

    def sup_norm_bound(self):
        """An attained upper bound on sup |W|."""
        raise NotImplementedError

    def params(self):
        """Model parameters as a plain dict (config echo, manifests)."""
        return {}

    def validate(self, grid=32):
        """Check symmetry, range, and parameter sanity on a deterministic grid.

        ``grid`` x ``grid`` midpoint pairs are evaluated (the default 32 gives
        1024 pairs). Returns a :class:`ValidationReport`; never raises on a
        failing check.
        """
        violations = []
        pts = (np.arange(grid) + 0.5) / grid
        X, Y = np.meshgrid(pts, pts, indexing="ij")
        vals = self.evaluate(X, Y)
        if not np.all(np.isfinite(vals)):
            violations.append("kernel evaluates to a non-finite value")
        asym = np.max(np.abs(vals - vals.T))
        if asym > _SYM_TOL:
            violations.append(f"kernel asymmetric on grid: max |W(x,y)-W(y,x)| = {asym:.3e}")
        bound = self.sup_norm_bound()
        if np.min(vals) < 0.0:
            violations.append(f"kernel takes negative value {np.min(vals):.3e}")
        if np.max(vals) > bound + 1e-12:
            violations.append(
                f"kernel exceeds its sup norm bound: {np.max(vals):.6g} > {bound:.6g}"
            )
        violations.extend(self._validate_params())
        return ValidationReport(passed=not violations, violations=violations)

    def _validate_params(self):
        return []


class BlockModel(GraphonModel):
    """Piecewise-constant kernel of a stochastic block model.

    Parameters
    ----------
    proportions : array_like, shape (B,)
        Positive block proportions summing to 1.
    connectivity : array_like, shape (B, B)
        Symmetric matrix of within/between-block edge probabilities in [0, 1].

    Block b occupies the half-open cell [c_{b-1}, c_b) of the cumulative
    proportions, with the last cell closed at 1.
    """

    name = "block_model"

    def __init__(self, proportions, connectivity):
        pi = np.asarray(proportions, dtype=float)
        P = np.asarray(connectivity, dtype=float)
        if pi.ndim != 1 or pi.size == 0:
            raise ParameterError("proportions must be a non-empty 1-d array")
        if np.any(pi <= 0.0):
            raise ParameterError("proportions must be strictly positive")
        if abs(pi.sum() - 1.0) > 1e-9:
            raise ParameterError(f"proportions must sum to 1 (got {pi.sum()!r})")
        if P.shape != (pi.size, pi.size):
            raise ParameterError(
                f"connectivity must be {pi.size} x {pi.size}, got {P.shape}"
            )
        if np.max(np.abs(P - P.T)) > _SYM_TOL:
            raise ParameterError("connectivity matrix must be symmetric")
        if np.min(P) < 0.0 or np.max(P) > 1.0:
            raise ParameterError("connectivity entries must lie in [0, 1]")
        self.proportions = pi
        self.connectivity = P
        # upper cell boundaries; force the last to exactly 1 so x = 1 lands
        # in the final block
        self._edges = np.cumsum(pi)
        self._edges[-1] = 1.0

    def block_index(self, x):
        """Map points of [0, 1] to block indices (vectorized)."""
        x = _as_unit_interval(x, "x")
        idx = np.searchsorted(self._edges, x, side="right")
        return np.minimum(idx, self.proportions.size - 1)

    def _kernel(self, x, y):
        top = self.proportions.size - 1
        bx = np.minimum(np.searchsorted(self._edges, x, side="right"), top)
        by = np.minimum(np.searchsorted(self._edges, y, side="right"), top)
        return self.connectivity[bx, by]

    def sup_norm_bound(self):
        return float(np.max(self.connectivity))

    def params(self):
        return {
            "proportions": self.proportions.tolist(),
            "connectivity": self.connectivity.tolist(),
        }

    def _validate_params(self):
        out = []
        if abs(self.proportions.sum() - 1.0) > 1e-9:
            out.append("proportions do not sum to 1")
        return out


class PowerKernel(GraphonModel):
    """Rank-one kernel W(x, y) = (x y)^alpha with alpha in (0, 1)."""

    name = "power_kernel"

    def __init__(self, alpha):
        alpha = float(alpha)
        if not 0.0 < alpha < 1.0:
            raise ParameterError("alpha must lie in (0, 1)")
        self.alpha = alpha

    def _kernel(self, x, y):
        return (x * y) ** self.alpha

    def sup_norm_bound(self):
        # attained at (1, 1)
        return 1.0

    def params(self):
        return {"alpha": self.alpha}


class BrownianSqrt(GraphonModel):
    """Kernel W(x, y) = min(x, y) + sqrt(x y).

    Sup norm 2 (attained at (1, 1)), so this kernel supports spectral and
    kernel-matrix experiments but not edge sampling.
    """

    name = "brownian_sqrt"

    def _kernel(self, x, y):
        return np.minimum(x, y) + np.sqrt(x * y)

    def sup_norm_bound(self):
        return 2.0


class GridKernel(GraphonModel):
    """Piecewise-constant kernel on a uniform m x m grid of cells.

    ``values[i, j]`` is the kernel value on cell [i/m, (i+1)/m) x
    [j/m, (j+1)/m), with the last cell in each direction closed at 1.
    Values must form a symmetric matrix with entries in [0, 1].
    """

    name = "grid_kernel"

    def __init__(self, values):
        V = np.asarray(values, dtype=float)
        if V.ndim != 2 or V.shape[0] != V.shape[1] or V.shape[0] == 0:
            raise ParameterError("grid values must be a non-empty square matrix")
        if np.max(np.abs(V - V.T)) > _SYM_TOL:
            raise ParameterError("grid values must be symmetric")
        if np.min(V) < 0.0 or np.max(V) > 1.0:
            raise ParameterError("grid values must lie in [0, 1]")
        self.values = V

    def cell_index(self, x):
        x = _as_unit_interval(x, "x")
        m = self.values.shape[0]
        return np.minimum((x * m).astype(int), m - 1)

    def _kernel(self, x, y):
        m = self.values.shape[0]
        ix = np.minimum((x * m).astype(int), m - 1)
        iy = np.minimum((y * m).astype(int), m - 1)
        return self.values[ix, iy]

    def sup_norm_bound(self):
        return float(np.max(self.values))

    def params(self):
        return {"grid_values": self.values.tolist()}
