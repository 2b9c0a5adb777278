"""Population spectra and regime constants: where the dichotomy is decided.

For each model we print the leading eigenvalues (closed form where one
exists, quadrature otherwise) and the constants attached to a target mode:
the spectral gap, the variance sigma_r^2 of the squared eigenfunction, and
the regime that variance dictates.  sigma_r^2 > 0 puts the sqrt(n)-scaled
eigenvalue fluctuation in the Gaussian regime; sigma_r^2 = 0 puts the O(1)
centered fluctuation in the weighted chi-square regime.
"""

import numpy as np

from graphonlab import (
    DEGENERATE,
    BlockModel,
    BrownianSqrt,
    PowerKernel,
    analytic_spectrum,
    chi_square_law,
    gaussian_law,
    nystrom_spectrum,
    regime_constants,
)

cases = [
    ("equal blocks, mode 2", BlockModel([0.5, 0.5], [[0.6, 0.2], [0.2, 0.6]]), 2),
    ("unequal blocks, mode 2", BlockModel([1 / 3, 2 / 3], [[0.6, 0.2], [0.2, 0.6]]), 2),
    ("square-root product, mode 1", PowerKernel(0.5), 1),
    ("brownian min kernel, mode 1", BrownianSqrt(), 1),
]

for name, model, r in cases:
    try:
        spec = analytic_spectrum(model)
    except Exception:
        spec = nystrom_spectrum(model, grid_size=512, modes=8)
    cons = regime_constants(spec, r)
    lams = ", ".join(f"{v:+.5f}" for v in spec.eigenvalues[:4])
    print(f"{name}  [{spec.provenance}]")
    print(f"  eigenvalues: {lams}" + (" ..." if len(spec) > 4 else ""))
    print(f"  lambda_{r} = {cons.eigenvalue:+.5f}, gap = {cons.gap:.5f}, "
          f"sigma_{r}^2 = {cons.sigma_sq:.5f}  ->  {cons.regime}")
    if cons.regime == DEGENERATE:
        law = chi_square_law(spec, cons)
        co = ", ".join(f"{c:+.4f}" for c in law.coefficients)
        print(f"  limit: sum of ({co}) times centered chi-square(1) variables,")
        print(f"  after centering by C_{r} = {cons.c_r:+.4f}")
    else:
        law = gaussian_law(cons)
        print(f"  limit: centered Gaussian, variance "
              f"lambda_{r}^2 sigma_{r}^2 = {law.variance:.5f}")
    print()

# The two block models differ only in their block weights, yet land on
# opposite sides of the dichotomy: with equal weights the second
# eigenfunction is +-1 and its square carries no variance.
sym = analytic_spectrum(BlockModel([0.5, 0.5], [[0.6, 0.2], [0.2, 0.6]]))
u = np.linspace(0.01, 0.99, 9)
print("equal-blocks phi_2 on a grid:", np.round(sym.phi(2, u), 6))
