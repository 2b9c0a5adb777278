"""What survives the jump from kernel to adjacency eigenvalues, and what doesn't.

The adjacency matrix A_n adds Bernoulli edge noise on top of the kernel
matrix K_n. At the sqrt(n) scale the noise washes out:
sqrt(n)(lambda_r(A_n) - lambda_r(K_n))/(n-1) shrinks along a ladder of
sizes, so the Gaussian limit carries over to adjacency eigenvalues. At the
O(1) scale of the degenerate regime it does not: lambda_r(A_n) -
lambda_r(K_n) keeps an order-one bias (about E[W(1-W)]/lambda_r) and an
order-one spread (variance about 2 E[W(1-W)]), so the weighted chi-square
law describes the kernel statistic only.
"""

import numpy as np

from graphonlab import BlockModel, ExperimentConfig, adjacency_comparison, run_experiment

UNEQ = BlockModel([1 / 3, 2 / 3], [[0.6, 0.2], [0.2, 0.6]])
SYM = BlockModel([0.5, 0.5], [[0.6, 0.2], [0.2, 0.6]])

print("unequal blocks, mode 2: the sqrt(n)-scale transfer")
cfg = ExperimentConfig(
    model=UNEQ, r=2, n=600, replications=80, seed=2718,
    matrix_source="both", ladder=(150, 300, 600),
)
rep = adjacency_comparison(cfg)
for size, med, p90 in zip(rep.ladder, rep.medians, rep.p90s):
    print(f"  n={size:4d}: median |adjacency - kernel| statistic gap = "
          f"{med:.4f}   (90th pct {p90:.4f})")
print(f"  strictly decreasing: {rep.decreasing}")
ks = rep.ks_adjacency
print(f"  adjacency statistic vs the Gaussian law at n=600: "
      f"D={ks['statistic']:.3f} p={ks['p_value']:.3f}")

print()
print("equal blocks, mode 2: the O(1) scale does NOT transfer")
cfg = ExperimentConfig(
    model=SYM, r=2, n=600, replications=60, seed=577, matrix_source="both"
)
out = run_experiment(cfg)
diff = np.array(
    [r.statistic_adj_deg - r.statistic_deg for r in out.records if r.clean]
)
# E[W(1-W)] for this model: both entries 0.6 and 0.2 contribute 0.24 and
# 0.16 with equal weight
ew = 0.5 * (0.6 * 0.4) + 0.5 * (0.2 * 0.8)
print(f"  adjacency-minus-kernel centered statistic over {len(diff)} draws:")
print(f"    mean {diff.mean():+.3f}   (predicted bias E[W(1-W)]/lambda_2 = "
      f"{ew / 0.2:+.3f})")
print(f"    sd   {diff.std(ddof=1):.3f}    (predicted from edge noise: "
      f"sqrt(2 E[W(1-W)]) = {np.sqrt(2 * ew):.3f})")
print("  so at this scale the edge noise neither vanishes nor centers away;")
print("  degenerate-regime limit checks must use the kernel matrix.")
