"""
Newform dimensions and the counting law
=======================================

Cusp-form dimensions on Gamma_0(N), newforms by lambda2-inversion, and the
count of holomorphic newforms with analytic conductor at most Q.
"""

import math

import numpy as np

from conductorlab.modforms import (density_consistency, dim_cusp_forms, dim_newforms, empirical_counts,
                                   fit_growth)

# genus of X_0(N) for a few levels, and the first weights at level 1
print("genus X_0(N):", {N: dim_cusp_forms(N, 2) for N in (11, 23, 37, 389)})
print("dim S_k(1):  ", {k: dim_cusp_forms(1, k) for k in (12, 16, 24, 36)})
print("dim S_4^new(10) =", dim_newforms(10, 4))

# newform dimensions are close to (k - 1)/12 * M(N)
devs = [density_consistency(N, 24) for N in range(1, 501)]
print(f"mean relative gap at k = 24 over N <= 500: {np.mean(devs):.4f}")

# N(Q) counts pairs (level, weight) with N (1 + k^2) <= Q, weighted by newform dimension
Qs = [float(Q) for Q in np.geomspace(1e3, 1e6, 13)]
counts = empirical_counts(Qs)
for Q, n in zip(Qs, counts):
    print(f"Q = {Q:>12.1f}  N(Q) = {n:>11}  N(Q)/Q^2 = {n / Q**2:.7f}")

fit = fit_growth(list(zip(Qs, counts)))
print(f"fitted exponent {fit.exponent:.4f}, constant {fit.constant:.6f}")

# the limit of N(Q)/Q^2 predicted from the local measures
ds = math.fsum((k - 1) / (1 + k * k) ** 2 for k in range(2, 200_000, 2))
predicted = ds * 540 / math.pi**6 / 24
print(f"predicted N(Q)/Q^2 limit {predicted:.7f}")
