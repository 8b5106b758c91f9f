"""
From Plancherel to Sato-Tate
============================

The unramified Plancherel density at q converges to the semicircle as q
grows; moment errors decay like 1/q.
"""

import numpy as np

from conductorlab.primes import prime_sieve
from conductorlab.satotate import (convergence_table, integrate, monomial, ramified_defect, semicircle,
                                   serre_density, spherical_mass, st_density)

xs = np.linspace(-1.5, 1.5, 7)
print("x:          ", np.round(xs, 3))
print("semicircle: ", np.round(st_density(xs), 5))
for q in (2, 11, 101):
    print(f"q = {q:<4}     ", np.round(serre_density(q, xs), 5))

# semicircle moments are Catalan numbers; each local measure has mass 1
print("moments:", [round(integrate(semicircle(), monomial(m)), 10) for m in (2, 4, 6, 8)])
print("spherical mass at q = 2, 97:", spherical_mass(2), spherical_mass(97))

table = convergence_table(["x2", "x4"], prime_sieve(10_000))
for q, e in table.errors("x2")[:5] + table.errors("x2")[-2:]:
    print(f"q = {q:>5}  |m2(q) - 1| = {e:.3e}")
print("fitted decay exponents:", {k: round(v, 4) for k, v in table.decay.items()})

# the ramified part of the local mass is 1/q up to lower order terms
for q in (2, 3, 101, 9973):
    print(f"q = {q:>5}  q * defect = {q * ramified_defect(q):.8f}")
