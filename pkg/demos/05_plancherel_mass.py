"""
Local integrals and the global mass
===================================

Local Plancherel integrals of c^{-2}, the regularised Euler product, and
the leading constant for a given volume.
"""

from conductorlab.arith import local_dirichlet_series, slice_mass
from conductorlab.fields import NumberFieldSpec, PrimeIdeal
from conductorlab.plancherel import (ArchNormalization, compact_place_sum, finite_split_integral,
                                     leading_constant, real_split_integral, regularized_global_mass)

# closed form against the series sum_r M(q^r) q^{-2r}
for q in (2, 3, 5, 97):
    series = local_dirichlet_series(slice_mass, q, 2, 60)
    print(f"q = {q:>3}  closed {finite_split_integral(q, 2):.12f}  series {series.value:.12f}")

# archimedean pieces; the scales are conventions, here the defaults 1/(4 pi)
rep = real_split_integral(2.0)
print(f"split real place: {rep.value:.8f} +- {rep.truncation_error:.1e}")
ds = real_split_integral(2.0, ArchNormalization(0.0, 0.0, 1.0))
print(f"discrete series sum alone: {ds.value:.10f}")
cpt = compact_place_sum(2.0, 10**6)
print(f"compact place: {cpt.value:.8f} +- {cpt.truncation_error:.1e}")

# finite part over Q tends to 1/(zeta(2) zeta(4)) = 540/pi^6
QQ = NumberFieldSpec.rationals()
for P in (10**3, 10**4, 10**5, 10**6):
    m = regularized_global_mass(QQ, P_max=P)
    print(f"P_max = {P:>8}  mass {m.value:.10f} +- {m.truncation_error:.1e}")

# a definite algebra ramified at 2 and infinity
m = regularized_global_mass(QQ, ramified=[PrimeIdeal(2)], arch=["compact"], P_max=10**5)
C, err = leading_constant(1.0, m)
print(f"mass {m.value:.8f}, C(volume 1) = {C:.8f} +- {err:.1e}")
