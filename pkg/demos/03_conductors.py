"""
Analytic conductors and the definite lattice
============================================

Local conductors under both archimedean conventions, global conductors of
shape literals, and the (level, weight) lattice for a definite algebra.
"""

from conductorlab.conductors import (DiscreteSeries, GlobalRepShape, PrincipalSeries,
                                     definite_lattice_size, enumerate_definite_lattice,
                                     global_conductor, local_conductor, oldform_multiplicity)
from conductorlab.fields import IdealFactorization

for d in (DiscreteSeries(2), DiscreteSeries(12), PrincipalSeries(3.0), PrincipalSeries(3.0, "odd")):
    print(f"{d!r:<40} quadratic {local_conductor(d)!s:<8} product {local_conductor(d, 'product')}")

# a weight 2 newform of level 11 has conductor 11 * (1 + 2^2)
for literal in ("p:11^1,ds:2", "ram:2^0,ds:4", "p:3^2,ram:5^1,cpt:3"):
    print(f"{literal:<22} c = {global_conductor(GlobalRepShape.parse(literal))}")

# a newform of conductor 5 occurs tau2(125 / 5) = 3 times at level 125
print("oldform multiplicity:", oldform_multiplicity(IdealFactorization.of_integer(5),
                                                    IdealFactorization.of_integer(125)))

# pairs (N, k) with q N (1 + k^2) <= Q, ramified at q = 3
print(list(enumerate_definite_lattice(60, 3)))
for Q in (10**3, 10**4, 10**5, 10**6):
    print(f"Q = {Q:>8}  lattice size {definite_lattice_size(Q, 3)}")
