"""
Multiplicative functions on ideals
==================================

Local rules, Dirichlet convolution, and partial sums over the ideals of
Q, Q(i) and Q(sqrt 2).
"""

import math

from conductorlab.arith import (dirichlet_convolve, dirichlet_inverse, eval_mult, identity, lambda2,
                                mobius_sq, partial_sum, phi2, slice_mass, tau2)
from conductorlab.fields import IdealFactorization, NumberFieldSpec

# phi2 = id * mu^2 is the index of Gamma_0(N); check it on a few integers
for n in (1, 2, 6, 12, 100):
    print(f"phi2({n}) = {eval_mult(phi2, IdealFactorization.of_integer(n))}")

# convolution works prime by prime, so identities can be checked locally
built = dirichlet_convolve(identity, mobius_sq)
print("id * mu^2 agrees with phi2 on 7^r:", [built(7, r) for r in range(5)] == [phi2(7, r) for r in range(5)])
print("inverse of tau2 at 5^r:", [dirichlet_inverse(tau2)(5, r) for r in range(5)])
print("lambda2 at 5^r:        ", [lambda2(5, r) for r in range(5)])

# the conductor-slice mass M = phi2 * lambda2 has M(q) = q - 1 and M(q^2) = q^2 - q - 1
print("M(11), M(121):", slice_mass(11, 1), slice_mass(11, 2))

# partial sums of phi2 grow like (residue / 2) * X^2 / zeta_F(2)
QQ = NumberFieldSpec.rationals()
for X in (10, 10**3, 10**5, 10**6):
    S = partial_sum(phi2, QQ, X)
    print(f"X = {X:>8}  sum = {S:>14}  sum / X^2 = {S / X**2:.6f}")
print(f"limit 15 / (2 pi^2) = {15 / (2 * math.pi**2):.6f}")

# the same machinery runs over quadratic fields through the norm map
for spec in ("Q(sqrt,-1)", "Q(sqrt,2)"):
    field = NumberFieldSpec.parse(spec)
    print(spec, "sum of phi2 up to norm 1e5:", partial_sum(phi2, field, 10**5))
