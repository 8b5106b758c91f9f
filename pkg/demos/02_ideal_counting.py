"""
Counting ideals and estimating residues
=======================================

Prime splitting in quadratic fields and the slope of the ideal-counting
function, which approaches the residue of the Dedekind zeta function at 1.
"""

import math

from conductorlab.fields import NumberFieldSpec, estimate_residue, ideal_count, split_prime

gaussian = NumberFieldSpec.parse("Q(sqrt,-1)")

# 5 splits, 3 stays inert, 2 ramifies
for p in (2, 3, 5, 13):
    primes = split_prime(gaussian, p)
    print(p, "->", [(q.norm, q.e) for q in primes])

# ideals of norm <= 5: (1), (1+i), (2), (2+i), (2-i)
print("ideals of norm <= 5 in Z[i]:", ideal_count(gaussian, 5))

# residues: 1 for Q, pi/4 for Q(i), 2 log(1 + sqrt 2) / sqrt 8 for Q(sqrt 2)
exact = {"Q": 1.0, "Q(sqrt,-1)": math.pi / 4, "Q(sqrt,2)": 2 * math.log(1 + math.sqrt(2)) / math.sqrt(8)}
for spec, value in exact.items():
    est = estimate_residue(NumberFieldSpec.parse(spec), 10**6)
    print(f"{spec:<11} estimate {est.value:.6f} +- {est.half_width:.1e}   exact {value:.6f}")
