import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conductorlab.conductors import enumerate_definite_lattice
from conductorlab.modforms import (GrowthFit, NegativeDimensionError, cusp_table, density_consistency,
                                   dim_cusp_forms, dim_newforms, empirical_count, empirical_counts,
                                   fit_growth, newform_table, nu2_local, nu3_local, nu_inf_local)
from conductorlab.primes import divisors, factorint


# brute-force level invariants straight from their definitions

def brute_psi(N):
    return round(N * math.prod(1 + 1 / p for p, _ in factorint(N)))


def brute_nu2(N):
    return 0 if N % 4 == 0 else sum(1 for x in range(N) if (x * x + 1) % N == 0)


def brute_nu3(N):
    return 0 if N % 9 == 0 else sum(1 for x in range(N) if (x * x + x + 1) % N == 0)


def euler_phi(n):
    return sum(1 for j in range(1, n + 1) if math.gcd(j, n) == 1)


def brute_nu_inf(N):
    return sum(euler_phi(math.gcd(d, N // d)) for d in divisors(N))


def brute_dim(N, k):
    if k % 2 or k < 2:
        return 0
    psi, n2, n3, ninf = brute_psi(N), brute_nu2(N), brute_nu3(N), brute_nu_inf(N)
    if k == 2:
        return 1 + psi / 12 - n2 / 4 - n3 / 3 - ninf / 2
    return ((k - 1) / 12 * psi + (k // 4 - (k - 1) / 4) * n2
            + (k // 3 - (k - 1) / 3) * n3 - ninf / 2)


def local_prod(N, rule):
    return math.prod(rule(p, r) for p, r in factorint(N))


def test_level_invariants_match_definitions():
    for N in range(1, 600):
        assert local_prod(N, nu2_local) == brute_nu2(N)
        assert local_prod(N, nu3_local) == brute_nu3(N)
        assert local_prod(N, nu_inf_local) == brute_nu_inf(N)


def test_closed_form_matches_brute_formula():
    for N in range(1, 300):
        for k in (2, 4, 6, 8, 12, 14, 24):
            assert dim_cusp_forms(N, k) == pytest.approx(brute_dim(N, k), abs=1e-9)


def test_cusp_examples():
    assert dim_cusp_forms(1, 12) == 1
    assert dim_cusp_forms(11, 2) == 1
    assert dim_cusp_forms(1, 2) == 0
    assert dim_cusp_forms(5, 3) == 0 and dim_cusp_forms(5, 0) == 0
    with pytest.raises(ValueError):
        dim_cusp_forms(0, 12)


@pytest.mark.parametrize("N,k,dim", [
    # genus of X_0(N) and a few higher weights, as tabulated in the LMFDB
    (11, 2, 1), (23, 2, 2), (37, 2, 2), (100, 2, 7), (389, 2, 32), (1000, 2, 131),
    (1, 24, 2), (1, 36, 3), (10, 4, 3), (5, 4, 1), (2, 8, 1), (3, 6, 1), (4, 6, 1),
])
def test_known_cusp_dimensions(N, k, dim):
    assert dim_cusp_forms(N, k) == dim


@pytest.mark.parametrize("N,k,dim", [
    (10, 4, 1), (37, 2, 2), (22, 2, 0), (11, 2, 1), (100, 2, 1), (389, 2, 32), (2, 100, 8),
])
def test_known_newform_dimensions(N, k, dim):
    assert dim_newforms(N, k) == dim


def test_newform_edge_cases():
    for k in (12, 16, 24, 40):
        assert dim_newforms(1, k) == dim_cusp_forms(1, k)
    for p in (2, 3, 5, 7, 11, 13, 101):
        assert dim_newforms(p, 2) == dim_cusp_forms(p, 2)


def test_old_new_resolution():
    L = 2000
    for k in range(2, 41, 2):
        new = newform_table(L, k).values
        cusp = cusp_table(L, k).values
        assert np.all(new[1:] >= 0)
        assert np.all(new[1:] <= cusp[1:])
        tau = np.array([0] + [len(divisors(n)) for n in range(1, L + 1)])
        rebuilt = np.zeros(L + 1, dtype=np.int64)
        for d in range(1, L + 1):
            rebuilt[d::d] += new[d] * tau[1:L // d + 1]
        assert np.array_equal(rebuilt[1:], cusp[1:])


def test_tables_match_scalar_values():
    for k in (2, 4, 12, 26):
        ct, nt = cusp_table(700, k), newform_table(700, k)
        assert len(ct) == 700 and nt.provenance == "convolved-new" and ct.provenance == "closed-form"
        for N in range(1, 701):
            assert ct[N] == dim_cusp_forms(N, k)
            assert nt[N] == dim_newforms(N, k)
    assert not cusp_table(10, 5).values.any()


def test_correction_terms_are_lower_order():
    L = 2000
    tau = np.array([0] + [len(divisors(n)) for n in range(1, L + 1)])
    psi = np.array([0] + [brute_psi(n) for n in range(1, L + 1)])
    N = np.arange(L + 1)
    for k in range(2, 41, 2):
        gap = np.abs(cusp_table(L, k).values - (k - 1) / 12 * psi)
        assert np.all(gap[1:] <= 2 * (np.sqrt(N[1:]) * tau[1:] + k))


def test_density_consistency():
    assert density_consistency(1, 12) == pytest.approx(1 / 12)
    assert density_consistency(2, 100) < 0.25
    assert density_consistency(2, 100) == pytest.approx(abs(8 - 99 / 12) / (99 / 12))
    mean = np.mean([density_consistency(N, 24) for N in range(1, 501)])
    assert mean < 0.05
    with pytest.raises(ValueError):
        density_consistency(5, 2)
    with pytest.raises(ValueError):
        density_consistency(5, 7)


def brute_count(Q, q=None):
    if q is None:
        total, k = 0, 2
        while 1 + k * k <= Q:
            total += sum(dim_newforms(N, k) for N in range(1, Q // (1 + k * k) + 1))
            k += 2
        return total
    return sum(dim_newforms(q * N, k) for N, k in enumerate_definite_lattice(Q, q))


def test_count_examples():
    assert empirical_count(55) == 1
    assert empirical_count(54.9) == 0
    assert empirical_count(5) == 0
    assert empirical_count(25) == 0
    with pytest.raises(ValueError):
        empirical_count(0.5)


def test_count_matches_brute_force():
    Qs = [1, 55, 100, 500, 1234, 5000, 20_000]
    assert empirical_counts(Qs) == [brute_count(Q) for Q in Qs]
    for q in (2, 3, 11):
        assert empirical_counts(Qs, ramified_prime=q) == [brute_count(Q, q) for Q in Qs]


def test_count_product_convention():
    # weight k has conductor (k+1)(k+3)/4 under the product convention
    Q = 3000
    total, k = 0, 2
    while (k + 1) * (k + 3) <= 4 * Q:
        total += sum(dim_newforms(N, k) for N in range(1, 4 * Q // ((k + 1) * (k + 3)) + 1))
        k += 2
    assert empirical_count(Q, convention="product") == total


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 200_000), min_size=2, max_size=6))
def test_count_nondecreasing(Qs):
    Qs = sorted(Qs)
    counts = empirical_counts(Qs)
    assert all(a <= b for a, b in zip(counts, counts[1:]))


def test_count_reproducible_across_workers():
    Qs = [10**4, 3 * 10**4, 10**5]
    ref = empirical_counts(Qs)
    assert empirical_counts(Qs) == ref
    for w in (2, 4, 8):
        assert empirical_counts(Qs, workers=w) == ref


def test_count_constant_matches_prediction():
    # N(Q) / Q^2 -> (1/24) * 1/(zeta(2) zeta(4)) * sum_k (k-1)/(1+k^2)^2
    ds = mpmath.nsum(lambda j: (2 * j - 1) / (1 + (2 * j) ** 2) ** 2, [1, mpmath.inf])
    predicted = float(ds / (24 * mpmath.zeta(2) * mpmath.zeta(4)))
    observed = empirical_count(10**6) / 1e12
    assert observed == pytest.approx(predicted, rel=0.01)


def test_fit_growth_synthetic():
    fit = fit_growth([(Q, 3 * Q * Q) for Q in np.geomspace(10, 1e6, 9)])
    assert isinstance(fit, GrowthFit)
    assert fit.exponent == pytest.approx(2.0, abs=1e-12)
    assert fit.constant == pytest.approx(3.0, rel=1e-10)
    assert fit.max_residual < 1e-10
    noisy = fit_growth([(Q, Q**1.5 * (1.1 if i % 2 else 0.9)) for i, Q in enumerate(range(10, 80, 10))])
    assert noisy.max_residual == pytest.approx(math.log(1.1), rel=0.5)


def test_fit_growth_rejects_bad_input():
    with pytest.raises(ValueError):
        fit_growth([(10, 1), (20, 2), (30, 3), (40, 4)])
    with pytest.raises(ValueError):
        fit_growth([(10, 1), (20, 0), (30, 3), (40, 4), (50, 5)])
    with pytest.raises(ValueError):
        fit_growth([(10, k) for k in range(1, 6)])


def test_negative_dimension_is_an_error_type():
    assert issubclass(NegativeDimensionError, ArithmeticError)
