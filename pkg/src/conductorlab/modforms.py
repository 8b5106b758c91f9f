"""Dimensions of cusp forms and newforms on Gamma_0(N) with trivial character,
and the empirical count of the holomorphic slice of the universal family.

For even ``k >= 4``::

    dim S_k(N) = (k-1)/12 psi(N) + (floor(k/4) - (k-1)/4) nu2(N)
                 + (floor(k/3) - (k-1)/3) nu3(N) - nu_inf(N)/2

and ``dim S_2(N)`` is the genus of X_0(N). ``nu2`` and ``nu3`` count elliptic
points of order 2 and 3; they vanish when ``4 | N`` resp. ``9 | N``.
Everything is evaluated as twelve times the dimension, in integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._parallel import pmap
from .arith import lambda2, phi2, slice_mass
from .primes import dirichlet_convolve_arrays, divisors, factorint, multiplicative_table


class NegativeDimensionError(ArithmeticError):
    """A newform dimension came out negative: an implementation bug."""


def _legendre(a, p):
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def nu2_local(p, r):
    if p == 2:
        return 1 if r == 1 else 0
    return 1 + _legendre(-1, p)


def nu3_local(p, r):
    if p == 3:
        return 1 if r == 1 else 0
    return 1 + _legendre(-3, p)


def nu_inf_local(p, r):
    # sum over i of phi(p^min(i, r-i))
    total = 0
    for i in range(r + 1):
        m = min(i, r - i)
        total += 1 if m == 0 else p**m - p**(m - 1)
    return total


def _local_product(N, rule):
    out = 1
    for p, r in factorint(N):
        out *= rule(p, r)
    return out


def _twelve_dim(k, psi, nu2, nu3, nuinf):
    if k == 2:
        return 12 + psi - 3 * nu2 - 4 * nu3 - 6 * nuinf
    return ((k - 1) * psi + (12 * (k // 4) - 3 * (k - 1)) * nu2
            + (12 * (k // 3) - 4 * (k - 1)) * nu3 - 6 * nuinf)


@lru_cache(maxsize=65536)
def dim_cusp_forms(N, k):
    """``dim S_k(Gamma_0(N))``, trivial character."""
    if N < 1:
        raise ValueError("level must be positive")
    if k < 2 or k % 2:
        return 0
    psi = _local_product(N, lambda p, r: phi2(p, r))
    t = _twelve_dim(k, psi, _local_product(N, nu2_local), _local_product(N, nu3_local),
                    _local_product(N, nu_inf_local))
    assert t % 12 == 0, (N, k, t)
    return t // 12


def _lambda2_int(n):
    return _local_product(n, lambda p, r: lambda2(p, r))


@lru_cache(maxsize=65536)
def dim_newforms(N, k):
    """``sum_{d | N} lambda2(N/d) dim S_k(d)``."""
    val = sum(_lambda2_int(N // d) * dim_cusp_forms(d, k) for d in divisors(N))
    if val < 0:
        raise NegativeDimensionError(f"dim S_{k}^new({N}) = {val}")
    return val


@dataclass(frozen=True)
class LevelData:
    """Arrays ``psi, nu2, nu3, nu_inf, lambda2`` on levels ``0..L``."""

    L: int
    psi: np.ndarray
    nu2: np.ndarray
    nu3: np.ndarray
    nuinf: np.ndarray
    lam2: np.ndarray


_LEVEL_CACHE = {}


def level_data(L, workers=1):
    """Level arrays up to ``L``, reusing any cached table that is at least as long."""
    for cached_L, ld in _LEVEL_CACHE.items():
        if cached_L >= L:
            return ld
    tab = lambda rule: multiplicative_table(L, rule, workers)
    ld = LevelData(L, tab(lambda p, r: phi2(p, r)), tab(nu2_local), tab(nu3_local),
                   tab(nu_inf_local), tab(lambda p, r: lambda2(p, r)))
    for arr in (ld.psi, ld.nu2, ld.nu3, ld.nuinf, ld.lam2):
        arr.flags.writeable = False
    _LEVEL_CACHE.clear()
    _LEVEL_CACHE[L] = ld
    return ld


@dataclass(frozen=True)
class DimensionTable:
    """Dimensions for levels ``1..L`` at one weight (index 0 unused)."""

    k: int
    values: np.ndarray
    provenance: str = "closed-form"

    def __getitem__(self, N):
        return int(self.values[N])

    def __len__(self):
        return len(self.values) - 1


def cusp_table(L, k, workers=1):
    """Closed-form ``dim S_k(N)`` for ``N <= L``."""
    if k < 2 or k % 2:
        return DimensionTable(k, np.zeros(L + 1, dtype=np.int64))
    ld = level_data(L, workers)
    n = L + 1
    t = _twelve_dim(k, ld.psi[:n], ld.nu2[:n], ld.nu3[:n], ld.nuinf[:n])
    t[0] = 0
    if np.any(t % 12):
        raise ArithmeticError(f"dimension formula not integral at weight {k}")
    vals = t // 12
    vals.flags.writeable = False
    return DimensionTable(k, vals)


def newform_table(L, k, workers=1):
    """``dim S_k^new(N)`` for ``N <= L`` by lambda2-inversion of :func:`cusp_table`."""
    ld = level_data(L, workers)
    new = dirichlet_convolve_arrays(ld.lam2[:L + 1], cusp_table(L, k, workers).values)
    if np.any(new < 0):
        N = int(np.flatnonzero(new < 0)[0])
        raise NegativeDimensionError(f"dim S_{k}^new({N}) = {int(new[N])}")
    new.flags.writeable = False
    return DimensionTable(k, new, "convolved-new")


def _arch_conductor(k, convention):
    """Archimedean conductor of weight ``k`` as an exact fraction ``(num, den)``."""
    if convention == "quadratic":
        return 1 + k * k, 1
    if convention == "product":
        return (k + 1) * (k + 3), 4
    raise ValueError(f"unknown conductor convention {convention!r}")


def _max_level(Q, k, convention):
    num, den = _arch_conductor(k, convention)
    return (Q * den) // num


def empirical_counts(Qs, ramified_prime=None, workers=1, convention="quadratic"):
    """Counts of holomorphic newforms of level ``N`` and weight ``k`` with
    analytic conductor ``N c_inf(k) <= Q``.

    ``c_inf(k)`` is ``1 + k^2`` under the default convention. With
    ``ramified_prime = q`` only levels divisible by ``q`` are counted, which
    is ``q N (1 + k^2) <= Q`` in the definite-lattice coordinates. Returns
    exact integers aligned with ``Qs``.
    """
    Qs = [math.floor(Q) for Q in Qs]
    if any(Q < 1 for Q in Qs):
        raise ValueError("Q must be >= 1")
    q = ramified_prime or 1
    Qmax = max(Qs)
    weights = []
    k = 2
    while _max_level(Qmax, k, convention) >= q:
        weights.append(k)
        k += 2
    if not weights:
        return [0 for _ in Qs]
    Lmax = _max_level(Qmax, 2, convention)

    def per_weight(k):
        L = _max_level(Qmax, k, convention)
        new = newform_table(L, k).values.copy()
        if q > 1:
            keep = np.zeros(L + 1, dtype=bool)
            keep[q::q] = True
            new[~keep] = 0
        return np.cumsum(new)

    level_data(Lmax, workers)
    prefix = pmap(per_weight, weights, workers)
    out = []
    for Q in Qs:
        total = 0
        for k, cs in zip(weights, prefix):
            L = _max_level(Q, k, convention)
            if L >= 1:
                total += int(cs[min(L, len(cs) - 1)])
        out.append(total)
    return out


def empirical_count(Q, ramified_prime=None, workers=1, convention="quadratic"):
    return empirical_counts([Q], ramified_prime, workers, convention)[0]


@lru_cache(maxsize=4096)
def _slice_mass_int(N):
    return _local_product(N, lambda p, r: slice_mass(p, r))


def density_consistency(N, k):
    """Relative gap between ``dim S_k^new(N)`` and ``(k-1)/12 M(N)``."""
    if k < 4 or k % 2:
        raise ValueError("k must be even and >= 4")
    main = (k - 1) / 12 * _slice_mass_int(N)
    return abs(dim_newforms(N, k) - main) / max(1.0, main)


@dataclass(frozen=True)
class GrowthFit:
    exponent: float
    constant: float
    max_residual: float


def fit_growth(counts):
    """Least-squares fit ``log count = a log Q + b``; returns slope, ``e^b``, max residual."""
    pts = sorted((float(Q), float(c)) for Q, c in counts)
    if len(pts) < 5:
        raise ValueError("need at least 5 points")
    if any(c <= 0 or Q <= 0 for Q, c in pts):
        raise ValueError("counts and Q must be positive")
    x = np.log([Q for Q, _ in pts])
    y = np.log([c for _, c in pts])
    if np.ptp(x) == 0:
        raise ValueError("degenerate grid: all Q equal")
    a, b = np.polyfit(x, y, 1)
    resid = np.abs(y - (a * x + b))
    return GrowthFit(float(a), float(math.exp(b)), float(resid.max()))
