"""Multiplicative functions on ideals.

A multiplicative function is stored through its local rule ``(q, r) -> int``
on prime powers, where ``q`` is the norm of the prime ideal. Everything is
exact integer arithmetic; Python integers do not wrap, and the numpy paths
check their 64-bit range explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from ._parallel import fixed_chunks, pmap
from .fields import iter_ideals, norm_pushforward_rule
from .primes import INT_LIMIT, checked_sum, multiplicative_table


@dataclass(frozen=True, eq=False)
class MultiplicativeFunction:
    name: str
    local_rule: Callable[[int, int], int]

    def __call__(self, q, r):
        """Value at a prime power of norm ``q`` and exponent ``r``."""
        if r == 0:
            return 1
        return int(self.local_rule(q, r))

    def __repr__(self):
        return f"MultiplicativeFunction({self.name!r})"

    @classmethod
    def from_table(cls, name, values):
        """Function with ``f(q, r) = values[r - 1]`` (0 past the table).

        ``values`` may instead be a dict keyed by ``(q, r)``; missing keys are 0.
        """
        if isinstance(values, dict):
            table = {(int(q), int(r)): int(v) for (q, r), v in values.items()}
            return cls(name, lambda q, r: table.get((q, r), 0))
        seq = tuple(int(v) for v in values)
        return cls(name, lambda q, r: seq[r - 1] if r <= len(seq) else 0)


def _cached(name, rule):
    return MultiplicativeFunction(name, lru_cache(maxsize=None)(rule))


one = MultiplicativeFunction("1", lambda q, r: 1)
delta = MultiplicativeFunction("delta", lambda q, r: 0)
mobius = MultiplicativeFunction("mu", lambda q, r: -1 if r == 1 else 0)
mobius_sq = MultiplicativeFunction("mu2", lambda q, r: 1 if r == 1 else 0)
tau2 = MultiplicativeFunction("tau2", lambda q, r: r + 1)
lambda2 = MultiplicativeFunction("lambda2", lambda q, r: (-2, 1)[r - 1] if r <= 2 else 0)
phi2 = MultiplicativeFunction("phi2", lambda q, r: q**r + q**(r - 1))
identity = MultiplicativeFunction("id", lambda q, r: q**r)


def dirichlet_convolve(f, g, name=None):
    """Local convolution ``(f*g)(q, r) = sum_j f(q, j) g(q, r - j)``."""
    return _cached(name or f"({f.name}*{g.name})",
                   lambda q, r: sum(f(q, j) * g(q, r - j) for j in range(r + 1)))


def dirichlet_inverse(f, name=None):
    """Dirichlet inverse through the triangular recurrence on prime powers."""
    @lru_cache(maxsize=None)
    def rule(q, r):
        if r == 0:
            return 1
        return -sum(f(q, j) * rule(q, r - j) for j in range(1, r + 1))
    return MultiplicativeFunction(name or f"inv({f.name})", rule)


# conductor-slice mass of the local Plancherel measure
slice_mass = dirichlet_convolve(dirichlet_convolve(identity, mobius_sq), lambda2, name="M")

BUILTINS = {
    "1": one,
    "one": one,
    "delta": delta,
    "mu": mobius,
    "mu2": mobius_sq,
    "tau2": tau2,
    "lambda2": lambda2,
    "phi2": phi2,
    "id": identity,
    "M": slice_mass,
}


def get_function(name):
    try:
        return BUILTINS[name]
    except KeyError:
        raise ValueError(f"unknown function {name!r}; known: {sorted(BUILTINS)}") from None


def eval_mult(f, a):
    """Evaluate ``f`` on an IdealFactorization."""
    out = 1
    for q, r in a.factors:
        out *= f(q.norm, r)
    return out


def norm_sums(f, field, X, workers=1):
    """Array ``g[n] = sum_{Na = n} f(a)`` for ``n <= X``."""
    return multiplicative_table(math.floor(X), norm_pushforward_rule(field, f), workers)


def partial_sum(f, field, X, workers=1) -> int:
    """``sum_{Na <= X} f(a)``, exact."""
    if X < 1:
        return 0
    return checked_sum(norm_sums(f, field, X, workers)[1:])


@dataclass(frozen=True)
class SeriesValue:
    value: float
    tail_bound: float
    converged: bool


def local_dirichlet_series(f, q, s, r_max):
    """Truncated local series ``sum_{r <= r_max} f(q, r) q^{-rs}``.

    The tail is bounded geometrically from the ratio of the last two
    terms. When that ratio is ``>= 1`` the bound is infinite and
    ``converged`` is False.
    """
    if r_max < 1:
        raise ValueError("r_max must be >= 1")
    terms = [f(q, r) * float(q) ** (-r * s) for r in range(r_max + 1)]
    value = math.fsum(terms)
    a, b = abs(terms[-2]), abs(terms[-1])
    if b == 0:
        return SeriesValue(value, 0.0, True)
    if a == 0 or b >= a:
        return SeriesValue(value, math.inf, False)
    ratio = b / a
    return SeriesValue(value, b * ratio / (1 - ratio), True)


class IdealLattice:
    """Ideals of norm ``<= X`` with a precomputed multiplication table.

    ``pairs`` holds index triples ``(i, j, k)`` with ``ideal_i * ideal_j = ideal_k``
    and ``N(ideal_k) <= X``; lattice convolutions reduce to scatter-adds.
    """

    def __init__(self, field, X):
        self.field = field
        self.X = math.floor(X)
        ideals = sorted(iter_ideals(field, X), key=lambda a: (a.norm, a.sort_key))
        self.ideals = ideals
        self.index = {a.sort_key: i for i, a in enumerate(ideals)}
        self.norms = np.array([a.norm for a in ideals], dtype=np.int64)
        ii, jj, kk = [], [], []
        exps = [a.exponents for a in ideals]
        for i, a in enumerate(ideals):
            na = a.norm
            ea = exps[i]
            for j, b in enumerate(ideals):
                if na * b.norm > self.X:
                    break
                prod = dict(ea)
                for q, r in b.factors:
                    prod[q] = prod.get(q, 0) + r
                key = tuple((q.key, r) for q, r in sorted(prod.items(), key=lambda t: t[0].key))
                ii.append(i)
                jj.append(j)
                kk.append(self.index[key])
        self.pairs = (np.array(ii, dtype=np.int64), np.array(jj, dtype=np.int64),
                      np.array(kk, dtype=np.int64))

    def __len__(self):
        return len(self.ideals)

    def values(self, f):
        return np.array([eval_mult(f, a) for a in self.ideals], dtype=np.int64)

    def convolve(self, f, A, workers=1):
        """``(f * A)(a) = sum_{b | a} f(b) A(a/b)`` for an array ``A`` on the lattice."""
        A = np.asarray(A, dtype=np.int64)
        if A.shape != (len(self),):
            raise ValueError("array does not match the lattice")
        fv = self.values(f) if isinstance(f, MultiplicativeFunction) else np.asarray(f, np.int64)
        bound = float(np.abs(fv).max(initial=0)) * float(np.abs(A).max(initial=0)) * len(self.pairs[0])
        if bound > INT_LIMIT:
            raise OverflowError("lattice convolution may exceed 64-bit range")
        ii, jj, kk = self.pairs
        chunks = fixed_chunks(np.arange(len(ii)), 1 << 16)

        def run(sl):
            part = np.zeros(len(self), dtype=np.int64)
            np.add.at(part, kk[sl], fv[ii[sl]] * A[jj[sl]])
            return part

        out = np.zeros(len(self), dtype=np.int64)
        for part in pmap(run, chunks, workers):
            out += part
        return out
