"""Arithmetic of the rationals and of quadratic fields.

Ideals are handled through their prime factorisations only; nothing here needs
explicit generators. Supported fields are ``Q`` and ``Q(sqrt(m))`` for a
squarefree integer ``m != 0, 1``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

import numpy as np

from .primes import checked_sum, factorint, is_prime, multiplicative_table, prime_sieve


def kronecker(D, p):
    """Kronecker symbol ``(D/p)`` for a prime ``p``."""
    if p == 2:
        if D % 2 == 0:
            return 0
        return 1 if D % 8 in (1, 7) else -1
    r = pow(D % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def _is_squarefree(m):
    return all(r == 1 for _, r in factorint(abs(m)))


@dataclass(frozen=True, order=True)
class PrimeIdeal:
    """A prime ideal above the rational prime ``p``.

    ``index`` separates the two conjugate primes above a split ``p``; it is 0
    otherwise.
    """

    p: int
    f: int = 1
    index: int = 0
    e: int = field(default=1, compare=False)

    @property
    def norm(self) -> int:
        return self.p**self.f

    @property
    def key(self):
        return (self.p, self.f, self.index)

    def __str__(self):
        tag = f"{self.p}" if self.f == 1 and self.e == 1 and self.index == 0 else \
            f"{self.p}[f={self.f},e={self.e},i={self.index}]"
        return f"P({tag})"


@dataclass(frozen=True)
class IdealFactorization:
    """An integral ideal as a sorted tuple of ``(PrimeIdeal, exponent)``."""

    factors: tuple = ()

    def __post_init__(self):
        keys = [q.key for q, _ in self.factors]
        if keys != sorted(keys) or len(set(keys)) != len(keys):
            raise ValueError("factors must be sorted by (p, f) without duplicates")
        if any(r < 1 for _, r in self.factors):
            raise ValueError("exponents must be >= 1")

    @classmethod
    def from_pairs(cls, pairs):
        merged = {}
        for q, r in pairs:
            if r:
                merged[q] = merged.get(q, 0) + r
        return cls(tuple(sorted(merged.items(), key=lambda t: t[0].key)))

    @classmethod
    def of_integer(cls, n):
        """The ideal ``nZ`` of the rationals."""
        return cls(tuple((PrimeIdeal(p), r) for p, r in factorint(n)))

    @property
    def norm(self) -> int:
        out = 1
        for q, r in self.factors:
            out *= q.norm**r
        return out

    @property
    def exponents(self):
        return dict(self.factors)

    def __mul__(self, other):
        return IdealFactorization.from_pairs(list(self.factors) + list(other.factors))

    def divides(self, other) -> bool:
        big = other.exponents
        return all(big.get(q, 0) >= r for q, r in self.factors)

    def __truediv__(self, other):
        if not other.divides(self):
            raise ValueError("not a divisor")
        small = other.exponents
        return IdealFactorization.from_pairs(
            [(q, r - small.get(q, 0)) for q, r in self.factors])

    def divisors(self):
        out = [IdealFactorization()]
        for q, r in self.factors:
            out = [d * IdealFactorization(((q, j),)) if j else d
                   for d in out for j in range(r + 1)]
        return sorted(out, key=lambda a: (a.norm, a.sort_key))

    @property
    def sort_key(self):
        return tuple((q.key, r) for q, r in self.factors)

    def __str__(self):
        if not self.factors:
            return "(1)"
        return "*".join(f"{q}^{r}" if r > 1 else str(q) for q, r in self.factors)


@dataclass(frozen=True)
class NumberFieldSpec:
    """The rationals (``m=None``) or the quadratic field ``Q(sqrt(m))``."""

    m: int | None = None
    residue_at_1: float | None = None

    def __post_init__(self):
        if self.m is None:
            return
        if self.m in (0, 1) or not _is_squarefree(self.m):
            raise ValueError(f"Q(sqrt({self.m})) is not a supported quadratic field")

    @classmethod
    def rationals(cls):
        return cls(None, 1.0)

    @classmethod
    def quadratic(cls, m, residue_at_1=None):
        return cls(int(m), residue_at_1)

    @classmethod
    def parse(cls, text, residue_at_1=None):
        """Parse ``"Q"`` or ``"Q(sqrt,m)"``."""
        s = text.replace(" ", "")
        if s == "Q":
            return cls.rationals() if residue_at_1 is None else cls(None, residue_at_1)
        match = re.fullmatch(r"Q\(sqrt,(-?\d+)\)", s)
        if not match:
            raise ValueError(f"unsupported field specification {text!r}; use 'Q' or 'Q(sqrt,m)'")
        return cls.quadratic(int(match.group(1)), residue_at_1)

    @property
    def degree(self) -> int:
        return 1 if self.m is None else 2

    @property
    def signature(self):
        if self.m is None:
            return (1, 0)
        return (2, 0) if self.m > 0 else (0, 1)

    @property
    def discriminant(self) -> int:
        if self.m is None:
            return 1
        return self.m if self.m % 4 == 1 else 4 * self.m

    def __str__(self):
        return "Q" if self.m is None else f"Q(sqrt,{self.m})"

    def split_prime(self, p):
        return split_prime(self, p)


def split_prime(field, p):
    """Prime ideals above the rational prime ``p`` with their (f, e)."""
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if field.m is None:
        return [PrimeIdeal(p, 1, 0, 1)]
    chi = kronecker(field.discriminant, p)
    if chi == 1:
        return [PrimeIdeal(p, 1, 0, 1), PrimeIdeal(p, 1, 1, 1)]
    if chi == -1:
        return [PrimeIdeal(p, 2, 0, 1)]
    return [PrimeIdeal(p, 1, 0, 2)]


def prime_ideals_up_to(field, X) -> Iterator[PrimeIdeal]:
    """Prime ideals of norm ``<= X`` ordered by (norm, p, f, index)."""
    X = math.floor(X)
    if X < 2:
        return iter(())
    out = []
    for p in prime_sieve(X):
        for q in split_prime(field, int(p)):
            if q.norm <= X:
                out.append(q)
    out.sort(key=lambda q: (q.norm, q.p, q.f, q.index))
    return iter(out)


def local_zeta_factor(q, s):
    """``(1 - Nq^{-s})^{-1}``; ``q`` may be a PrimeIdeal or a norm."""
    if s <= 0:
        raise ValueError("s must be positive")
    norm = q.norm if isinstance(q, PrimeIdeal) else q
    return 1.0 / (1.0 - norm ** (-s))


def iter_ideals(field, X):
    """All nonzero integral ideals of norm ``<= X``, depth-first over sorted primes.

    Yields IdealFactorization objects; the order is deterministic but not by
    norm. Intended for norms up to ~1e5.
    """
    primes = list(prime_ideals_up_to(field, X))
    X = math.floor(X)
    if X < 1:
        return

    def rec(start, norm, factors):
        yield IdealFactorization(tuple(sorted(factors, key=lambda t: t[0].key)))
        for i in range(start, len(primes)):
            q = primes[i]
            nq = norm * q.norm
            if nq > X:
                break
            r = 1
            while nq <= X:
                yield from rec(i + 1, nq, factors + [(q, r)])
                nq *= q.norm
                r += 1

    yield from rec(0, 1, [])


def norm_pushforward_rule(field, f):
    """Local rule of ``g(n) = sum_{Na = n} f(a)`` at rational prime powers.

    ``f`` is a callable ``(norm, r) -> int``. ``g`` is multiplicative on the
    integers because ideal norms factor over rational primes.
    """
    def rule(p, k):
        fp = lambda q, r: 1 if r == 0 else f(q, r)
        if field.m is None:
            return fp(p, k)
        chi = kronecker(field.discriminant, p)
        if chi == 1:
            return sum(fp(p, i) * fp(p, k - i) for i in range(k + 1))
        if chi == -1:
            return fp(p * p, k // 2) if k % 2 == 0 else 0
        return fp(p, k)
    return rule


def ideal_norm_counts(field, X, workers=1):
    """``a[n]`` = number of ideals of norm ``n`` for ``n <= X``."""
    rule = norm_pushforward_rule(field, lambda q, r: 1)
    return multiplicative_table(math.floor(X), rule, workers)


def ideal_count(field, X, workers=1) -> int:
    """Number of nonzero integral ideals of norm ``<= X``."""
    if X < 1:
        return 0
    return checked_sum(ideal_norm_counts(field, X, workers)[1:])


@dataclass(frozen=True)
class ResidueEstimate:
    value: float
    half_width: float
    X: float


def estimate_residue(field, X, points=64, workers=1):
    """Least-squares slope of the ideal-counting function on ``[X/8, X]``.

    Returns a ResidueEstimate whose ``half_width`` is the largest fit residual
    divided by the grid span, i.e. the slope change that residual could cause.
    """
    counts = np.cumsum(ideal_norm_counts(field, X, workers))
    if counts[-1] < 100:
        raise ValueError("insufficient data: fewer than 100 ideals below X")
    ts = np.unique(np.floor(np.geomspace(X / 8, X, points)).astype(np.int64))
    ys = counts[ts].astype(np.float64)
    slope, icept = np.polyfit(ts.astype(np.float64), ys, 1)
    resid = ys - (slope * ts + icept)
    half = float(np.abs(resid).max()) / float(ts[-1] - ts[0])
    return ResidueEstimate(float(slope), half, float(X))
