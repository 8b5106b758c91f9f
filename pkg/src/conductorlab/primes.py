"""Prime sieves and vectorised multiplicative-function tables over the integers."""

import math

import numpy as np

from ._parallel import pmap

# int64 headroom kept for one extra addition
INT_LIMIT = 2**62


def prime_sieve(n):
    """Return the primes ``<= n`` as an int64 array."""
    n = int(n)
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for i in range(3, math.isqrt(n) + 1, 2):
        if flags[i]:
            flags[i * i::2 * i] = False
    return np.flatnonzero(flags).astype(np.int64)


def is_prime(n):
    n = int(n)
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def factorint(n):
    """Trial-division factorisation as a sorted list of ``(p, r)``."""
    n = int(n)
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            r = 0
            while n % p == 0:
                n //= p
                r += 1
            out.append((p, r))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def divisors(n):
    divs = [1]
    for p, r in factorint(n):
        divs = [d * p**j for d in divs for j in range(r + 1)]
    return sorted(divs)


def _apply_primes(n, primes, rule):
    """Product over ``primes`` of the local factors, as a length ``n+1`` array."""
    vals = np.ones(n + 1, dtype=np.int64)
    vals[0] = 0
    for p in primes:
        p = int(p)
        pk, r = p, 1
        while pk <= n:
            c = int(rule(p, r))
            # indices divisible by exactly p^r
            idx = np.arange(pk, n + 1, pk)
            if pk * p <= n:
                idx = idx[(idx // pk) % p != 0]
            if c == 0:
                vals[idx] = 0
            elif c != 1:
                if abs(c) > INT_LIMIT or np.any(np.abs(vals[idx]) > INT_LIMIT // abs(c)):
                    raise OverflowError(f"multiplicative value overflow at p={p}, r={r}")
                vals[idx] *= c
            pk *= p
            r += 1
    return vals


def multiplicative_table(n, rule, workers=1):
    """Values ``f(0..n)`` of the multiplicative function with ``f(p^r) = rule(p, r)``.

    ``f(0)`` is set to 0. With several workers the primes are dealt out
    round-robin, each worker builds a partial table, and the partial tables
    are multiplied together; integer products make the result independent of
    the worker count.
    """
    n = int(n)
    if n < 1:
        return np.zeros(max(n + 1, 1), dtype=np.int64)
    primes = prime_sieve(n)
    workers = max(1, int(workers or 1))
    if workers == 1:
        return _apply_primes(n, primes, rule)
    parts = pmap(lambda i: _apply_primes(n, primes[i::workers], rule), range(workers), workers)
    vals = parts[0]
    for part in parts[1:]:
        mag = np.abs(part)
        bad = (mag > 1) & (np.abs(vals) > INT_LIMIT // np.maximum(mag, 1))
        if np.any(bad):
            raise OverflowError("multiplicative value overflow in reduction")
        vals *= part
    return vals


def dirichlet_convolve_arrays(a, b):
    """Dirichlet convolution of two integer arrays indexed ``0..n`` (index 0 ignored)."""
    n = len(a) - 1
    if len(b) != n + 1:
        raise ValueError("arrays must have equal length")
    out = np.zeros(n + 1, dtype=np.int64)
    bmax = int(np.abs(b[1:]).max()) if n else 0
    for d in np.flatnonzero(a[1:]) + 1:
        d = int(d)
        ad = int(a[d])
        m = n // d
        if abs(ad) * bmax > INT_LIMIT // max(m, 1):
            raise OverflowError("convolution overflow")
        out[d::d][:m] += ad * b[1:m + 1]
    return out


def checked_sum(arr):
    """Exact sum of an int64 array; raises instead of wrapping."""
    if float(np.abs(arr).astype(np.float64).sum()) > INT_LIMIT:
        raise OverflowError("partial sum exceeds 64-bit range")
    return int(arr.sum())
