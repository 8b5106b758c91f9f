"""Local and global analytic conductors, oldform multiplicities, and the
spectral lattice of a totally definite quaternion algebra over Q.

Two archimedean conventions are supported:

``quadratic`` (default)
    principal series of parameter ``ir`` has conductor ``1 + r^2``; the
    discrete series of weight ``k`` has ``1 + k^2``.
``product``
    ``prod_j (1 + |mu_j|)`` from the Gamma-factor shifts of the L-factor.
    Even principal series: ``mu = +-ir`` giving ``(1 + r)^2``. Odd principal
    series: ``mu = -1 +- ir`` giving ``(1 + sqrt(1 + r^2))^2``. Weight ``k``
    discrete series: ``mu = -(k-1)/2, -(k+1)/2`` giving ``(k+1)(k+3)/4``.

A compact representation of dimension ``2n+1`` at a ramified real place takes
the conductor of its Jacquet-Langlands transfer, the discrete series of
weight ``2n+2``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .arith import eval_mult, tau2
from .primes import is_prime

CONVENTIONS = ("quadratic", "product")


@dataclass(frozen=True)
class FiniteSplit:
    q: int
    f: int = 0

    def __post_init__(self):
        if self.q < 2 or self.f < 0:
            raise ValueError("FiniteSplit needs q >= 2 and f >= 0")


@dataclass(frozen=True)
class RamifiedCharacter:
    q: int
    c: int = 0

    def __post_init__(self):
        if self.q < 2 or self.c < 0:
            raise ValueError("RamifiedCharacter needs q >= 2 and c >= 0")


@dataclass(frozen=True)
class PrincipalSeries:
    r: float
    parity: str = "even"

    def __post_init__(self):
        if not self.r >= 0 or self.parity not in ("even", "odd"):
            raise ValueError("PrincipalSeries needs r >= 0 and parity even|odd")


@dataclass(frozen=True)
class DiscreteSeries:
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("DiscreteSeries needs weight k >= 2")


@dataclass(frozen=True)
class CompactRep:
    dim: int

    def __post_init__(self):
        if self.dim < 1 or self.dim % 2 == 0:
            raise ValueError("CompactRep dimension must be odd and positive")

    @property
    def n(self):
        return (self.dim - 1) // 2


FINITE_TYPES = (FiniteSplit, RamifiedCharacter)


def _check_convention(convention):
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown conductor convention {convention!r}")


def local_conductor(d, convention="quadratic"):
    """Conductor of one local component; an ``int`` whenever it is integral."""
    _check_convention(convention)
    if isinstance(d, FiniteSplit):
        return d.q**d.f
    if isinstance(d, RamifiedCharacter):
        return d.q if d.c == 0 else d.q**(2 * d.c)
    if isinstance(d, CompactRep):
        return local_conductor(DiscreteSeries(2 * d.n + 2), convention)
    if isinstance(d, DiscreteSeries):
        if convention == "quadratic":
            return 1 + d.k**2
        return (d.k + 1) * (d.k + 3) // 4 if (d.k + 1) * (d.k + 3) % 4 == 0 \
            else (d.k + 1) * (d.k + 3) / 4
    if isinstance(d, PrincipalSeries):
        if convention == "quadratic":
            return 1.0 + d.r * d.r
        if d.parity == "even":
            return (1.0 + d.r) ** 2
        return (1.0 + math.sqrt(1.0 + d.r * d.r)) ** 2
    raise TypeError(f"not a local representation: {d!r}")


@dataclass(frozen=True)
class GlobalRepShape:
    """Local data at finitely many labelled places; unramified elsewhere."""

    places: tuple = ()

    def __post_init__(self):
        labels = [label for label, _ in self.places]
        if len(set(labels)) != len(labels):
            raise ValueError("place labels must be distinct")

    def __add__(self, other):
        return GlobalRepShape(tuple(self.places) + tuple(other.places))

    @classmethod
    def parse(cls, text):
        """Parse a shape literal such as ``"p:11^1,ds:12"``.

        Tokens: ``p:q^f`` finite split, ``ram:q^c`` ramified character,
        ``ps:r[:odd]`` principal series, ``ds:k`` discrete series,
        ``cpt:dim`` compact representation. Finite places are labelled by
        their prime, archimedean ones ``inf0, inf1, ...`` in order.
        """
        places = []
        arch = 0
        for tok in filter(None, (t.strip() for t in text.split(","))):
            kind, _, body = tok.partition(":")
            try:
                if kind in ("p", "ram"):
                    m = re.fullmatch(r"(\d+)(?:\^(\d+))?", body)
                    if not m:
                        raise ValueError
                    q, e = int(m.group(1)), int(m.group(2) or 1)
                    if not is_prime(q):
                        raise ValueError
                    data = FiniteSplit(q, e) if kind == "p" else RamifiedCharacter(q, e)
                    places.append((f"p{q}", data))
                    continue
                if kind == "ps":
                    r, _, parity = body.partition(":")
                    data = PrincipalSeries(float(r), parity or "even")
                elif kind == "ds":
                    data = DiscreteSeries(int(body))
                elif kind == "cpt":
                    data = CompactRep(int(body))
                else:
                    raise ValueError
            except ValueError:
                raise ValueError(f"bad shape token {tok!r}") from None
            places.append((f"inf{arch}", data))
            arch += 1
        return cls(tuple(places))


def global_conductor(shape, convention="quadratic"):
    """Product of the local conductors; exact integer when every factor is."""
    finite = 1
    arch = Fraction(1)
    exact = True
    for _, d in shape.places:
        c = local_conductor(d, convention)
        if isinstance(d, FINITE_TYPES):
            finite *= c
        elif isinstance(c, int):
            arch *= c
        else:
            exact = False
            arch *= Fraction(c)
    if exact:
        return finite * int(arch)
    return finite * float(arch)


def oldform_multiplicity(conductor, level):
    """Dimension of fixed vectors of level ``level`` in a rep of conductor ``conductor``.

    Both arguments are IdealFactorizations; the answer is ``tau2(level/conductor)``
    or 0 when the conductor does not divide the level.
    """
    if not conductor.divides(level):
        return 0
    return eval_mult(tau2, level / conductor)


def enumerate_definite_lattice(Q, q):
    """Pairs ``(N, k)``, ``k`` even ``>= 2``, with ``q N (1 + k^2) <= Q``.

    Ordered by ``k`` then ``N``. The factor ``q`` is the Steinberg-type
    conductor at the finite ramified prime.
    """
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    Q = math.floor(Q)
    k = 2
    while q * (1 + k * k) <= Q:
        for N in range(1, Q // (q * (1 + k * k)) + 1):
            yield (N, k)
        k += 2


def definite_lattice_size(Q, q):
    """``sum_k floor(Q / (q (1 + k^2)))`` over even ``k >= 2``."""
    Q = math.floor(Q)
    total, k = 0, 2
    while q * (1 + k * k) <= Q:
        total += Q // (q * (1 + k * k))
        k += 2
    return total
