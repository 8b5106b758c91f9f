"""Local integrals of ``c(pi)^{-s}`` against Plancherel measures, the
regularised global mass, and the leading constant of the counting law.

Archimedean Plancherel densities are only known up to a constant; the scales
live in :class:`ArchNormalization` and default to ``1/(4 pi)`` each.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from ._parallel import fixed_chunks, pmap
from .fields import PrimeIdeal, local_zeta_factor, prime_ideals_up_to
from .quadrature import adaptive_quad

DEFAULT_SCALE = 1.0 / (4.0 * math.pi)
QUAD_TOL = 1e-10

# prime ideals per Euler-product chunk; fixed so products never depend on workers
_EULER_CHUNK = 2048


@dataclass(frozen=True)
class ArchNormalization:
    c_even: float = DEFAULT_SCALE
    c_odd: float = DEFAULT_SCALE
    c_ds: float = DEFAULT_SCALE

    def __post_init__(self):
        if min(self.c_even, self.c_odd, self.c_ds) < 0:
            raise ValueError("archimedean scales must be nonnegative")


@dataclass(frozen=True)
class MassReport:
    value: float
    truncation_error: float
    params: dict = field(default_factory=dict)

    def as_dict(self):
        return asdict(self)


def finite_split_integral(q, s=2.0):
    """``zeta_q(s-1) / (zeta_q(s) zeta_q(2s))`` for a prime of norm ``q``."""
    if s <= 1:
        raise ValueError("the local integral diverges for s <= 1")
    q = float(q)
    return (1.0 - q**-s) * (1.0 - q**(-2 * s)) / (1.0 - q**(1 - s))


def _r_coth(r):
    # r coth(pi r / 2); the series 2/pi (1 + x^2/3 - x^4/45) covers x = pi r/2 near 0
    x = 0.5 * math.pi * np.asarray(r, dtype=np.float64)
    small = np.abs(x) < 1e-3
    xs = np.where(small, 1.0, x)
    big = xs / np.tanh(xs)
    ser = 1.0 + x * x / 3.0 - x**4 / 45.0
    return (2.0 / math.pi) * np.where(small, ser, big)


def _ds_sum(s, kmax):
    terms = [(k - 1) / (1.0 + k * k) ** s for k in range(2, kmax + 1, 2)]
    return math.fsum(terms)


def real_split_integral(s=2.0, norm=None, cutoff=1e4, tol=QUAD_TOL):
    """Integral of ``c^{-s}`` over the tempered dual of PGL(2, R).

    Sum of the even and odd principal-series integrals and the discrete-series
    sum, each weighted by its normalisation constant. The integrals run over
    ``r <= cutoff`` and the discrete series over ``k <= cutoff``; the analytic
    tails beyond the cutoff are reported as truncation error together with the
    quadrature error estimates.
    """
    if s <= 1:
        raise ValueError("the archimedean integral diverges for s <= 1")
    if cutoff <= 0:
        raise ValueError("cutoff must be positive")
    norm = norm or ArchNormalization()
    umax = math.atan(cutoff)

    # r = tan u maps [0, cutoff] onto a short interval and flattens the decay
    def even(u):
        r = np.tan(u)
        return r * np.tanh(0.5 * math.pi * r) * np.cos(u) ** (2 * s - 2)

    def odd(u):
        r = np.tan(u)
        return _r_coth(r) * np.cos(u) ** (2 * s - 2)

    v_even, e_even = adaptive_quad(even, 0.0, umax, tol) if norm.c_even else (0.0, 0.0)
    v_odd, e_odd = adaptive_quad(odd, 0.0, umax, tol) if norm.c_odd else (0.0, 0.0)
    kmax = int(cutoff)
    kmax -= kmax % 2
    v_ds = _ds_sum(s, kmax) if kmax >= 2 else 0.0

    tail_r = cutoff ** (2 - 2 * s) / (2 * s - 2)
    tail_odd = tail_r / math.tanh(0.5 * math.pi * cutoff)
    tail_k = max(kmax, 1) ** (2 - 2 * s) / (4 * (s - 1))
    value = math.fsum([norm.c_even * v_even, norm.c_odd * v_odd, norm.c_ds * v_ds])
    err = (norm.c_even * (e_even + tail_r) + norm.c_odd * (e_odd + tail_odd)
           + norm.c_ds * tail_k)
    return MassReport(value, err, {"s": s, "cutoff": cutoff, "quad_tol": tol, **asdict(norm)})


def compact_place_sum(s=2.0, n_max=10_000):
    """``sum_{n <= n_max} (2n+1)^2 / (1 + (2n+2)^2)^s`` with an integral tail bound."""
    if s <= 1.5:
        raise ValueError("the compact-place sum diverges for s <= 3/2")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    n = np.arange(n_max + 1, dtype=np.float64)
    terms = (2 * n + 1) ** 2 / (1 + (2 * n + 2) ** 2) ** s
    value = math.fsum(terms.tolist())
    # each omitted term is <= (2n+2)^{2-2s}, decreasing in n
    tail = (2 * n_max + 2) ** (3 - 2 * s) / (2 * (2 * s - 3))
    return MassReport(value, tail, {"s": s, "n_max": n_max})


def ramified_local_factor(q, s=2.0, weight=1.0):
    """Default ramified stratum: one Steinberg-type character of conductor ``q``."""
    norm = q.norm if isinstance(q, PrimeIdeal) else q
    return 1.0 + weight * norm ** (-s)


def _euler_chunk(primes, s):
    out = 1.0
    for q in primes:
        out /= local_zeta_factor(q, s) * local_zeta_factor(q, 2 * s)
    return out


def euler_tail_bound(degree, P, s):
    """Relative error bound for omitting prime ideals of norm ``> P``."""
    # at most `degree` prime ideals per norm >= p; -log(1-x) <= x/(1-x)
    x = P ** (1 - s) / (s - 1)
    b = degree * 2.0 * x / (1 - P ** (-s))
    return math.expm1(b)


def regularized_global_mass(field, ramified=(), arch=(), s=2.0, P_max=100_000,
                            norm=None, cutoff=1e4, n_max=10_000, residue=None,
                            ramified_weight=1.0, workers=1):
    """Regularised total mass of the equidistribution measure.

    ``arch`` lists one entry per archimedean place: ``"split"`` uses
    :func:`real_split_integral` with ``norm``, ``"compact"`` uses
    :func:`compact_place_sum`. An empty ``arch`` gives the finite part only.
    ``ramified`` is a collection of PrimeIdeals excluded from the Euler
    product and given :func:`ramified_local_factor` instead.
    """
    if s <= 1:
        raise ValueError("s must exceed 1")
    if P_max < 100:
        raise ValueError("P_max must be >= 100")
    if residue is None:
        residue = field.residue_at_1 if field.residue_at_1 is not None else (
            1.0 if field.m is None else None)
    if residue is None:
        raise ValueError(f"no residue known for {field}; pass residue= or estimate it")
    r1, r2 = field.signature
    if len(arch) and (r2 or len(arch) != r1):
        raise ValueError(f"{field} needs exactly {r1} real-place entries and no complex places")
    ram = {q.key: q for q in ramified}
    primes = [q for q in prime_ideals_up_to(field, P_max) if q.key not in ram]
    chunks = fixed_chunks(primes, _EULER_CHUNK)
    parts = pmap(lambda ch: _euler_chunk(ch, s), chunks, workers)
    euler = 1.0
    for part in parts:
        euler *= part
    rel = euler_tail_bound(field.degree, P_max, s)

    value = residue * euler
    err = value * rel
    for q in sorted(ram.values()):
        fac = ramified_local_factor(q, s, ramified_weight)
        value *= fac
        err *= fac
    arch_params = []
    for kind in arch:
        if kind == "split":
            rep = real_split_integral(s, norm, cutoff)
        elif kind == "compact":
            rep = compact_place_sum(s, n_max)
        else:
            raise ValueError(f"unknown archimedean place type {kind!r}")
        # (v + dv)(a + da) - v a <= |v| da + |a| dv + dv da
        err = abs(value) * rep.truncation_error + abs(rep.value) * err + err * rep.truncation_error
        value *= rep.value
        arch_params.append(kind)
    params = {
        "field": str(field), "s": s, "P_max": P_max, "residue": residue,
        "ramified": [str(q) for q in sorted(ram.values())], "arch": arch_params,
        "ramified_weight": ramified_weight,
    }
    if "split" in arch_params:
        params.update(asdict(norm or ArchNormalization()), cutoff=cutoff)
    if "compact" in arch_params:
        params["n_max"] = n_max
    return MassReport(value, err, params)


def leading_constant(volume, mass):
    """``C = vol / 2 * ||mu||``; returns ``(C, error)``."""
    if volume <= 0:
        raise ValueError("volume must be positive")
    return 0.5 * volume * mass.value, 0.5 * volume * mass.truncation_error
