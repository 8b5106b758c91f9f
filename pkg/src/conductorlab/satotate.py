"""Unramified Plancherel densities on [-2, 2] and their Sato-Tate limit."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ._parallel import pmap
from .plancherel import finite_split_integral
from .quadrature import adaptive_quad

DEFAULT_TOL = 1e-8


def _check_x(x):
    x = np.asarray(x, dtype=np.float64)
    if np.any(np.abs(x) > 2):
        raise ValueError("x must lie in [-2, 2]")
    return x


def st_density(x):
    """Semicircle density ``(1/pi) sqrt(1 - x^2/4)``."""
    x = _check_x(x)
    out = np.sqrt(np.clip(1 - x * x / 4, 0, None)) / math.pi
    return float(out) if out.ndim == 0 else out


def serre_density(q, x):
    """Plancherel density of the unramified tempered dual of PGL(2) over a field with residue size ``q``."""
    if q < 2:
        raise ValueError("q must be >= 2")
    x = _check_x(x)
    a = (math.sqrt(q) + 1 / math.sqrt(q)) ** 2
    out = (q + 1) / math.pi * np.sqrt(np.clip(1 - x * x / 4, 0, None)) / (a - x * x)
    return float(out) if out.ndim == 0 else out


def _theta_factor_st(theta):
    # density(2 sin t) * dx/dt with the square root cancelled
    c = np.cos(theta)
    return 2 * c * c / math.pi


@dataclass(frozen=True)
class MeasureOnInterval:
    """A density on [-2, 2].

    ``theta_weight(t)`` must equal ``density(2 sin t) * 2 cos t``; supplying it
    lets quadrature run on a smooth integrand in ``t``.
    """

    label: str
    density: Callable
    theta_weight: Callable
    tolerance: float = DEFAULT_TOL
    meta: dict = field(default_factory=dict)


def semicircle(tolerance=DEFAULT_TOL):
    return MeasureOnInterval("sato-tate", st_density, _theta_factor_st, tolerance)


def plancherel_measure(q, tolerance=DEFAULT_TOL):
    if q < 2:
        raise ValueError("q must be >= 2")
    a = (math.sqrt(q) + 1 / math.sqrt(q)) ** 2

    def weight(t):
        s = np.sin(t)
        return _theta_factor_st(t) * (q + 1) / (a - 4 * s * s)

    return MeasureOnInterval(f"plancherel q={q}", lambda x: serre_density(q, x), weight,
                             tolerance, {"q": q})


def integrate(m, test):
    """``int test dm`` via ``x = 2 sin t``; absolute error within ``m.tolerance``."""
    f = lambda t: np.asarray(test(2 * np.sin(t)), dtype=np.float64) * m.theta_weight(t)
    value, _ = adaptive_quad(f, -0.5 * math.pi, 0.5 * math.pi, m.tolerance)
    return value


def monomial(m):
    if not 0 <= m <= 8:
        raise ValueError("monomial tests are limited to degree <= 8")
    fn = lambda x: np.asarray(x, dtype=np.float64) ** m
    fn.__name__ = f"x{m}"
    return fn


def tabulated(xs, ys):
    """Test function from a table, linearly interpolated on [-2, 2]."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if np.any(np.diff(xs) <= 0):
        raise ValueError("table abscissae must be increasing")
    return lambda x: np.interp(x, xs, ys)


def parse_test(name):
    """``"x2"`` -> x^2, ``"1"`` -> constant one."""
    if name in ("1", "x0"):
        return monomial(0)
    if name.startswith("x") and name[1:].isdigit():
        return monomial(int(name[1:]))
    raise ValueError(f"unknown test function {name!r}; use x0..x8")


def spherical_mass(q, tolerance=DEFAULT_TOL):
    """Total mass of the unramified Plancherel measure; 1 by normalisation."""
    return integrate(plancherel_measure(q, tolerance), monomial(0))


@dataclass(frozen=True)
class ConvergenceRow:
    q: int
    test: str
    value_q: float
    value_st: float
    error: float


@dataclass(frozen=True)
class ConvergenceTable:
    rows: list
    decay: dict

    def errors(self, test):
        return [(r.q, r.error) for r in self.rows if r.test == test]


def _decay_exponent(pairs, floor):
    # errors at the quadrature floor carry no rate information
    pts = [(q, e) for q, e in pairs if e > floor]
    if len(pts) < 2:
        return float("nan")
    x = np.log([q for q, _ in pts])
    y = np.log([e for _, e in pts])
    return float(np.polyfit(x, y, 1)[0])


def convergence_table(tests, primes, tolerance=DEFAULT_TOL, workers=1):
    """Errors ``|int f dmu_q - int f dmu_ST|`` per prime with a fitted log-log decay rate.

    ``tests`` maps names to callables (a list of names is parsed with
    :func:`parse_test`). Rows come out ordered by q, then by test order.
    """
    if isinstance(tests, (list, tuple)):
        tests = {name: parse_test(name) for name in tests}
    primes = sorted(set(int(q) for q in primes))
    if any(q < 2 for q in primes):
        raise ValueError("primes must be >= 2")
    st = semicircle(tolerance)
    ref = {name: integrate(st, fn) for name, fn in tests.items()}

    def row(q):
        mq = plancherel_measure(q, tolerance)
        return [ConvergenceRow(q, name, (v := integrate(mq, fn)), ref[name], abs(v - ref[name]))
                for name, fn in tests.items()]

    rows = [r for chunk in pmap(row, primes, workers) for r in chunk]
    decay = {name: _decay_exponent([(r.q, r.error) for r in rows if r.test == name],
                                   10 * tolerance)
             for name in tests}
    return ConvergenceTable(rows, decay)


def ramified_defect(q):
    """Mass of the ramified part of the local measure weighted by ``c^{-2}``."""
    if q < 2:
        raise ValueError("q must be >= 2")
    return finite_split_integral(q, 2.0) - 1.0
