"""Flat ``key=value`` run configuration.

One pair per line, ``#`` starts a comment. Unknown keys and invalid values are
rejected with the offending line number.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path

from .conductors import CONVENTIONS
from .fields import NumberFieldSpec
from .plancherel import DEFAULT_SCALE
from .primes import is_prime


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    field: str = "Q"
    ramified: int | None = None
    convention: str = "quadratic"
    c_even: float = DEFAULT_SCALE
    c_odd: float = DEFAULT_SCALE
    c_ds: float = DEFAULT_SCALE
    pmax: int = 100_000
    rmax: int = 60
    nmax: int = 10_000
    qtol: float = 1e-8
    format: str = "csv"
    out: str | None = None
    threads: int = 1


def _positive_int(text):
    v = int(float(text))
    if v != float(text) or v <= 0:
        raise ValueError("must be a positive integer")
    return v


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise ValueError("must be positive")
    return v


def _nonnegative_float(text):
    v = float(text)
    if not v >= 0:
        raise ValueError("must be nonnegative")
    return v


def _field(text):
    NumberFieldSpec.parse(text)
    return text.replace(" ", "")


def _prime(text):
    if text in ("", "none"):
        return None
    v = int(text)
    if not is_prime(v):
        raise ValueError("must be a prime")
    return v


def _choice(options):
    def parse(text):
        if text not in options:
            raise ValueError(f"must be one of {', '.join(options)}")
        return text
    return parse


PARSERS = {
    "field": _field,
    "ramified": _prime,
    "convention": _choice(CONVENTIONS),
    "c_even": _nonnegative_float,
    "c_odd": _nonnegative_float,
    "c_ds": _nonnegative_float,
    "pmax": _positive_int,
    "rmax": _positive_int,
    "nmax": _positive_int,
    "qtol": _positive_float,
    "format": _choice(("csv", "json")),
    "out": lambda text: text or None,
    "threads": _positive_int,
}

assert set(PARSERS) == {f.name for f in fields(RunConfig)}


def parse_value(key, text, where=""):
    if key not in PARSERS:
        raise ConfigError(f"{where}unknown key {key!r}")
    try:
        return PARSERS[key](text.strip())
    except ValueError as exc:
        raise ConfigError(f"{where}invalid value for {key}: {text.strip()!r} ({exc})") from None


def parse_config(text, source="<config>"):
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}: "
        if "=" not in line:
            raise ConfigError(f"{where}expected key=value, got {line!r}")
        key, _, val = line.partition("=")
        values[key.strip()] = parse_value(key.strip(), val, where)
    return replace(RunConfig(), **values)


def load_config(path):
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {path}")
    return parse_config(p.read_text(), str(p))
