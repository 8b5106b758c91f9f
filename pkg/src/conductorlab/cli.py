"""Command-line front end.

Every subcommand writes a self-describing table: CSV with ``# key=value``
parameter lines ahead of the header, or JSON with a ``params`` object.
Exit status is 0 on success, 2 on usage errors and 3 when a numerical
contract fails (tolerance not met, nonconvergent series, negative newform
dimension, integer overflow).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, replace

from . import arith, conductors, modforms, plancherel, satotate
from .config import ConfigError, RunConfig, load_config, parse_value
from .fields import NumberFieldSpec, split_prime
from .primes import is_prime
from .quadrature import QuadratureError

EXIT_USAGE = 2
EXIT_CONTRACT = 3


class ContractError(ArithmeticError):
    pass


CONTRACT_ERRORS = (ContractError, QuadratureError, modforms.NegativeDimensionError, OverflowError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _num_list(text):
    """``"10"``, ``"1e3,1e4"`` or ``"2..100"`` (integers in range)."""
    out = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(float(lo)), int(float(hi)) + 1))
        else:
            out.append(float(part))
    return out


def _int_or_float(x):
    return int(x) if float(x).is_integer() else float(x)


def _config_args(p):
    g = p.add_argument_group("run configuration (overrides --config)")
    g.add_argument("--config", metavar="PATH")
    g.add_argument("--field", help="'Q' or 'Q(sqrt,m)' (default Q)")
    g.add_argument("--ramified", help="ramified prime q (default none)")
    g.add_argument("--convention", help="conductor convention: quadratic | product")
    g.add_argument("--c-even", dest="c_even")
    g.add_argument("--c-odd", dest="c_odd")
    g.add_argument("--c-ds", dest="c_ds")
    g.add_argument("--pmax", help="Euler product truncation (default 100000)")
    g.add_argument("--rmax", help="local series depth (default 60)")
    g.add_argument("--nmax", help="compact-place series depth (default 10000)")
    g.add_argument("--qtol", help="quadrature tolerance (default 1e-8)")
    g.add_argument("--threads", help="worker threads; never changes results (default 1)")
    g.add_argument("--out", help="output path (default stdout)")
    fmt = g.add_mutually_exclusive_group()
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
    fmt.add_argument("--json", dest="format", action="store_const", const="json")


def build_parser():
    p = _Parser(prog="conductorlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sum", help="partial sums of a multiplicative function over ideals")
    s.add_argument("--fn", required=True, help="mu, mu2, tau2, lambda2, phi2, id, M, delta")
    s.add_argument("--X", required=True, type=_num_list, help="bound(s), e.g. 10 or 1e3,1e4")
    _config_args(s)

    s = sub.add_parser("dims", help="cusp-form and newform dimensions for Gamma_0(N)")
    s.add_argument("--N", required=True, type=_num_list)
    s.add_argument("--k", required=True, type=_num_list)
    s.add_argument("--new", action="store_true", help="newform dimensions")
    _config_args(s)

    s = sub.add_parser("count", help="empirical count of newforms with conductor <= Q")
    s.add_argument("--Q", required=True, type=_num_list)
    s.add_argument("--q", type=int, help="restrict to levels divisible by this prime")
    _config_args(s)

    s = sub.add_parser("measure", help="local and global measure integrals")
    s.add_argument("kind", choices=["local", "arch", "compact", "global"])
    s.add_argument("--q", type=int, help="prime norm (local)")
    s.add_argument("--s", type=float, default=2.0)
    s.add_argument("--arch", default="", help="comma list of split|compact per real place (global)")
    s.add_argument("--residue", type=float, help="residue of the Dedekind zeta function at 1")
    s.add_argument("--cutoff", type=float, default=1e4, help="archimedean truncation")
    _config_args(s)

    s = sub.add_parser("constant", help="leading constant C = vol/2 * mass")
    s.add_argument("--volume", type=float, required=True)
    s.add_argument("--s", type=float, default=2.0)
    s.add_argument("--arch", default="")
    s.add_argument("--residue", type=float)
    s.add_argument("--cutoff", type=float, default=1e4)
    _config_args(s)

    s = sub.add_parser("sato-tate", help="convergence of local Plancherel measures to Sato-Tate")
    s.add_argument("--primes", required=True, help="e.g. 2..10000 or 2,3,5")
    s.add_argument("--tests", default="x2,x4")
    _config_args(s)

    s = sub.add_parser("conductor", help="local and global conductors of a shape literal")
    s.add_argument("--shape", required=True, help="e.g. 'p:11^1,ds:12'")
    _config_args(s)

    s = sub.add_parser("fit", help="fit N(Q) = C Q^a")
    s.add_argument("--input", help="CSV file with Q,count columns")
    s.add_argument("--Qmin", type=float, default=1e3)
    s.add_argument("--Qmax", type=float, default=1e6)
    s.add_argument("--points", type=int, default=13)
    s.add_argument("--q", type=int)
    _config_args(s)
    return p


CONFIG_KEYS = [f for f in asdict(RunConfig())]


def resolve_config(args):
    cfg = load_config(args.config) if args.config else RunConfig()
    overrides = {}
    for key in CONFIG_KEYS:
        val = getattr(args, key, None)
        if val is None:
            continue
        overrides[key] = val if key == "format" else parse_value(key, str(val), f"--{key}: ")
    return replace(cfg, **overrides)


def _field(cfg, residue=None):
    return NumberFieldSpec.parse(cfg.field, residue)


def _ramified_ideals(field, q):
    if q is None:
        return ()
    primes = split_prime(field, q)
    return (primes[0],)


def cmd_sum(args, cfg):
    f = arith.get_function(args.fn)
    field = _field(cfg)
    rows = [[_int_or_float(X), arith.partial_sum(f, field, X, cfg.threads)] for X in args.X]
    return {"fn": args.fn}, ["X", "sum"], rows


def cmd_dims(args, cfg):
    rows = []
    fn = modforms.dim_newforms if args.new else modforms.dim_cusp_forms
    for k in args.k:
        for N in args.N:
            rows.append([int(N), int(k), fn(int(N), int(k))])
    return {"space": "new" if args.new else "full"}, ["N", "k", "dim"], rows


def cmd_count(args, cfg):
    q = args.q if args.q is not None else cfg.ramified
    counts = modforms.empirical_counts(args.Q, q, cfg.threads, cfg.convention)
    return {"q": q}, ["Q", "count"], [[_int_or_float(Q), c] for Q, c in zip(args.Q, counts)]


def _global_mass(args, cfg):
    field = _field(cfg, args.residue)
    arch = [a for a in args.arch.split(",") if a]
    norm = plancherel.ArchNormalization(cfg.c_even, cfg.c_odd, cfg.c_ds)
    return plancherel.regularized_global_mass(
        field, _ramified_ideals(field, cfg.ramified), arch, args.s, cfg.pmax, norm,
        args.cutoff, cfg.nmax, workers=cfg.threads)


def cmd_measure(args, cfg):
    if args.kind == "local":
        if args.q is None:
            raise UsageError("measure local: --q is required")
        closed = plancherel.finite_split_integral(args.q, args.s)
        series = arith.local_dirichlet_series(arith.slice_mass, args.q, args.s, cfg.rmax)
        if not series.converged:
            raise ContractError(f"local series for M at q={args.q}, s={args.s} does not converge")
        gap = abs(series.value - closed)
        if gap > series.tail_bound + 1e-9:
            raise ContractError(f"series/closed-form gap {gap:.3e} exceeds tail bound "
                                f"{series.tail_bound:.3e} + 1e-9")
        params = {"q": args.q, "s": args.s}
        return params, ["value", "series", "tail_bound"], [[closed, series.value, series.tail_bound]]
    if args.kind == "arch":
        norm = plancherel.ArchNormalization(cfg.c_even, cfg.c_odd, cfg.c_ds)
        rep = plancherel.real_split_integral(args.s, norm, args.cutoff)
    elif args.kind == "compact":
        rep = plancherel.compact_place_sum(args.s, cfg.nmax)
    else:
        rep = _global_mass(args, cfg)
    return rep.params, ["value", "truncation_error"], [[rep.value, rep.truncation_error]]


def cmd_constant(args, cfg):
    rep = _global_mass(args, cfg)
    c, err = plancherel.leading_constant(args.volume, rep)
    params = dict(rep.params, volume=args.volume)
    return params, ["constant", "error", "mass"], [[c, err, rep.value]]


def cmd_sato_tate(args, cfg):
    primes = [int(x) for x in _num_list(args.primes) if is_prime(int(x))]
    if not primes:
        raise UsageError("sato-tate: --primes selects no primes")
    tests = args.tests.split(",")
    table = satotate.convergence_table(tests, primes, cfg.qtol, cfg.threads)
    rows = [[r.q, r.test, r.value_q, r.value_st, r.error] for r in table.rows]
    params = {"tests": args.tests, "primes": args.primes}
    params.update({f"decay_{k}": v for k, v in table.decay.items()})
    return params, ["q", "test", "value_q", "value_st", "error"], rows


def cmd_conductor(args, cfg):
    shape = conductors.GlobalRepShape.parse(args.shape)
    rows = [[label, type(d).__name__, conductors.local_conductor(d, cfg.convention)]
            for label, d in shape.places]
    rows.append(["global", "product", conductors.global_conductor(shape, cfg.convention)])
    return {"shape": args.shape}, ["place", "type", "conductor"], rows


def cmd_fit(args, cfg):
    if args.input:
        with open(args.input) as fh:
            reader = csv.DictReader(line for line in fh if not line.startswith("#"))
            pts = [(float(r["Q"]), float(r["count"])) for r in reader]
        params = {"input": args.input}
    else:
        Qs = [float(x) for x in
              (math.exp(t) for t in _linspace(math.log(args.Qmin), math.log(args.Qmax), args.points))]
        q = args.q if args.q is not None else cfg.ramified
        pts = list(zip(Qs, modforms.empirical_counts(Qs, q, cfg.threads, cfg.convention)))
        params = {"Qmin": args.Qmin, "Qmax": args.Qmax, "points": args.points, "q": q}
    fit = modforms.fit_growth(pts)
    return params, ["exponent", "constant", "max_residual"], \
        [[fit.exponent, fit.constant, fit.max_residual]]


def _linspace(a, b, n):
    if n < 2:
        raise UsageError("--points must be >= 2")
    return [a + (b - a) * i / (n - 1) for i in range(n)]


COMMANDS = {
    "sum": cmd_sum, "dims": cmd_dims, "count": cmd_count, "measure": cmd_measure,
    "constant": cmd_constant, "sato-tate": cmd_sato_tate, "fit": cmd_fit,
    "conductor": cmd_conductor,
}


def _effective_params(args, cfg, extra):
    params = {k: v for k, v in asdict(cfg).items() if k not in ("out", "threads")}
    params["command"] = args.command + (f" {args.kind}" if args.command == "measure" else "")
    params.update(extra)
    return params


def render(fmt, params, columns, rows):
    if fmt == "json":
        body = {"params": params, "columns": columns,
                "rows": [dict(zip(columns, r)) for r in rows]}
        return json.dumps(body, sort_keys=True, indent=2, allow_nan=True) + "\n"
    buf = io.StringIO()
    for k in sorted(params):
        buf.write(f"# {k}={params[k]}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in r])
    return buf.getvalue()


def execute(argv, stdout=None, stderr=None):
    """Run one subcommand; returns the process exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        cfg = resolve_config(args)
        extra, columns, rows = COMMANDS[args.command](args, cfg)
    except (UsageError, ConfigError) as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except CONTRACT_ERRORS as exc:
        print(f"numerical contract failed: {exc}", file=stderr)
        return EXIT_CONTRACT
    except ValueError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    text = render(cfg.format, _effective_params(args, cfg, extra), columns, rows)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0


def main(argv=None):
    sys.exit(execute(sys.argv[1:] if argv is None else argv))
