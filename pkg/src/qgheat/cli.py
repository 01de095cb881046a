"""Command-line front end.

    qgheat spectrum --group O --N 2 --smax 5
    qgheat tau --group O --N 2 --p 4 --D 1 --method cubic
    qgheat check --suite bounds --group S --N 9 --smax 200

Records go to stdout as JSON (default) or CSV.  Exit codes: 0 success,
1 a check suite found a violation, 2 usage error, 3 a numerical tolerance
could not be met.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from . import checks
from .contractivity import (
    dimension_estimate,
    envelope_for_group,
    envelope_g_O2,
    group_params,
    l1_linf_envelope,
)
from .hypercontractivity import (
    HypParams,
    default_constant,
    dn_upper_bound,
    hyper_gap_sum,
    log_sobolev_constant,
    q_exponent_path,
    q_parameter,
    r_p,
    rp_crossing,
    tau_cubic,
    tau_linear,
    tau_series,
)
from .interval import CertifiedValue, ToleranceError
from .quadratic import QuadraticValue
from .spectrum import Family, GroupKind, bound_report, spectral_table

EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_TOLERANCE = 3


class UsageError(Exception):
    pass


@dataclass
class OutputRecord:
    command: str
    inputs: dict[str, Any]
    results: dict[str, Any]
    certified: bool = True


@dataclass
class Run:
    records: list[OutputRecord] = field(default_factory=list)
    violations: int = 0

    def add(self, command: str, inputs: dict, results: dict, certified: bool = True) -> None:
        self.records.append(OutputRecord(command, inputs, results, certified))


# --------------------------------------------------------------------------
# serialization


def _scalar(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, QuadraticValue):
        return str(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return "nan"
        return _Float17(x)
    return str(x)


class _Float17(float):
    pass


def _encode(obj: Any) -> str:
    if isinstance(obj, CertifiedValue):
        return _encode({"lo": obj.lo, "hi": obj.hi})
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    v = _scalar(obj)
    if isinstance(v, _Float17):
        return format(float(v), ".17g")
    return json.dumps(v)


def to_json(records: list[OutputRecord]) -> str:
    body = ",\n".join(
        "  "
        + _encode(
            {
                "command": r.command,
                "inputs": r.inputs,
                "results": r.results,
                "certified": r.certified,
            }
        )
        for r in records
    )
    return "[\n" + body + "\n]\n" if records else "[]\n"


def _flatten(results: dict[str, Any]) -> dict[str, str]:
    out: dict[str, str] = {}
    for k, v in results.items():
        if isinstance(v, CertifiedValue):
            out[f"{k}_lo"] = _cell(v.lo)
            out[f"{k}_hi"] = _cell(v.hi)
        else:
            out[k] = _cell(v)
    return out


def _cell(v: Any) -> str:
    s = _scalar(v)
    if isinstance(s, _Float17):
        return format(float(s), ".17g")
    if isinstance(s, bool):
        return "true" if s else "false"
    return str(s)


def to_csv(records: list[OutputRecord]) -> str:
    rows = [_flatten(r.results) for r in records]
    header: list[str] = []
    for row in rows:
        for k in row:
            if k not in header:
                header.append(k)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=header, restval="")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


# --------------------------------------------------------------------------
# argument helpers


def _kind(args) -> GroupKind:
    if args.group is None or args.N is None:
        raise UsageError("--group and --N are required")
    try:
        return GroupKind.parse(args.group, args.N)
    except ValueError as e:
        raise UsageError(str(e)) from e


def _constant(kind: GroupKind, args) -> tuple[float, bool]:
    given = args.D if kind.is_orthogonal else args.C
    other = args.C if kind.is_orthogonal else args.D
    if other is not None:
        raise UsageError(
            "use --D with O_N+ and --C with S_N+"
        )
    if given is not None:
        if given < 1:
            raise UsageError("the level-norm constant must be at least 1")
        return given, True
    value, certified = default_constant(kind)
    if not certified:
        name = "D" if kind.is_orthogonal else "C"
        print(
            f"WARNING: no --{name} given for {kind}; using {name}=1, which is only a "
            f"lower bound for the true constant. Results are not certified.",
            file=sys.stderr,
        )
    return value, certified


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("QGHEAT_THREADS", "1")))
    except ValueError:
        return 1


def _ordered_map(fn, items: list) -> list:
    # results come back in input order regardless of completion order
    n = _workers()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


# --------------------------------------------------------------------------
# subcommands


def cmd_spectrum(args, run: Run) -> None:
    kind = _kind(args)
    for line in spectral_table(kind, args.smax):
        res: dict[str, Any] = {
            "s": line.s,
            "lambda": line.lambda_,
            "dim": line.dim,
            "mult": line.mult,
        }
        if line.s >= 1:
            b = bound_report(kind, line.s)
            res.update(lower=b.lower, upper=b.upper, bound_holds=b.holds)
        run.add("spectrum", {"group": args.group, "N": args.N, "s": line.s}, res)


def cmd_envelope(args, run: Run) -> None:
    kind = _kind(args)
    constant, certified = _constant(kind, args)
    if args.which == "g" and not (kind.is_orthogonal and kind.N == 2):
        raise UsageError("the g envelope is defined for O_2+ only")
    params = group_params(kind, constant)
    ts = np.geomspace(args.tmin, args.tmax, args.npoints)

    def one(t: float) -> CertifiedValue:
        if args.which == "f":
            return envelope_for_group(kind, constant, t)
        if args.which == "l1":
            return l1_linf_envelope(params, t)
        # g grows like t^{-3/2}; the tolerance is taken relative to that size
        scale = constant**2 * max(1.0, 4.0 * (3.0 / t) ** 1.5)
        return envelope_g_O2(constant, t, args.rtol * scale)

    values = _ordered_map(one, [float(t) for t in ts])
    inputs = {"group": args.group, "N": args.N, "constant": constant, "which": args.which}
    for t, v in zip(ts, values):
        run.add("envelope", inputs, {"t": float(t), "value": v}, certified)


def cmd_tau(args, run: Run) -> None:
    kind = _kind(args)
    constant, certified = _constant(kind, args)
    params = HypParams(args.p, constant)
    methods = ["series", "cubic", "linear"] if args.method == "all" else [args.method]
    inputs = {"group": args.group, "N": args.N, "p": args.p, "constant": constant}
    for m in methods:
        if m == "series":
            r = tau_series(kind, params, args.tol)
        elif m == "cubic":
            r = tau_cubic(kind, params, args.tol)
        else:
            try:
                r = tau_linear(kind, params, unverified=args.unverified)
            except ValueError as e:
                raise UsageError(f"{e}; pass --unverified to compute it anyway") from e
        run.add("tau", {**inputs, "method": m}, {"tau": r.tau}, certified and r.certified)


def cmd_rp(args, run: Run) -> None:
    fam = Family(args.family)
    if args.crossing:
        run.add("rp", {"family": args.family, "crossing": True}, {"p": rp_crossing(fam)})
        return
    for p in args.p:
        run.add("rp", {"family": args.family, "p": p}, {"p": p, "R": r_p(fam, p, args.tol)})


def cmd_dn(args, run: Run) -> None:
    for N in args.N:
        b = dn_upper_bound(N, args.tol)
        run.add(
            "dn",
            {"N": N},
            {"N": N, "q": q_parameter(N), "bound": b, "N_log_bound": N * math.log(b.hi)},
        )


def cmd_logsob(args, run: Run) -> None:
    kind = _kind(args)
    constant, certified = _constant(kind, args)
    rep = log_sobolev_constant(kind, constant, args.tol)
    run.add(
        "logsob",
        {"group": args.group, "N": args.N, "constant": constant},
        {
            "c": rep.c,
            "t0": rep.t0.tau,
            "tau_cubic": rep.cubic.tau,
            "tau_linear": rep.linear.tau,
        },
        certified,
    )


def cmd_qpath(args, run: Run) -> None:
    for t in np.linspace(0.0, args.t0, args.npoints):
        t = min(float(t), args.t0)
        run.add("qpath", {"t0": args.t0}, {"t": t, "q": q_exponent_path(t, args.t0)})


def cmd_dim(args, run: Run) -> None:
    kind = _kind(args)
    constant, certified = _constant(kind, args)
    if args.envelope == "g":
        if not (kind.is_orthogonal and kind.N == 2):
            raise UsageError("the g envelope is defined for O_2+ only")

        def env(t: float) -> CertifiedValue:
            # L1 -> Linf bound g(t/2); tolerance relative to its size
            return envelope_g_O2(constant, t / 2, 1e-8 * (t / 2) ** -1.5 * constant**2)
    else:
        params = group_params(kind, constant)

        def env(t: float) -> CertifiedValue:
            return l1_linf_envelope(params, t)

    d = dimension_estimate(env, args.tmin, args.tmax, args.npoints)
    run.add(
        "dim",
        {"group": args.group, "N": args.N, "envelope": args.envelope,
         "tmin": args.tmin, "tmax": args.tmax, "npoints": args.npoints},
        {"dimension": d},
        certified,
    )


def cmd_check(args, run: Run) -> None:
    suite = args.suite
    if suite == "chebyshev":
        rows = checks.chebyshev_suite(seed=args.seed)
    elif suite == "identities":
        rows = checks.identities_suite()
    elif suite == "sandwich":
        rows = checks.sandwich_suite()
    else:
        kind = _kind(args)
        if suite == "bounds":
            rows = checks.bounds_suite(kind, args.smax)
        elif suite == "gap":
            rows = checks.gap_suite(kind, args.samples, args.seed)
        elif suite == "semigroup":
            rows = checks.semigroup_suite(kind, args.samples, args.seed)
        else:
            constant, _ = _constant(kind, args)
            if suite == "ultra":
                rows = checks.ultra_suite(kind, constant, samples=args.samples, seed=args.seed)
            else:
                rows = checks.hyper_suite(kind, constant, samples=args.samples, seed=args.seed)
    for row in rows:
        run.add("check", {"suite": suite}, row)
        if not row["holds"]:
            run.violations += 1


SWEEP_QUANTITIES = ("tau_series", "tau_cubic", "tau_linear", "gap_sum", "envelope_f")


def cmd_sweep(args, run: Run) -> None:
    needs_t = args.quantity in ("gap_sum", "envelope_f")
    needs_p = args.quantity != "envelope_f"
    if needs_t and not args.t:
        raise UsageError(f"--t is required for {args.quantity}")
    if needs_p and not args.p:
        raise UsageError(f"--p is required for {args.quantity}")
    kinds = []
    for N in args.N:
        try:
            kinds.append(GroupKind.parse(args.group, N))
        except ValueError as e:
            raise UsageError(str(e)) from e
    consts = {k: _constant(k, args) for k in kinds}
    grid = list(
        itertools.product(kinds, args.p if needs_p else [None], args.t if needs_t else [None])
    )

    def one(item):
        kind, p, t = item
        c = consts[kind][0]
        q = args.quantity
        if q == "tau_series":
            return tau_series(kind, HypParams(p, c)).tau
        if q == "tau_cubic":
            return tau_cubic(kind, HypParams(p, c)).tau
        if q == "tau_linear":
            return tau_linear(kind, HypParams(p, c), unverified=args.unverified).tau
        if q == "gap_sum":
            return hyper_gap_sum(kind, HypParams(p, c), t)
        return envelope_for_group(kind, c, t)

    values = _ordered_map(one, grid)
    for (kind, p, t), v in zip(grid, values):
        res: dict[str, Any] = {"N": kind.N}
        if p is not None:
            res["p"] = p
        if t is not None:
            res["t"] = t
        res["value"] = v
        certified = consts[kind][1] and not (args.quantity == "tau_linear" and p < 4)
        run.add("sweep", {"group": args.group, "quantity": args.quantity}, res, certified)


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0)

    group = argparse.ArgumentParser(add_help=False)
    group.add_argument("--group", choices=("O", "S"))
    group.add_argument("--N", type=int)
    group.add_argument("--D", type=float, help="level-norm constant D_N (O_N+)")
    group.add_argument("--C", type=float, help="level-norm constant C_N (S_N+)")

    ap = argparse.ArgumentParser(
        prog="qgheat",
        description="Spectral and contractivity computations for heat semigroups on O_N+ and S_N+.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common, group], help="eigenvalues and dimensions")
    p.add_argument("--smax", type=int, default=10)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("envelope", parents=[common, group], help="ultracontractivity envelopes on a t grid")
    p.add_argument("--which", choices=("f", "l1", "g"), default="f")
    p.add_argument("--tmin", type=float, default=1e-3)
    p.add_argument("--tmax", type=float, default=10.0)
    p.add_argument("--npoints", type=int, default=20)
    p.add_argument("--rtol", type=float, default=1e-9, help="relative width target for g")
    p.set_defaults(func=cmd_envelope)

    p = sub.add_parser("tau", parents=[common, group], help="hypercontractivity times")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--method", choices=("series", "cubic", "linear", "all"), default="all")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--unverified", action="store_true", help="allow the linear bound below p = 4")
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("rp", parents=[common], help="the R_p series")
    p.add_argument("--family", choices=("O", "S"), default="O")
    p.add_argument("--p", type=float, nargs="+", default=[4.0])
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--crossing", action="store_true", help="locate where R_p crosses 1")
    p.set_defaults(func=cmd_rp)

    p = sub.add_parser("dn", parents=[common], help="upper bound on D_N")
    p.add_argument("--N", type=float, nargs="+", required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_dn)

    p = sub.add_parser("logsob", parents=[common, group], help="log-Sobolev constant")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_logsob)

    p = sub.add_parser("qpath", parents=[common], help="interpolation exponent path")
    p.add_argument("--t0", type=float, required=True)
    p.add_argument("--npoints", type=int, default=11)
    p.set_defaults(func=cmd_qpath)

    p = sub.add_parser("dim", parents=[common, group], help="small-time dimension estimate")
    p.add_argument("--envelope", choices=("f", "g"), default="f")
    p.add_argument("--tmin", type=float, default=1e-6)
    p.add_argument("--tmax", type=float, default=1e-4)
    p.add_argument("--npoints", type=int, default=9)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("check", parents=[common, group], help="verification suites")
    p.add_argument(
        "--suite",
        required=True,
        choices=("chebyshev", "bounds", "gap", "ultra", "hyper", "identities", "sandwich", "semigroup"),
    )
    p.add_argument("--smax", type=int, default=200)
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sweep", parents=[common], help="cartesian grids over N, p, t")
    p.add_argument("--group", choices=("O", "S"), required=True)
    p.add_argument("--N", type=int, nargs="+", required=True)
    p.add_argument("--p", type=float, nargs="+")
    p.add_argument("--t", type=float, nargs="+")
    p.add_argument("--D", type=float)
    p.add_argument("--C", type=float)
    p.add_argument("--quantity", choices=SWEEP_QUANTITIES, required=True)
    p.add_argument("--unverified", action="store_true")
    p.set_defaults(func=cmd_sweep)
    return ap


def run(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    out = Run()
    try:
        args.func(args, out)
    except UsageError as e:
        ap.print_usage(sys.stderr)
        print(f"qgheat: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ToleranceError as e:
        print(f"qgheat: tolerance failure: {e}", file=sys.stderr)
        return EXIT_TOLERANCE
    except ValueError as e:
        print(f"qgheat: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    text = to_csv(out.records) if args.format == "csv" else to_json(out.records)
    sys.stdout.write(text)
    return EXIT_VIOLATION if out.violations else 0


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
