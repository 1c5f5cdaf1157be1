"""Command-line front end.

Subcommands: exponent, liftup, check, distance, height, catalog.  Exit codes:
0 success, 1 a checked inequality is violated (or a lift bound failed),
2 configuration error, 3 request infeasible within the budget.
"""

import argparse
import json
import math
import os
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import lattice
from .campaign import run_campaign
from .exponents import check_enumeration_budget
from .intervals import decimal_str, sqrt_bounds
from .points import PointSpecError, algebraic, catalog, independence_check, parse_spec, refine
from .report import estimate_line, write_campaign
from .subspace import (
    PointProxy,
    SubspaceError,
    contains,
    distance_sq,
    from_generators,
    height_sq,
    parse_rows,
    wedge_with_point,
)
from .transfer import (
    VIOLATED,
    ExponentTuple,
    NoRoomError,
    SearchBudget,
    check_tuple,
    ext,
    ext_str,
    family_down,
    family_up,
    going_up_lift,
)

EXIT_OK, EXIT_VIOLATED, EXIT_CONFIG, EXIT_BUDGET = 0, 1, 2, 3
OUT_ENV = "DTRANSFER_OUT"


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    point: str
    n: int
    ds: list
    budget: SearchBudget
    precision: int = 128
    out: Path = None
    seed: int = 0
    workers: int = 1
    grid: list = field(default_factory=list)
    png: bool = True


def default_out():
    return Path(os.environ.get(OUT_ENV, "dtransfer-out"))


def _int_arg(text, what):
    try:
        value = Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        try:
            value = Fraction(float(text))
        except ValueError as exc:
            raise ConfigError(f"{what} must be a number, got {text!r}") from exc
    if value.denominator != 1:
        raise ConfigError(f"{what} must be an integer, got {text!r}")
    return int(value)


def _resolve_point(text, n=None):
    try:
        spec = parse_spec(text)
    except (PointSpecError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    if n is None or n == spec.n:
        return spec
    if spec.kind in ("algebraic-root", "power-vector"):
        lo, hi = spec.payload["interval"]
        return algebraic(spec.payload["poly"], lo, hi, n=n, name=spec.name)
    raise ConfigError(f"point {text!r} has n={spec.n}, not {n}")


def _parse_ds(text, n):
    if text in (None, "", "all"):
        return list(range(n))
    try:
        ds = [int(v) for v in text.split(",")]
    except ValueError as exc:
        raise ConfigError(f"bad --d list {text!r}") from exc
    bad = [d for d in ds if not 0 <= d <= n - 1]
    if bad:
        raise ConfigError(f"d={bad[0]} outside 0..{n - 1}")
    return ds


def _parse_grid(text):
    if text in ("none", "", None):
        return []
    lo, _, hi = text.partition(":")
    try:
        lo, hi = int(lo), int(hi or lo)
    except ValueError as exc:
        raise ConfigError(f"bad --grid {text!r}; expected LO:HI exponents of 2") from exc
    if not 1 <= lo <= hi <= 40:
        raise ConfigError("--grid exponents must satisfy 1 <= LO <= HI <= 40")
    return [1 << k for k in range(lo, hi + 1)]


def _rows_arg(text):
    try:
        rows = parse_rows(text)
    except ValueError as exc:
        raise ConfigError(f"bad --subspace rows {text!r}") from exc
    if not rows or len({len(r) for r in rows}) != 1:
        raise ConfigError("subspace rows must be nonempty and of equal length")
    return rows


def _subspace(text):
    try:
        return from_generators(_rows_arg(text))
    except SubspaceError as exc:
        raise ConfigError(str(exc)) from exc


def _budget(args):
    hmax = _int_arg(args.hmax, "--hmax")
    if hmax < 2:
        raise ConfigError("--hmax must be at least 2")
    try:
        return SearchBudget(H_sq_max=hmax * hmax, ladder_size=args.ladder,
                            exhaustive_H_sq=args.exhaustive_hsq, max_enum=args.max_enum)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _check_feasible(cfg):
    b = cfg.budget
    # each ladder step doubles the weight, so heights up to about 2^ladder are reachable
    if math.log2(float(b.H_sq_max)) / 2 > b.ladder_size:
        raise lattice.BudgetError(
            f"--hmax needs more than {b.ladder_size} ladder steps; raise --ladder")
    for d in cfg.ds:
        check_enumeration_budget(cfg.n, d, min(b.H_sq_max, b.exhaustive_H_sq), b.max_enum)
    if cfg.grid and cfg.grid[-1] > 1 << 24:
        raise lattice.BudgetError("uniform grid beyond 2^24 is out of reach")


# --- subcommands -----------------------------------------------------------


def cmd_exponent(args):
    spec = _resolve_point(args.point, args.n)
    n = spec.n
    cfg = RunConfig(args.point, n, _parse_ds(args.d, n), _budget(args), args.precision,
                    Path(args.out) if args.out else default_out(), args.seed, args.workers,
                    _parse_grid(args.grid), not args.no_png)
    if cfg.precision < 8:
        raise ConfigError("--precision must be at least 8")
    if cfg.workers < 1:
        raise ConfigError("--workers must be positive")
    _check_feasible(cfg)
    result = run_campaign(spec, cfg.ds, cfg.budget, cfg.precision, cfg.grid,
                          workers=cfg.workers)
    paths = write_campaign(cfg.out, result, png=cfg.png)
    P = result.proxy
    print(f"# point {spec} n={n} independence={P.independence} precision={result.precision_bits}")
    print("d\tvalue\tdirection\theight_max\twitness\tvalue_exact")
    for est in [*result.estimates, *result.uniform.values()]:
        print(estimate_line(est))
        for note in est.notes:
            print(f"#   d={est.d}: {note}")
    for note in result.notes:
        print(f"# {note}")
    print(f"# wrote {len(paths)} files to {cfg.out}")
    return EXIT_OK


def _random_subspace(rng, n, d, span=9):
    while True:
        rows = [[rng.randint(-span, span) for _ in range(n + 1)] for _ in range(d + 1)]
        try:
            L = from_generators(rows)
        except SubspaceError:
            continue
        if L.dim_d == d:
            return L


def _random_proxy(rng, n):
    theta = [Fraction(rng.getrandbits(48), 1 << 40) - 128 for _ in range(n)]
    return PointProxy.from_affine(theta, 0, label="random")


def _lift_one(P, L):
    L_up, cert = going_up_lift(P, L)
    data = cert.to_dict()
    data["input_subspace"] = L.serialize()
    data["output_subspace"] = L_up.serialize()
    data["contains_input"] = all(contains(L_up, row) for row in L.basis)
    data["dim_up"] = L_up.dim_d
    return cert, data


def cmd_liftup(args):
    out = Path(args.out) if args.out else default_out()
    rng = random.Random(args.seed)
    if args.batch:
        if args.batch < 1:
            raise ConfigError("--batch must be positive")
        records, ok = [], 0
        for i in range(args.batch):
            n = rng.randint(2, 5)
            d = rng.randint(0, n - 2)
            P, L = _random_proxy(rng, n), _random_subspace(rng, n, d)
            cert, data = _lift_one(P, L)
            ok += cert.ok and data["contains_input"] and data["dim_up"] == d + 1
            records.append({"instance": i, "n": n, "d": d, "ok": cert.ok,
                             "svp_mode": cert.svp_mode, "certificate": data})
        out.mkdir(parents=True, exist_ok=True)
        summary = {"instances": args.batch, "verified": ok, "seed": args.seed,
                   "records": records}
        (out / "liftup_batch.json").write_text(json.dumps(summary, indent=2))
        print(f"{ok}/{args.batch} bounds verified")
        return EXIT_OK if ok == args.batch else EXIT_VIOLATED
    spec = _resolve_point(args.point, args.n)
    P = refine(spec, args.precision)
    if args.subspace:
        L = _subspace(args.subspace)
    else:
        d = 0 if args.d is None else _int_arg(args.d, "--d")
        if not 0 <= d <= P.ambient_n - 1:
            raise ConfigError(f"d={d} outside 0..{P.ambient_n - 1}")
        L = _random_subspace(rng, P.ambient_n, d)
    if L.ambient_n != P.ambient_n:
        raise ConfigError(f"subspace lives in P^{L.ambient_n}, point in P^{P.ambient_n}")
    cert, data = _lift_one(P, L)
    out.mkdir(parents=True, exist_ok=True)
    (out / "lift_certificate.json").write_text(json.dumps(data, indent=2))
    print(f"input\t{data['input_subspace']}")
    print(f"output\t{data['output_subspace']}")
    print(f"xi_norm_sq\t{data['xi_norm_sq']}")
    print(f"R\t[{data['R_interval']['lo']}, {data['R_interval']['hi']}]")
    print(f"bound_norm\t{cert.bound_norm}")
    print(f"bound_wedge\t{cert.bound_wedge}")
    print(f"svp_mode\t{cert.svp_mode}")
    return EXIT_OK if cert.ok else EXIT_VIOLATED


def _parse_tuple(text):
    try:
        return [ext(v) for v in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad exponent tuple {text!r}") from exc


def _opt_ext(text, what):
    if text is None:
        return None
    try:
        return ext(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad {what} {text!r}") from exc


def _show(x):
    """Exact when short, otherwise 15 significant digits (the JSON report stays exact)."""
    text = ext_str(x)
    return text if len(text) <= 24 else decimal_str(x, 15, "nearest") + "~"


def cmd_check(args):
    mode = args.mode
    u0 = _opt_ext(args.uniform0, "--uniform0")
    u1 = _opt_ext(args.uniform1, "--uniform1")
    if args.family:
        if args.n is None or args.w is None:
            raise ConfigError("--family needs --n and --w")
        w = _opt_ext(args.w, "--w")
        try:
            omega = (family_up if args.family == "up" else family_down)(args.n, w)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    elif args.tuple:
        omega = _parse_tuple(args.tuple)
        if args.n is not None and args.n != len(omega):
            raise ConfigError(f"--n {args.n} does not match a tuple of length {len(omega)}")
    elif args.point:
        spec = _resolve_point(args.point, args.n)
        budget = _budget(args)
        grid = _parse_grid(args.grid)
        cfg = RunConfig(args.point, spec.n, list(range(spec.n)), budget, args.precision,
                        grid=grid, workers=args.workers)
        _check_feasible(cfg)
        result = run_campaign(spec, cfg.ds, budget, args.precision, grid, workers=args.workers)
        omega = [e.value for e in result.estimates]
        if "point" in result.uniform:
            u0 = result.uniform["point"].value
        if "form" in result.uniform:
            u1 = result.uniform["form"].value
        mode = "lower"
    else:
        raise ConfigError("check needs --tuple, --family or --point")
    try:
        t = ExponentTuple(len(omega), omega, u0, u1)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    results = check_tuple(t, mode)
    print(f"# n={t.n} omega=({', '.join(_show(v) for v in t.omega)}) mode={mode}")
    print("predicate\tstatus\tlhs\trhs\tequality")
    for r in results:
        print(f"{r.name}\t{r.status}\t{_show(r.lhs)}\t{_show(r.rhs)}\t{r.equality}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "check_report.json").write_text(json.dumps(
            {"n": t.n, "omega": [ext_str(v) for v in t.omega], "mode": mode,
             "uniform0": None if u0 is None else ext_str(u0),
             "uniformN1": None if u1 is None else ext_str(u1),
             "predicates": [r.as_dict() for r in results]}, indent=2))
    return EXIT_VIOLATED if any(r.status == VIOLATED for r in results) else EXIT_OK


def cmd_distance(args):
    spec = _resolve_point(args.point, args.n)
    P = refine(spec, args.precision)
    L = _subspace(args.subspace)
    if L.ambient_n != P.ambient_n:
        raise ConfigError(f"subspace lives in P^{L.ambient_n}, point in P^{P.ambient_n}")
    value, halo = distance_sq(P, L)
    print(f"subspace\t{L.serialize()}")
    print(f"distance_sq\t{value}")
    print(f"distance_sq_decimal\t{decimal_str(value, 15, 'nearest')}")
    print(f"halo\t{float(halo):.6e}")
    print(f"wedge_sq\t{decimal_str(wedge_with_point(P, L.plucker), 15, 'nearest')}")
    return EXIT_OK


def cmd_height(args):
    L = _subspace(args.subspace)
    print(f"subspace\t{L.serialize()}")
    hsq = height_sq(L)
    print(f"height_sq\t{hsq}")
    print(f"height\t{decimal_str(sqrt_bounds(hsq, 128)[0], 30, 'down')} (rounded down)")
    print("plucker\t" + " ".join(f"{''.join(map(str, k))}:{v}" for k, v in L.plucker.items()))
    return EXIT_OK


def cmd_catalog(args):
    print("name\tn\tkind\tindependence\tspec\tnote")
    for spec in catalog():
        status = independence_check(spec)[0]
        print(f"{spec.name}\t{spec.n}\t{spec.kind}\t{status}\t{spec}\t{spec.note}")
    return EXIT_OK


# --- argument parsing --------------------------------------------------------


def _common(p, point=True):
    if point:
        p.add_argument("--point", help="point spec, e.g. catalog:plastic or sqrt:2,3")
    p.add_argument("--n", type=int, help="ambient dimension")
    p.add_argument("--precision", type=int, default=128, help="proxy precision in bits")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help=f"output directory (default ${OUT_ENV} or ./dtransfer-out)")


def _search(p):
    p.add_argument("--hmax", default="1e5", help="height cap H (heights squared up to H^2)")
    p.add_argument("--grid", default="4:16", help="uniform grid X = 2^LO..2^HI, or 'none'")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--ladder", type=int, default=80, help="LLL weight ladder size")
    p.add_argument("--exhaustive-hsq", type=int, default=50,
                   help="height squared cap for exhaustive enumeration")
    p.add_argument("--max-enum", type=int, default=50_000)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dtransfer",
        description="Approximation exponents of real points by rational subspaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exponent", help="measure exponents and write CSV/JSON/plot files")
    _common(p)
    _search(p)
    p.add_argument("--d", help="comma-separated dimensions (default all)")
    p.add_argument("--no-png", action="store_true", help="skip the matplotlib rendering")
    p.set_defaults(func=cmd_exponent)

    p = sub.add_parser("liftup", help="run the going-up lift and write its certificate")
    _common(p)
    p.add_argument("--subspace", help="generator rows, e.g. '1,0,0'")
    p.add_argument("--d", help="dimension of a random subspace when --subspace is absent")
    p.add_argument("--batch", type=int, help="run this many random instances instead")
    p.set_defaults(func=cmd_liftup, point="catalog:sqrt2-sqrt3")

    p = sub.add_parser("check", help="evaluate the transfer inequalities on a tuple")
    _common(p)
    _search(p)
    p.add_argument("--tuple", help="omega_0,...,omega_(n-1), e.g. 1/2,2")
    p.add_argument("--uniform0", help="uniform point-side exponent")
    p.add_argument("--uniform1", help="uniform form-side exponent")
    p.add_argument("--family", choices=("up", "down"))
    p.add_argument("--w", help="family parameter")
    p.add_argument("--mode", choices=("exact", "lower"), default="exact")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("distance", help="projective distance from a point to a subspace")
    _common(p)
    p.add_argument("--subspace", required=True)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("height", help="height of a rational subspace")
    p.add_argument("--subspace", required=True)
    p.set_defaults(func=cmd_height)

    p = sub.add_parser("catalog", help="list the built-in points")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return args.func(args)
    except NoRoomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConfigError, PointSpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except lattice.BudgetError as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
