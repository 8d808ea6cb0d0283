"""Command-line verification driver.

Subcommands:
  verify        run a catalogued scenario and emit its JSON report
  dump-profile  tabulate a dilaton profile as CSV
  crosscheck    compare symbolic derivatives against finite differences

Exit codes: 0 all checks pass, 1 any check failed, 2 configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import numeric, ring
from .anomaly import lap_e2f
from .elliptic import half_period
from .frames import quaternionic_heisenberg
from .gstruct import build_g2, direct_torsion
from .profiles import PROFILES, BadParams, profile
from .ring import expf
from .scenarios import SCENARIOS, run_scenario


class ConfigError(Exception):
    """Raised for unusable command-line or config-file input (exit code 2)."""


KNOWN_OVERRIDES = ("rank2-lambda",)

CROSSCHECK_EXPRS = ("e2f-partials", "lap-e2f", "grad-square", "p-laplacian4", "torsion-d", "theta-d")


# ---------------------------------------------------------------------------
# verify

def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    return data


def cmd_verify(args) -> int:
    if args.scenario not in SCENARIOS:
        raise ConfigError(f"unknown scenario {args.scenario!r}; choose from {', '.join(SCENARIOS)}")
    overrides = tuple(args.set or ())
    for ov in overrides:
        if ov not in KNOWN_OVERRIDES:
            raise ConfigError(f"unknown override {ov!r}; known: {', '.join(KNOWN_OVERRIDES)}")
    config = _load_config(args.config)
    report = run_scenario(args.scenario, seed=args.seed, config=config, overrides=overrides)
    text = report.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)
    for c in report.checks:
        sys.stderr.write(f"[{c.status}] {report.name}: {c.id}\n")
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# dump-profile

def _parse_params(spec: str | None) -> dict:
    out: dict = {}
    if not spec:
        return out
    for item in spec.split(","):
        if not item:
            continue
        if "=" not in item:
            raise ConfigError(f"bad --params entry {item!r} (need k=v)")
        key, val = item.split("=", 1)
        try:
            out[key.strip()] = float(Fraction(val.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad numeric value in --params: {item!r}") from exc
    return out


def _profile_rows(prof, grid: int):
    """(x, u, f, e^{2f}, residual) rows; u echoes e^{2f} off the elliptic slice."""
    rows = []
    if prof.name == "weierstrass":
        d = prof.params["d"]
        tau = half_period(d)
        for k in range(1, grid + 1):
            x1 = 2.0 * tau * k / (grid + 1)
            from .elliptic import weierstrass_p

            u, up = weierstrass_p(x1, d)
            g = prof.e2f((x1, 0.0, 0.0, 0.0))
            resid = up * up - (4.0 * u ** 3 - 4.0 * d * d * u)
            rows.append((x1, u, 0.5 * math.log(g), g, resid))
        return rows
    if prof.name == "ball":
        absA2 = float(prof.params["absA2"])
        expr = lap_e2f() + ring.rat(2) * ring.const("absA2")
        for k in range(grid):
            r = k / grid  # radius in [0, 1)
            x = (r, 0.0, 0.0, 0.0)
            g = prof.e2f(x)
            assi = numeric.build_assignment(prof, x, {"absA2": absA2})
            rows.append((r, g, 0.5 * math.log(g), g, expr.evaluate(assi)))
        return rows
    if prof.name == "fundamental":
        expr = lap_e2f()
        cent = [float(v) for v in prof.params["center"]]
        for k in range(1, grid + 1):
            r = 0.2 + 2.0 * k / grid
            x = (cent[0] + r, cent[1], cent[2], cent[3])
            g = prof.e2f(x)
            assi = numeric.build_assignment(prof, x)
            rows.append((r, g, 0.5 * math.log(g), g, expr.evaluate(assi)))
        return rows
    # constant / custom: tabulate along the first axis with a closure residual
    expr = lap_e2f()
    for k in range(grid):
        x = (k / max(grid - 1, 1), 0.0, 0.0, 0.0)
        g = prof.e2f(x)
        assi = numeric.build_assignment(prof, x)
        rows.append((x[0], g, 0.5 * math.log(g), g, expr.evaluate(assi)))
    return rows


def cmd_dump_profile(args) -> int:
    params = _parse_params(args.params)
    try:
        prof = profile(args.profile, **params)
    except BadParams as exc:
        raise ConfigError(str(exc)) from exc
    rows = _profile_rows(prof, args.grid)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["x", "u(x)", "f(x)", "e^{2f}", "residual"])
    for row in rows:
        writer.writerow([repr(float(v)) for v in row])
    text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# crosscheck

def _crosscheck_box(prof):
    if prof.name == "weierstrass":
        tau = half_period(prof.params["d"])
        return ((0.3 * tau, 1.7 * tau), (-0.5, 0.5), (-0.5, 0.5), (-0.5, 0.5))
    if prof.name == "fundamental":
        return ((0.3, 0.8),) * 4
    return ((-0.2, 0.2),) * 4


def cmd_crosscheck(args) -> int:
    params = _parse_params(args.params)
    try:
        prof = profile(args.profile, **params)
    except BadParams as exc:
        raise ConfigError(str(exc)) from exc
    if args.expr not in CROSSCHECK_EXPRS:
        raise ConfigError(f"unknown expression id {args.expr!r}; known: {', '.join(CROSSCHECK_EXPRS)}")
    pts = numeric.halton_points(
        args.points,
        args.seed,
        _crosscheck_box(prof),
        accept=lambda p: prof.in_domain(p) and prof.singular_distance(p) >= 1e-3,
    )
    asg = numeric.assigner(prof)
    if args.expr == "e2f-partials":
        err = numeric.fd_partial_check(expf(2), asg, pts, step=args.step)
    elif args.expr == "lap-e2f":
        err = numeric.fd_partial_check(lap_e2f(), asg, pts, step=args.step)
    elif args.expr == "grad-square":
        err = numeric.fd_partial_check(ring.grad_square(), asg, pts, step=args.step)
    elif args.expr == "p-laplacian4":
        err = numeric.fd_partial_check(ring.p_laplacian4(), asg, pts, step=args.step)
    elif args.expr == "torsion-d":
        err = numeric.fd_exterior_check(direct_torsion(quaternionic_heisenberg()), asg, pts, step=args.step)
    else:  # theta-d
        err = numeric.fd_exterior_check(build_g2(quaternionic_heisenberg()).theta, asg, pts, step=args.step)
    ok = err <= args.tol
    out = {
        "schema_version": 1,
        "expr": args.expr,
        "profile": prof.name,
        "points": len(pts),
        "step": args.step,
        "max_rel_error": err,
        "tolerance": args.tol,
        "passed": ok,
    }
    sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# entry point

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nilforms", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a catalogued verification scenario")
    v.add_argument("--scenario", required=True)
    v.add_argument("--config", default=None, help="JSON file with scenario parameters")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", default=None, help="also write the JSON report here")
    v.add_argument("--set", action="append", default=None, metavar="OVERRIDE",
                   help="named parameter override (e.g. rank2-lambda)")
    v.set_defaults(fn=cmd_verify)

    d = sub.add_parser("dump-profile", help="tabulate a dilaton profile as CSV")
    d.add_argument("--profile", required=True, choices=PROFILES)
    d.add_argument("--params", default=None, help="comma-separated k=v pairs")
    d.add_argument("--grid", type=int, default=128)
    d.add_argument("--out", default=None)
    d.set_defaults(fn=cmd_dump_profile)

    c = sub.add_parser("crosscheck", help="finite-difference check of symbolic derivatives")
    c.add_argument("--profile", required=True, choices=PROFILES)
    c.add_argument("--params", default=None, help="comma-separated k=v pairs")
    c.add_argument("--expr", required=True)
    c.add_argument("--step", type=float, default=numeric.DEFAULT_STEP)
    c.add_argument("--tol", type=float, default=numeric.DEFAULT_TOL)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--points", type=int, default=16)
    c.set_defaults(fn=cmd_crosscheck)
    return ap


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize anything else
        return 2 if exc.code not in (0,) else 0
    try:
        return int(args.fn(args))
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except BadParams as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
