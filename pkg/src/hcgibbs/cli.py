"""Command-line interface: ``critical``, ``sweep``, ``verify`` and ``consistency``.

Exit codes: 0 success, 1 failed regression or consistency, 2 usage or
domain error.  Errors print a single ``error: ...`` line to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import core, oracle, phase, regression, systems
from . import reductions as red

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CONSISTENCY_TOL = 1e-9


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt(x: float) -> str:
    return f"{x:.10g}"


def fmt_log(log_x: float) -> str:
    """Ten significant digits of ``exp(log_x)``, even past the float range."""
    if log_x < 700:
        return fmt(math.exp(log_x))
    d = log_x / math.log(10)
    e = math.floor(d)
    m = 10 ** (d - e)
    return f"{m:.10g}e+{e}"


# ---------------------------------------------------------------------------


def cmd_critical(args, out) -> int:
    model = phase.Model.parse(args.model)
    if model is phase.Model.WP:
        x0, lam_cr = phase.critical_wp()
        out.write(f"lambda_cr={fmt(lam_cr)}\nx0={fmt(x0)}\n")
        return EXIT_OK
    k = _need_k(args, model)
    if model is phase.Model.STICK:
        if k <= 4:
            raise red.DomainError(f"stick k={k}: no critical points; unique measure for all lambda")
        c = phase.stick_critical_data(k)
        out.write(f"lambda1={fmt(c.lambda1)}\nlambda2={fmt(c.lambda2)}\n"
                  f"z1={fmt(c.z1)}\nz2={fmt(c.z2)}\n")
        return EXIT_OK
    if red.key_d1(k) <= 0:
        raise red.DomainError(f"key k={k}: discriminant negative; unique for all lambda")
    l1, l2 = red.key_log_lambda_cr(k)
    z1, z2 = red.key_extrema(k)
    out.write(f"lambda1={fmt_log(l1)}\nlambda2={fmt_log(l2)}\nz1={fmt(z1)}\nz2={fmt(z2)}\n")
    return EXIT_OK


def _need_k(args, model) -> int:
    if args.k is None:
        raise UsageError(f"--k is required for model {model.value}")
    return args.k


def _grid(args) -> list[float]:
    if args.lambdas:
        try:
            return [float(s) for s in args.lambdas.split(",") if s.strip()]
        except ValueError:
            raise UsageError(f"bad lambda list {args.lambdas!r}") from None
    if args.lambda_min is None or args.lambda_max is None:
        raise UsageError("give --lambda or both --lambda-min and --lambda-max")
    lo, hi, n = args.lambda_min, args.lambda_max, args.steps
    if not (0 < lo < hi):
        raise UsageError("need 0 < lambda-min < lambda-max")
    if n < 1:
        raise UsageError("--steps must be >= 1")
    if n == 1:
        return [lo]
    if args.spacing == "log":
        return [float(x) for x in np.geomspace(lo, hi, n)]
    return [float(x) for x in np.linspace(lo, hi, n)]


def write_csv(reports, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["lambda", "regime", "ti_count", "wp_count", "roots"])
    for r in reports:
        w.writerow([fmt(r.lam), r.regime.value, r.ti_count, r.wp_count,
                    ";".join(fmt(x) for x in r.roots)])


def cmd_sweep(args, out) -> int:
    model = phase.Model.parse(args.model)
    k = 2 if model is phase.Model.WP else _need_k(args, model)
    if model is phase.Model.WP and args.k not in (None, 2):
        raise UsageError("the wp model is fixed at k=2")
    reports = phase.sweep(model, k, _grid(args), band=args.band, workers=args.workers)
    if args.format == "json":
        json.dump([r.as_dict() for r in reports], out, indent=2)
        out.write("\n")
    else:
        write_csv(reports, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    results = regression.run_checks()
    if args.json:
        json.dump([r.as_dict() for r in results], out, indent=2)
        out.write("\n")
    else:
        width = max(len(r.name) for r in results)
        for r in results:
            out.write(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}\n")
        n_ok = sum(r.passed for r in results)
        out.write(f"{n_ok}/{len(results)} checks passed\n")
    return EXIT_OK if regression.all_passed(results) else EXIT_FAIL


def cmd_consistency(args, out) -> int:
    g = core.builtin_graph(args.model)
    n, k, lam = args.n, args.k, core.check_activity(args.lam)
    oracle.FiniteTree.build(k, n)  # size guard before any solving
    if g.num_states == 2:
        law = systems.solve_fixed_point(lambda z: systems.two_state_ti_map(k, lam, z), 0.5).z
    else:
        law = systems.solve_fixed_point(lambda z: systems.ti_map_generic(g, k, lam, z),
                                        np.ones(3)).z
    v = oracle.check_consistency(g, k, n, lam, law)
    out.write(f"max_violation={v:.3e}\n")
    return EXIT_OK if v < CONSISTENCY_TOL else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hcgibbs", description="Boundary laws and phase structure of "
                "hard-core models on Cayley trees.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("critical", help="critical activities of a model")
    c.add_argument("model", choices=["stick", "key", "wp"])
    c.add_argument("--k", type=int)
    c.set_defaults(func=cmd_critical)

    s = sub.add_parser("sweep", help="classify a grid of activities")
    s.add_argument("--model", required=True, choices=["stick", "key", "wp"])
    s.add_argument("--k", type=int)
    s.add_argument("--lambda", dest="lambdas", help="comma-separated activities (wins over min/max)")
    s.add_argument("--lambda-min", type=float)
    s.add_argument("--lambda-max", type=float)
    s.add_argument("--steps", type=int, default=10)
    s.add_argument("--spacing", choices=["lin", "log"], default="lin")
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.add_argument("--band", type=float, default=phase.CRITICAL_BAND,
                   help="half-width of the Critical band around critical activities")
    s.add_argument("--workers", type=int, default=None)
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify", help="run the reference regression checks")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("consistency", help="finite-volume compatibility of the TI law")
    k.add_argument("--model", required=True, choices=["two-state", "stick", "key"])
    k.add_argument("--k", type=int, required=True)
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--lambda", dest="lam", type=float, default=1.0)
    k.set_defaults(func=cmd_consistency)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
    except (red.DomainError, oracle.SizeGuardExceeded, ValueError, OverflowError) as exc:
        err.write(f"error: {_one_line(exc)}\n")
    except phase.RegimeMismatch as exc:
        err.write(f"error: {_one_line(exc)}\n")
        return EXIT_FAIL
    return EXIT_USAGE


def _one_line(exc) -> str:
    return " ".join(str(exc).split())


def run(argv=None) -> tuple[int, str, str]:
    """Run the CLI in-process and capture its output (handy in tests)."""
    o, e = io.StringIO(), io.StringIO()
    code = main(argv, o, e)
    return code, o.getvalue(), e.getvalue()


if __name__ == "__main__":
    raise SystemExit(main())
