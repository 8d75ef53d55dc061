"""Command-line front end: ``renyi-lab {entropy,divergence,mi,capacity,verify,sweep}``.

Inputs are JSON files holding a distribution (``density``), a joint
distribution (``F``) or a channel (``rows``), as written by ``to_dict``.
Values are printed in nats with six decimals unless ``--bits`` is given.

Exit codes: 0 success, 1 property failure, 2 invalid input, 3 unsupported order.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import capacity as cap
from . import divergence, entropy, verify
from . import mutual_information as mi
from .errors import PropertyViolation, RenyiError, UnsupportedOrderError, ValidationError
from .measured_spaces import Channel, Distribution, JointDistribution, Order, load_object

EXIT_OK, EXIT_PROPERTY, EXIT_INVALID, EXIT_ORDER = 0, 1, 2, 3

MI_FUNCTIONALS = ("arimoto", "sibson", "augustin", "lp")
SWEEP_QUANTITIES = ("entropy", "conditional", "average", "divergence", *MI_FUNCTIONALS, "tailbound")


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _default_seed():
    raw = os.environ.get("RENYI_LAB_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise _Fail(EXIT_INVALID, f"RENYI_LAB_SEED must be an integer, got {raw!r}") from None


def _orders(values) -> list[Order]:
    out = []
    for v in values or ():
        out.extend(Order.parse(part) for part in str(v).split(",") if part.strip())
    if not out:
        raise ValidationError("at least one order is required (--alpha)")
    return out


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise _Fail(EXIT_INVALID, f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise _Fail(EXIT_INVALID, f"{path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ValidationError(f"{path}: expected a JSON object")
    return load_object(data)


def _expect(obj, kinds, path):
    if not isinstance(obj, kinds):
        names = " or ".join(k.__name__ for k in kinds)
        raise ValidationError(f"{path}: expected a {names}, got a {type(obj).__name__}")
    return obj


def _cfg(args) -> mi.SolverConfig:
    return mi.SolverConfig(tol=args.tol, max_iter=args.max_iter, restarts=args.restarts, seed=args.seed)


def _unit(args, x):
    if x is None:
        return None
    return x / math.log(2) if args.bits else x


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "yes" if x else "no"
    if isinstance(x, str):
        return x
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    # rounding then adding 0.0 turns a negative zero into "0.000000"
    return f"{round(float(x), 6) + 0.0:.6f}"


def _alpha_text(order: Order):
    return str(order)


def _alpha_json(order: Order):
    return "inf" if order.is_inf else order.alpha


def _emit(args, quantity, rows, extra_cols=(), extras=None):
    """Print ``rows`` of ``(order, value, *extra)`` in the requested format."""
    unit = "bits" if args.bits else "nats"
    if args.output == "json":
        payload = {
            "quantity": quantity,
            "unit": unit,
            "results": [
                {"alpha": _alpha_json(r[0]), "value": r[1], **dict(zip(extra_cols, r[2:]))} for r in rows
            ],
        }
        if extras:
            payload.update(extras)
        print(json.dumps(payload, indent=2, sort_keys=False))
        return
    if args.output == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["alpha", "value", *extra_cols])
        for r in rows:
            w.writerow([_alpha_text(r[0]), *(_fmt(v) for v in r[1:])])
        sys.stdout.write(buf.getvalue())
        return
    if len(rows) == 1 and not extra_cols:
        print(_fmt(rows[0][1]))
    else:
        width = max(5, *(len(_alpha_text(r[0])) for r in rows))
        print(f"{'alpha':>{width}}  {'value':>12}" + "".join(f"  {c:>12}" for c in extra_cols))
        for r in rows:
            print(f"{_alpha_text(r[0]):>{width}}  {_fmt(r[1]):>12}" + "".join(f"  {_fmt(v):>12}" for v in r[2:]))
    for key, val in (extras or {}).items():
        print(f"{key}: {val}")


# ---------------------------------------------------------------------------
# commands


def cmd_entropy(args) -> int:
    obj = _expect(_load(args.input), (Distribution, JointDistribution), args.input)
    rows = []
    for o in _orders(args.alpha):
        if isinstance(obj, Distribution):
            if args.conditional or args.average:
                raise ValidationError("--conditional and --average need a joint distribution")
            v = entropy.renyi_entropy(obj, o)
        elif args.conditional:
            v = entropy.conditional_renyi_entropy(obj, o)
        elif args.average:
            v = entropy.average_conditional_renyi_entropy(obj, o)
        else:
            v = entropy.renyi_entropy(obj.as_distribution(), o)
        rows.append((o, _unit(args, v)))
    name = "conditional_entropy" if args.conditional else "average_conditional_entropy" if args.average else "entropy"
    _emit(args, name, rows)
    return EXIT_OK


def cmd_divergence(args) -> int:
    p = _expect(_load(args.p), (Distribution,), args.p)
    q = _expect(_load(args.q), (Distribution,), args.q)
    rows = [(o, _unit(args, divergence.renyi_divergence(p, q, o))) for o in _orders(args.alpha)]
    _emit(args, "divergence", rows)
    return EXIT_OK


def _mi_value(joint, functional, order, cfg, direction):
    if functional == "arimoto":
        return mi.arimoto_mi(joint, order, direction), None
    if functional == "sibson":
        r = mi.sibson_mi(joint, order, direction)
    elif functional == "augustin":
        r = mi.augustin_csiszar_mi(joint, order, cfg, direction)
    else:
        r = mi.lapidoth_pfister_mi(joint, order, cfg)
    return r.value, r


def _masses_list(d):
    return None if d is None else [float(x) for x in d.masses]


def cmd_mi(args) -> int:
    joint = _expect(_load(args.input), (JointDistribution,), args.input)
    cfg = _cfg(args)
    rows, optimizers = [], []
    for o in _orders(args.alpha):
        v, r = _mi_value(joint, args.functional, o, cfg, args.direction)
        rows.append((o, _unit(args, v)))
        if args.show_optimizer and r is not None:
            optimizers.append({
                "alpha": _alpha_json(o),
                "mu": _masses_list(r.optimizer_mu),
                "nu": _masses_list(r.optimizer_nu),
                "iterations": r.iterations,
                "converged": r.converged,
            })
    extras = {"optimizers": optimizers} if args.show_optimizer else None
    if extras and args.output == "table":
        _emit(args, f"mi_{args.functional}", rows)
        for opt in optimizers:
            print(f"alpha={opt['alpha']} " + " ".join(
                f"{k}={_vec(v)}" for k, v in opt.items() if k in ("mu", "nu") and v is not None))
        return EXIT_OK
    _emit(args, f"mi_{args.functional}", rows, extras=extras)
    return EXIT_OK


def _vec(v):
    return "[" + ", ".join(f"{x:.6f}" for x in v) + "]"


def _channel(obj, path) -> Channel:
    obj = _expect(obj, (Channel, JointDistribution), path)
    return obj.channel() if isinstance(obj, JointDistribution) else obj


def cmd_capacity(args) -> int:
    ch = _channel(_load(args.input), args.input)
    cfg = _cfg(args)
    orders = _orders(args.alpha)
    if args.functional == "all":
        reports = [cap.capacity_equalities_check(ch, o, cfg, strict=False) for o in orders]
        failed = any(r.status == "fail" for r in reports)
        if args.output == "json":
            print(json.dumps({"reports": [r.to_dict() for r in reports]}, indent=2))
        else:
            for r in reports:
                print(f"alpha = {r.order:g}: {r.status}")
                for k, v in r.values.items():
                    print(f"  {k:>8}  {_fmt(_unit(args, v))}  gap {r.gaps[k]:.2e}")
                for msg in r.violations:
                    print(f"  violation: {msg}")
        return EXIT_PROPERTY if failed else EXIT_OK
    rows = []
    for o in orders:
        if args.functional == "radius":
            res = cap.renyi_radius(ch, o, cfg)
        else:
            name = "J" if args.functional == "J" else f"{args.functional}_{args.direction}"
            res = cap.capacity(ch, name, o, cfg)
        extra = [float(res.certificate_gap), bool(res.converged)]
        if args.show_optimizer:
            extra.append(_vec(res.argmax_input.masses))
            extra.append(_vec(res.center.masses) if res.center is not None else "")
        rows.append((o, _unit(args, res.value), *extra))
    cols = ["certificate_gap", "converged"]
    if args.show_optimizer:
        cols += ["input", "center"]
    _emit(args, f"capacity_{args.functional}", rows, extra_cols=cols)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = args.suite or list(verify.SUITES)
    unknown = [n for n in names if n not in verify.SUITES]
    if unknown:
        raise ValidationError(f"unknown suite(s) {', '.join(unknown)}; choose from {', '.join(verify.SUITES)}")
    report = verify.run_all(names, args.trials, args.seed, _cfg(args))
    if args.output == "json":
        print(json.dumps(report, indent=2, default=float))
    else:
        for s in report["suites"]:
            flag = "ok" if s["passed"] else "FAIL"
            extra = f", {s['inconclusive']} inconclusive" if s["inconclusive"] else ""
            print(f"{s['name']:<22} {flag:<4} {s['checks']:>7} checks{extra}")
            for f in s["failures"]:
                print(f"    {f['property']}: margin {f['margin']:.3g} ({f['detail']})")
        failures = [
            {"suite": s["name"], **f} for s in report["suites"] for f in s["failures"]
        ]
        if failures:
            print(json.dumps({"failures": failures}, default=float))
    return EXIT_OK if report["passed"] else EXIT_PROPERTY


def cmd_sweep(args) -> int:
    if args.output == "table" and not args.output_given:
        args.output = "csv"
    q = args.quantity
    cfg = _cfg(args)
    orders = _orders(args.alpha)
    if q == "tailbound":
        if args.t is None or not args.t > 0:
            raise ValidationError("--quantity tailbound needs a positive --t")
        joint = _expect(_load(args.input), (JointDistribution,), args.input)
        rows = []
        for o in orders:
            tb = mi.dependence_tail_bound(joint, o, args.t, tol=math.inf)
            rows.append((o, tb.empirical, tb.bound))
        _emit(args, "tailbound", [(r[0], r[1], r[2]) for r in rows], extra_cols=["bound"])
        return EXIT_OK
    if q == "divergence":
        if args.q is None:
            raise ValidationError("--quantity divergence needs --q")
        p = _expect(_load(args.input), (Distribution,), args.input)
        qd = _expect(_load(args.q), (Distribution,), args.q)
        rows = [(o, _unit(args, divergence.renyi_divergence(p, qd, o))) for o in orders]
    elif q == "entropy":
        obj = _expect(_load(args.input), (Distribution, JointDistribution), args.input)
        d = obj if isinstance(obj, Distribution) else obj.as_distribution()
        rows = [(o, _unit(args, entropy.renyi_entropy(d, o))) for o in orders]
    else:
        joint = _expect(_load(args.input), (JointDistribution,), args.input)
        if q == "conditional":
            fn = entropy.conditional_renyi_entropy
            rows = [(o, _unit(args, fn(joint, o))) for o in orders]
        elif q == "average":
            fn = entropy.average_conditional_renyi_entropy
            rows = [(o, _unit(args, fn(joint, o))) for o in orders]
        else:
            rows = [(o, _unit(args, _mi_value(joint, q, o, cfg, args.direction)[0])) for o in orders]
    _emit(args, q, rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


class _OutputAction(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        setattr(namespace, self.dest, values)
        namespace.output_given = True


def _common(seed_default) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--alpha", action="append", metavar="A",
                   help="order(s); repeat or give a comma list; 'inf' allowed")
    p.add_argument("--tol", type=float, default=1e-10, help="solver tolerance (default 1e-10)")
    p.add_argument("--max-iter", type=int, default=10_000, dest="max_iter")
    p.add_argument("--restarts", type=int, default=8, help="random restarts for non-convex solvers")
    p.add_argument("--seed", type=int, default=seed_default,
                   help="random seed (default: $RENYI_LAB_SEED or 0)")
    p.add_argument("--bits", action="store_true", help="report bits instead of nats")
    p.add_argument("--output", choices=("table", "json", "csv"), default="table", action=_OutputAction)
    p.add_argument("--show-optimizer", action="store_true", dest="show_optimizer")
    p.set_defaults(output_given=False)
    return p


def build_parser(seed_default=0) -> argparse.ArgumentParser:
    common = _common(seed_default)
    parser = argparse.ArgumentParser(prog="renyi-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", parents=[common], help="entropy of a distribution or joint")
    p.add_argument("input")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--conditional", action="store_true", help="h(X|Y) of a joint")
    g.add_argument("--average", action="store_true", help="P_Y-average of the slice entropies")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("divergence", parents=[common], help="D_alpha(P || Q)")
    p.add_argument("p")
    p.add_argument("q")
    p.set_defaults(func=cmd_divergence)

    p = sub.add_parser("mi", parents=[common], help="mutual information of a joint")
    p.add_argument("input")
    p.add_argument("--functional", choices=MI_FUNCTIONALS, default="sibson")
    p.add_argument("--direction", choices=("xy", "yx"), default="xy")
    p.set_defaults(func=cmd_mi)

    p = sub.add_parser("capacity", parents=[common], help="capacities and radius of a channel")
    p.add_argument("input", help="channel or joint distribution (its channel is used)")
    p.add_argument("--functional", choices=("I", "K", "J", "radius", "all"), default="radius")
    p.add_argument("--direction", choices=("xy", "yx"), default="xy")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("verify", parents=[common], help="run the property suites")
    p.add_argument("--suite", action="append", help=f"suite name (repeatable): {', '.join(verify.SUITES)}")
    p.add_argument("--trials", type=int, default=None, help="random instances per suite (default: per-suite)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", parents=[common], help="a quantity over many orders (CSV by default)")
    p.add_argument("input")
    p.add_argument("--quantity", choices=SWEEP_QUANTITIES, default="entropy")
    p.add_argument("--q", help="second distribution for --quantity divergence")
    p.add_argument("--t", type=float, help="threshold for --quantity tailbound")
    p.add_argument("--direction", choices=("xy", "yx"), default="xy")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    try:
        seed_default = _default_seed()
        args = build_parser(seed_default).parse_args(argv)
        if args.command != "verify" and args.alpha is None:
            raise ValidationError("--alpha is required")
        return args.func(args)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except UnsupportedOrderError as exc:
        print(f"unsupported order: {exc}", file=sys.stderr)
        return EXIT_ORDER
    except PropertyViolation as exc:
        print(f"property violated: {exc}", file=sys.stderr)
        return EXIT_PROPERTY
    except (RenyiError, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
