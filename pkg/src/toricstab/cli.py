"""Command-line front end: JSON reports, optional CSV margin tables and plot series.

Exit codes: 0 pass, 1 fail, 2 wall, 3 usage or input error.
"""
from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from fractions import Fraction

from . import __version__
from .blowup_fibration import (adiabatic_equivalence, blowup_classes, exceptional_threshold,
                               fibration_angles, fibration_context, point_blowup,
                               proper_transform_reduction, schmidt_relation_audit)
from .charges import phase_data
from .chow import as_class
from .errors import ToricStabError
from .report import CheckReport, jsonable
from .stability import (NoneFound, bmsz_conditions, bstab_implies_dhym, dhym_positivity,
                        find_parameters, heart_membership, wall_scan, wall_series)
from .toric_core import BUILTIN_NAMES, builtin, load_fan, proper_orbit_closures
from .unstable_blp3 import (instability_window, nd_polys, phi_min_sup, quotient_class,
                            ratio_at)

EXIT = {"pass": 0, "fail": 1, "wall": 2}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}")


def _common(p):
    p.add_argument("--out", help="write the JSON report here (default stdout)")
    p.add_argument("--csv", help="write a per-item margin table here")
    p.add_argument("--series", help="write plot-ready (parameter, value) rows here")
    p.add_argument("--digits", type=int, help="add decimal renderings with this many digits")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for per-subvariety work")


def _fan_opts(p, alpha=True):
    p.add_argument("--fan", required=True, help="fan JSON path or builtin:NAME")
    p.add_argument("--omega", required=True, help="Kahler class, e.g. '2H-E'")
    if alpha:
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--alpha", help="class alpha")
        g.add_argument("--L", help="c1(L); alpha = -c1(L)")
        p.add_argument("--dualize", action="store_true", help="negate the given class")
    p.add_argument("--beta", type=_rational, default=Fraction(0))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="toricstab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("builtins", help="list built-in fans")
    _common(p)

    p = sub.add_parser("check-bmsz", help="divisor conditions (a)/(b) for omega")
    p.add_argument("--fan", required=True)
    p.add_argument("--omega", required=True)
    _common(p)

    p = sub.add_parser("dhym", help="Nakai-Moishezon margins over toric subvarieties")
    _fan_opts(p)
    p.add_argument("--mode", choices=("strict", "semi"), default="strict")
    _common(p)

    for name, hlp in (("destabilize", "heart membership / parameter search for S_V"),
                      ("pipeline", "conditions, parameter search and the implication audit")):
        p = sub.add_parser(name, help=hlp)
        _fan_opts(p)
        p.add_argument("--alpha2", type=_rational, default=Fraction(1, 3))
        p.add_argument("--k", type=int)
        p.add_argument("--k1", type=int)
        p.add_argument("--k2", type=int, default=1)
        p.add_argument("--k-max", type=int, default=10 ** 4)
        p.add_argument("--steps", type=int, default=50, help="k-sweep length for --series")
        if name == "pipeline":
            p.add_argument("--skip-bmsz", action="store_true")
        _common(p)

    p = sub.add_parser("walls", help="wall scan along omega0 -> omega1")
    p.add_argument("--fan", required=True)
    p.add_argument("--omega0", required=True)
    p.add_argument("--omega1", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--alpha")
    g.add_argument("--L")
    p.add_argument("--dualize", action="store_true")
    p.add_argument("--beta", type=_rational, default=Fraction(0))
    p.add_argument("--steps", type=int, default=100)
    _common(p)

    p = sub.add_parser("blowup", help="point blowup: exceptional angles and proper transforms")
    _fan_opts(p)
    p.add_argument("--delta", type=_rational, required=True)
    p.add_argument("--t", type=_rational, required=True, help="tan(rho/2)")
    p.add_argument("--cone-index", type=int, default=0)
    _common(p)

    p = sub.add_parser("schmidt-audit", help="charge on the blowup against the base charge")
    _fan_opts(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--delta", type=_rational, required=True)
    p.add_argument("--alpha2", type=_rational, default=Fraction(1, 3))
    p.add_argument("--cone-index", type=int, default=0)
    p.add_argument("--twist", action="append", default=[], metavar="LABEL:K1")
    _common(p)

    p = sub.add_parser("fibration", help="phases on X -> P^1 against the fibre")
    _fan_opts(p)
    p.add_argument("--u", required=True, help="projection functional, e.g. 0,0,1")
    p.add_argument("--m", type=_rational, default=Fraction(1))
    p.add_argument("--kappa", type=_rational, default=Fraction(1))
    p.add_argument("--m-cap", type=int, default=2 ** 20)
    _common(p)

    p = sub.add_parser("unstable-p3", help="instability window and supremum on Bl_p P^3")
    p.add_argument("--beta", type=_rational, required=True)
    p.add_argument("--p", type=_rational, required=True)
    p.add_argument("--r", type=_rational, required=True)
    p.add_argument("--grid", type=int, default=0, help="grid size for the dominance check")
    _common(p)
    return parser


# -- helpers ----------------------------------------------------------------------------------

def _alpha(fan, args):
    if getattr(args, "alpha", None) is not None:
        a = as_class(fan, args.alpha)
    else:
        a = -as_class(fan, args.L)
    return -a if args.dualize else a


_RAT = re.compile(r"^-?\d+(/\d+)?$")


def _decimal(text: str, digits: int) -> str | None:
    if _RAT.match(text):
        q = Fraction(text)
        return f"{float(q):.{digits}g}"
    return None


def _with_decimals(obj, digits):
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            out[k] = _with_decimals(v, digits)
            if isinstance(v, str):
                d = _decimal(v, digits)
                if d is not None:
                    out[f"{k}_decimal"] = d
        return out
    if isinstance(obj, list):
        return [_with_decimals(x, digits) for x in obj]
    return obj


def _write_rows(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for r in rows:
            w.writerow([jsonable(x) for x in r])


def _items_csv(path, report: CheckReport):
    _write_rows(path, ["subject", "margin", "status"],
                [(i.subject, i.margin, i.status) for i in report.items])


# -- commands ---------------------------------------------------------------------------------

def cmd_builtins(args):
    out = {}
    for name in BUILTIN_NAMES:
        f = builtin(name)
        out[name] = {"dim": f.dim, "labels": list(f.labels), "max_cones": len(f.max_cones)}
    return "pass", out, None


def cmd_check_bmsz(args):
    fan = load_fan(args.fan)
    rep = bmsz_conditions(fan, args.omega)
    return rep.verdict, rep, rep


def cmd_dhym(args):
    fan = load_fan(args.fan)
    rep = dhym_positivity(fan, args.omega, _alpha(fan, args), args.beta, args.mode, args.jobs)
    return rep.verdict, rep, rep


def _k_series(args, fan, L, rep_params):
    rows = []
    for k in range(1, args.steps + 1):
        p = dict(rep_params, k=k)
        try:
            v = heart_membership(fan, args.omega, L, args.beta, args.alpha2, p).verdict
        except ToricStabError as e:
            v = type(e).__name__
        rows.append((k, v))
    _write_rows(args.series, ["k", "heart_membership"], rows)


def cmd_destabilize(args):
    fan = load_fan(args.fan)
    L = -_alpha(fan, args)
    if args.k is not None and args.k1 is not None:
        params = {"k": args.k, "k1": args.k1, "k2": args.k2}
        rep = heart_membership(fan, args.omega, L, args.beta, args.alpha2, params)
    else:
        found = find_parameters(fan, args.omega, L, args.beta, args.alpha2, k_max=args.k_max)
        if isinstance(found, NoneFound):
            return "fail", found, None
        params = found
        rep = heart_membership(fan, args.omega, L, args.beta, args.alpha2, params)
    if args.series:
        _k_series(args, fan, L, params)
    return rep.verdict, rep, rep


def cmd_pipeline(args):
    fan = load_fan(args.fan)
    L = -_alpha(fan, args)
    out = {}
    if not args.skip_bmsz:
        b = bmsz_conditions(fan, args.omega)
        out["bmsz"] = b
        if b.verdict != "pass":
            return "fail", out, b
    if args.k is not None and args.k1 is not None:
        params = {"k": args.k, "k1": args.k1, "k2": args.k2}
        check = True
    else:
        params = find_parameters(fan, args.omega, L, args.beta, args.alpha2, k_max=args.k_max)
        out["parameters"] = params
        if isinstance(params, NoneFound):
            return "fail", out, None
        check = True
    rep = bstab_implies_dhym(fan, args.omega, L, args.beta, params, args.alpha2, check_heart=check)
    out["implication"] = rep
    return rep.verdict, out, rep


def cmd_walls(args):
    fan = load_fan(args.fan)
    alpha = _alpha(fan, args)
    walls = wall_scan(fan, -alpha, args.beta, args.omega0, args.omega1, args.steps)
    if args.series:
        rows = wall_series(fan, -alpha, args.beta, args.omega0, args.omega1, args.steps)
        _write_rows(args.series, ["t", "subject", "W"], rows)
    if args.csv:
        _write_rows(args.csv, ["subject", "lo", "hi"],
                    [(w["subject"], *w["interval"]) for w in walls])
    return ("wall" if walls else "pass"), {"walls": walls}, None


def cmd_blowup(args):
    base = load_fan(args.fan)
    L = -_alpha(base, args)
    ctx = blowup_classes(base, args.omega, L, args.delta, args.t, args.cone_index)
    ph = phase_data(ctx.omega, -L).require_supercritical()
    exc = exceptional_threshold(base.dim, ph.cot_phi, args.t)
    reductions = [proper_transform_reduction(ctx, V, args.beta) for V in proper_orbit_closures(base)]
    out = {"context": ctx, "base_phase": ph, "exceptional": exc, "proper_transforms": reductions}
    return exc.verdict, out, exc


def cmd_schmidt_audit(args):
    base = load_fan(args.fan)
    L = -_alpha(base, args)
    ctx = point_blowup(base, args.omega, L, args.cone_index)
    twisted = []
    for t in args.twist:
        label, _, k1 = t.partition(":")
        twisted.append((base.index_of(label), int(k1 or 1)))
    rep = schmidt_relation_audit(ctx, L, args.k, args.delta, args.alpha2, args.beta, twisted)
    return rep.verdict, rep, rep


def cmd_fibration(args):
    fan = load_fan(args.fan)
    alpha = _alpha(fan, args)
    u = tuple(int(x) for x in args.u.split(","))
    ctx = fibration_context(fan, u, args.omega, args.m, args.kappa)
    angles = fibration_angles(ctx, alpha)
    res = adiabatic_equivalence(ctx, alpha, m_cap=args.m_cap)
    if args.series:
        rows = []
        m = Fraction(1)
        while m <= args.m_cap:
            rows.append((m, fibration_angles(ctx.at(m), alpha)["residual"]))
            m *= 2
        _write_rows(args.series, ["m", "residual"], rows)
    return res["verdict"], {"angles": angles, "adiabatic": res}, res["fiber_report"]


def cmd_unstable_p3(args):
    N, D, ratio = ratio_at(args.beta, args.p, args.r)
    window = instability_window(args.beta, args.p, args.r)
    sup = phi_min_sup(args.beta, args.p)
    out = {"N": N, "D": D, "cot_phi": ratio, "window": window, "supremum": sup}
    if window:
        try:
            out["quotient"] = quotient_class(args.p, args.r, sup)
        except ToricStabError as e:
            out["quotient_error"] = f"{type(e).__name__}: {e}"
    if args.grid:
        Np, Dp = nd_polys(args.beta, args.p)
        end = Fraction(float(sup.feasible_end)).limit_denominator(10 ** 6)
        best = None
        for i in range(1, args.grid):
            s = end * i / args.grid
            if Dp(s) > 0:
                v = Np(s) / Dp(s)
                best = v if best is None or v > best else best
        out["grid_max"] = best
        if sup.cot_phi_min is not None and best is not None:
            out["optimizer_dominates_grid"] = sup.cot_phi_min.compare_rational(best) >= 0
    if args.series:
        Np, Dp = nd_polys(args.beta, args.p)
        steps = args.grid or 100
        end = Fraction(float(sup.feasible_end)).limit_denominator(10 ** 6)
        rows = [(end * i / steps, Np(end * i / steps) / Dp(end * i / steps))
                for i in range(1, steps) if Dp(end * i / steps) > 0]
        _write_rows(args.series, ["s", "ratio"], rows)
    return "pass", out, None


COMMANDS = {"builtins": cmd_builtins, "check-bmsz": cmd_check_bmsz, "dhym": cmd_dhym,
            "destabilize": cmd_destabilize, "pipeline": cmd_pipeline, "walls": cmd_walls,
            "blowup": cmd_blowup, "schmidt-audit": cmd_schmidt_audit,
            "fibration": cmd_fibration, "unstable-p3": cmd_unstable_p3}


def run(argv=None, stdout=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        verdict, payload, table = COMMANDS[args.command](args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 3
    except (ToricStabError, argparse.ArgumentTypeError, ValueError, OSError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 3
    doc = {"header": {"command": args.command, "version": __version__, "argv": argv},
           "report": jsonable(payload)}
    if args.digits:
        doc["report"] = _with_decimals(doc["report"], args.digits)
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if args.csv and table is not None:
        _items_csv(args.csv, table)
    return EXIT.get(verdict, 1)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
