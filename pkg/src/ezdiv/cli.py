"""Command-line entry point: ``ezdiv <command> ...`` (see ``ezdiv -h``)."""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .algebra import exact_zero_divisor_partner, is_exact_pair, quotient_by_element
from .errors import EzdivError
from .formats import fixture_path, format_module, parse_module, parse_ring
from .homology import PairSetting, ext_dims, tor_dims
from .lifting import Lifted, lift_module
from .modules import ModuleRep, realize, residue_field
from .report import Report, emit_report, overall
from .resolve import check_complex, complexity_estimate, detect_periodicity, minimal_resolution
from .scenarios import SUITES, SuiteConfig, run_suite


def _ring(args):
    return parse_ring(fixture_path(args.ring), args.prime)


def _module(arg: str, ring) -> tuple[str, ModuleRep]:
    """A module file, or ``k`` for the residue field."""
    if arg == "k":
        return "k", residue_field(ring)
    path = fixture_path(arg)
    return path.stem, realize(parse_module(path, ring))


def _range(text: str) -> tuple[int, int]:
    try:
        a, b = (int(t) for t in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected <a>..<b>, got {text!r}") from None
    if not 0 <= a <= b:
        raise argparse.ArgumentTypeError("range needs 0 <= a <= b")
    return a, b


def _info(rep: Report, key, value):
    rep.add(key, "-", value, True)


# -- commands ----------------------------------------------------------------


def cmd_ring_info(args) -> list:
    a = _ring(args)
    rep = Report(f"ring-info {args.ring}")
    _info(rep, "field", f"F_{a.p}")
    _info(rep, "dim", a.dim)
    _info(rep, "basis", " ".join(a.format(a.basis_element(i).coords) for i in range(a.dim)))
    _info(rep, "nilpotency index of m", a.nilpotency_index)
    _info(rep, "embedding dimension", a.max_ideal.dim - a.max_ideal_squared.dim)
    _info(rep, "graded", a.is_graded)
    return [rep]


def cmd_ezd_check(args) -> list:
    a = _ring(args)
    if args.scan:
        rep = Report(f"ezd-scan {args.ring}")
        found = 0
        for i in a.max_ideal_indices:
            x = a.basis_element(i)
            if not x.is_minimal_generator:
                continue
            try:
                y = exact_zero_divisor_partner(x)
                found += 1
                rep.add(f"x={x}", "-", f"partner {y}", True)
            except EzdivError as e:
                rep.add(f"x={x}", "-", f"{type(e).__name__}", True)
        rep.notes.append(f"{found} basis direction(s) of m/m^2 are exact zero-divisors")
        if not found:
            rep.hypothesis = "failed: no exact zero-divisor among the basis directions"
        return [rep]
    x = a.element(args.element)
    rep = Report(f"ezd-check {args.ring} x={x}")
    try:
        y = exact_zero_divisor_partner(x)
    except EzdivError as e:
        rep.hypothesis = f"failed: {type(e).__name__}: {e}"
        return [rep]
    rep.add("partner", "-", y, True)
    rep.add("exact pair", True, is_exact_pair(x, y))
    return [rep]


def cmd_resolve(args) -> list:
    s = _ring(args)
    a = s
    if args.over_quotient:
        a, _ = quotient_by_element(s, s.element(args.over_quotient))
    name, m = ("k", residue_field(a)) if args.residue_field else _module(args.module, a)
    f = minimal_resolution(m, args.n)
    rep = Report(f"resolve {args.ring} M={name}" + (f" over S/({args.over_quotient})" if args.over_quotient else ""))
    for i, r in enumerate(f.ranks):
        _info(rep, f"beta_{i}", r)
    q = detect_periodicity(f)
    _info(rep, "period", q if q is not None else "none")
    try:
        _info(rep, "growth", complexity_estimate(list(f.ranks)))
    except EzdivError as e:
        _info(rep, "growth", f"n/a ({e})")
    chk = check_complex(f)
    rep.add("d d = 0", True, chk.squares_zero)
    rep.add("minimal", True, chk.minimal)
    rep.add("exact", True, chk.exact)
    for u in chk.unchecked:
        rep.notes.append(f"not checked: {u}")
    return [rep]


def cmd_homology(args) -> list:
    s = _ring(args)
    setting = PairSetting.build(s, args.x)
    m_name, m = _module(args.m, setting.R)
    n_name, n = _module(args.n, setting.R)
    fn = tor_dims if args.command == "tor" else ext_dims
    label = "Tor_{}" if args.command == "tor" else "Ext^{}"
    out = []
    for ring, mm, nn in (("S", setting.over_s(m), setting.over_s(n)), ("R", m, n)):
        prof = fn(mm, nn, args.range, ring=ring, names=(m_name, n_name))
        rep = Report(f"{args.command} over {ring} M={m_name} N={n_name} x={setting.x}")
        for i in prof.indices():
            _info(rep, label.format(i), prof[i])
        out.append(rep)
    return out


def cmd_lift(args) -> list:
    s = _ring(args)
    setting = PairSetting.build(s, args.x)
    name, m = _module(args.module, setting.R)
    res = lift_module(m, setting, args.n)
    rep = Report(f"lift {args.ring} M={name} x={setting.x}")
    if isinstance(res, Lifted):
        _info(rep, "status", "lifted")
        _info(rep, "certificate", res.certificate)
        rep.rows += res.report.rows
        text = format_module(res.presentation)
        rep.notes.append("lifted module:\n" + text.rstrip())
        vectors = [ln for ln in text.splitlines() if ln.startswith("[")]
        _info(rep, "relations of M'", "; ".join(vectors) or "none")
    else:
        _info(rep, "status", "obstructed")
        _info(rep, "dim Ext^2(M,M)", res.obstruction.ext_dim)
        _info(rep, "class coordinates", " ".join(map(str, res.obstruction.coordinates)))
    return [rep]


def cmd_verify(args) -> list:
    s = _ring(args)
    setting = PairSetting.build(s, args.x)
    cfg = SuiteConfig(seed=args.seed, random=args.random)
    return run_suite(setting, args.suite, cfg)


COMMANDS = {
    "ring-info": cmd_ring_info,
    "ezd-check": cmd_ezd_check,
    "resolve": cmd_resolve,
    "tor": cmd_homology,
    "ext": cmd_homology,
    "lift": cmd_lift,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--prime", type=int, default=argparse.SUPPRESS,
                        help="override the prime in the ring file")

    parser = argparse.ArgumentParser(prog="ezdiv", parents=[common],
                                     description="Exact zero-divisors, resolutions and lifting over Artinian local rings.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ring-info", parents=[common], help="dimension, basis, nilpotency index")
    p.add_argument("ring")

    p = sub.add_parser("ezd-check", parents=[common], help="find the exact zero-divisor partner")
    p.add_argument("ring")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--element")
    g.add_argument("--scan", action="store_true", help="try every basis direction of m/m^2")

    p = sub.add_parser("resolve", parents=[common], help="minimal free resolution and Betti numbers")
    p.add_argument("ring")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--module")
    g.add_argument("--residue-field", action="store_true")
    p.add_argument("-n", type=int, default=10)
    p.add_argument("--over-quotient", metavar="POLY", help="resolve over S/(POLY) instead")

    for name in ("tor", "ext"):
        p = sub.add_parser(name, parents=[common], help=f"{name.capitalize()} profiles over S and S/(x)")
        p.add_argument("ring")
        p.add_argument("--x", required=True)
        p.add_argument("--m", required=True, help="module file over S/(x), or k")
        p.add_argument("--n", required=True, help="module file over S/(x), or k")
        p.add_argument("--range", type=_range, default=(0, 6))

    p = sub.add_parser("lift", parents=[common], help="lift a module from S/(x) to S for a pair (x, x)")
    p.add_argument("ring")
    p.add_argument("--x", required=True)
    p.add_argument("--module", required=True, help="module file over S/(x), or k")
    p.add_argument("-n", type=int, default=8)

    p = sub.add_parser("verify", parents=[common], help="run verification scenarios")
    p.add_argument("ring")
    p.add_argument("--x", required=True)
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random", type=int, default=20)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.format = getattr(args, "format", "text")
    args.prime = getattr(args, "prime", None)
    try:
        reports = COMMANDS[args.command](args)
    except (EzdivError, FileNotFoundError, ValueError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(emit_report(reports, args.format))
    return 0 if overall(reports) else 1


if __name__ == "__main__":
    sys.exit(main())
