"""``knotshift`` command line.

Exit status: 0 on success, 1 for usage or input errors, 2 when a computed
object violates a structural theorem (or a self-check fails).
"""

from __future__ import annotations

import argparse
import sys
from typing import Iterator, Sequence

from . import __version__
from .coverings import classify_coverings
from .errors import InputError, KnotShiftError, RepeatedPrime, TheoremViolation
from .oracle import brute_force_orbits, brute_force_states, companion_order_r1, successor_map
from .report import analyze_doc, combined_doc, coverings_doc, emit, render_table, tower_doc
from .shift_system import build_system, knot_pair, knot_system, load_knot, verify_decomposition
from .spectra import AbelianGroupSpec, combine_abelian, order_of_transfer, period_set, period_tower
from .zpr import RingParams


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="knotshift", description="Shift dynamics on representations of a knot commutator subgroup.")
    parser.add_argument("--version", action="version", version=f"knotshift {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, default_format):
        sp.add_argument("--knot", required=True, help="built-in name or path to a .wirt file")
        sp.add_argument("--path", choices=["auto", "wirtinger", "window"], default="auto",
                        help="matrix pair: Wirtinger presentation or two-bridge window (default: auto)")
        sp.add_argument("--format", choices=["json", "table"], default=default_format)
        sp.add_argument("--order-cap", type=_positive, default=None,
                        help="iteration cap for the order search mod p (env KNOTSHIFT_ORDER_CAP)")

    sp = sub.add_parser("analyze", help="size, rank and periods of Hom(K, Z/p^r)")
    common(sp, "json")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r", type=_positive, default=1)

    sp = sub.add_parser("periods", help="lcm tower over Z/p^r, or combined periods for a finite abelian group")
    common(sp, "table")
    sp.add_argument("--p", type=int)
    sp.add_argument("--rmax", type=_positive, default=3)
    sp.add_argument("--sigma", help="cyclic factor orders, e.g. 4,3 for Z/4 + Z/3")

    sp = sub.add_parser("coverings", help="count regular coverings of the d-fold cyclic cover with deck group sigma")
    common(sp, "json")
    sp.add_argument("--sigma", required=True)
    sp.add_argument("--d", type=_positive, required=True)
    sp.add_argument("--list-cap", type=int, default=10**4, help="list representatives when |Fix| is at most this")

    sp = sub.add_parser("selfcheck", help="compare against brute-force oracles on small instances")
    sp.add_argument("--knot", action="append", help="restrict to these knots (repeatable)")
    return parser


def _write(doc: dict, fmt: str, out):
    out.write(emit(doc) if fmt == "json" else render_table(doc))


def _analyze(args, out):
    knot = load_knot(args.knot)
    system = knot_system(knot, args.p, args.r, args.path)
    _write(analyze_doc(knot, system, period_set(system.T, args.order_cap)), args.format, out)


def _combined(knot, sigma, args):
    systems = [knot_system(knot, p, r, args.path) for p, r in sigma.factors]
    parts = [period_set(s.T, args.order_cap) for s in systems]
    return systems, parts, combine_abelian(sigma, parts)


def _periods(args, out):
    knot = load_knot(args.knot)
    if args.sigma is not None:
        if args.p is not None:
            raise UsageError("give either --p or --sigma, not both")
        sigma = AbelianGroupSpec.parse(args.sigma)
        systems, parts, combined = _combined(knot, sigma, args)
        doc = combined_doc(knot, sigma, [s.n for s in systems], parts, combined)
    else:
        if args.p is None:
            raise UsageError("periods needs --p or --sigma")
        p = args.p
        RingParams(p, 1)
        tower = period_tower(lambda r: knot_system(knot, p, r, args.path), p, args.rmax, args.order_cap)
        doc = tower_doc(knot, knot_system(knot, p, 1, args.path).n, tower)
    _write(doc, args.format, out)


def _coverings(args, out):
    knot = load_knot(args.knot)
    sigma = AbelianGroupSpec.parse(args.sigma)
    if sigma.has_repeated_prime():
        raise RepeatedPrime(f"coverings needs pairwise distinct primes; {sigma} repeats one")
    report = classify_coverings(knot, sigma, args.d, args.path, args.list_cap)
    _, _, combined = _combined(knot, sigma, args)
    _write(coverings_doc(knot, report, combined), args.format, out)


SELFCHECK_KNOTS = ("trefoil", "figure8", "5_2", "7_4")


def selfcheck_lines(knots: Sequence[str] = SELFCHECK_KNOTS) -> Iterator[tuple[bool, str]]:
    for name in knots:
        knot = load_knot(name)
        for p in (2, 3):
            for r in (1, 2):
                ring = RingParams(p, r)
                pair = knot_pair(knot, p)
                label = f"{knot.name} p={p} r={r}"
                dec = verify_decomposition(pair, ring)
                V, Af, Bb = brute_force_states(pair, ring)
                same = (
                    set(dec.V.elements()) == V.states
                    and set(dec.Afwd.elements()) == Af.states
                    and set(dec.Bbwd.elements()) == Bb.states
                )
                yield same, f"V/A/B vs brute force    {label}"
                spectrum = period_set(build_system(pair, ring).T)
                orbits = brute_force_orbits(successor_map(pair, ring, V))
                yield orbits == dict(spectrum.counts), f"periods vs orbit walk   {label}"
        for p in (2, 3, 5, 7, 11):
            d1 = order_of_transfer(knot_system(knot, p, 1, "window").T)
            yield d1 == companion_order_r1(knot.delta, p), f"companion order         {knot.name} p={p}"


def _selfcheck(args, out):
    ok = True
    for passed, label in selfcheck_lines(args.knot or SELFCHECK_KNOTS):
        ok &= passed
        out.write(f"{'PASS' if passed else 'FAIL'}  {label}\n")
    out.write("all checks passed\n" if ok else "SELF-CHECK FAILED\n")
    return 0 if ok else 2


COMMANDS = {"analyze": _analyze, "periods": _periods, "coverings": _coverings, "selfcheck": _selfcheck}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out) or 0
    except TheoremViolation as exc:
        err.write(f"knotshift: theorem violation: {exc}\n")
        return 2
    except KnotShiftError as exc:
        err.write(f"knotshift: {exc}\n")
        return 1
    except RuntimeError as exc:
        err.write(f"knotshift: internal error: {exc}\n")
        return 2


def main():
    sys.exit(run())
