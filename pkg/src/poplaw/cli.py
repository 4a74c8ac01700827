"""Command-line front end.

Commands take JSON problem files (see README for the schemas), print JSON
results on stdout, and write CSV/SVG plot data on request. Exit codes: 0 on
success, 2 for malformed input or violated invariants, 1 when an enumeration
would exceed the resource bound.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from fractions import Fraction

from . import jsonio, svg
from .errors import InvariantError, PoplawError, ResourceLimitError
from .feasibility import check_feasible
from .measures import Belief, DiscreteMeasure, Prior
from .persuasion import (
    PersuasionInstance,
    SenderUtility,
    grid_concavification,
    persuasion_policy,
)
from .polarization import max_polarization, search_max_polarization
from .product import SymmetricProduct, product_feasible, threshold_curve
from .rationals import format_decimal, format_rational, parse_rational
from .structures import expand_scheme, induced_population_law, simulate, synthesize


def _formatter(args):
    digits = getattr(args, "decimal", None)
    if digits is None:
        return format_rational
    return lambda value: format_decimal(Fraction(value), digits)


def _read_json(path: str):
    if path == "-":
        return jsonio.loads(sys.stdin.read())
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return jsonio.loads(fh.read())
    except OSError as exc:
        raise InvariantError(f"cannot read {path}: {exc}") from exc


def _emit(payload) -> None:
    sys.stdout.write(jsonio.dumps(payload))


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _problem_from_json(payload):
    prior = jsonio.prior_from_json(payload.get("mu"))
    law = jsonio.law_from_json(payload.get("law"))
    return law, prior


def _cmd_feasible(args) -> int:
    law, prior = _problem_from_json(_read_json(args.input))
    verdict = check_feasible(law, prior)
    _emit(jsonio.verdict_to_json(verdict, _formatter(args)))
    return 0


def _cmd_synthesize(args) -> int:
    law, prior = _problem_from_json(_read_json(args.input))
    verdict = check_feasible(law, prior)
    fmt = _formatter(args)
    out = jsonio.verdict_to_json(verdict, fmt)
    if verdict.feasible:
        scheme = synthesize(law, prior, verdict.decomposition)
        out["scheme"] = jsonio.scheme_to_json(scheme, fmt)
    _emit(out)
    return 0


def _cmd_oracle(args) -> int:
    structure = jsonio.structure_from_json(_read_json(args.input))
    law = induced_population_law(structure)
    _emit(jsonio.law_to_json(law, _formatter(args)))
    return 0


def _scheme_from_input(payload):
    if "state_laws" in payload:
        return jsonio.scheme_from_json(payload)
    law, prior = _problem_from_json(payload)
    verdict = check_feasible(law, prior)
    if not verdict.feasible:
        raise InvariantError("cannot simulate an infeasible law")
    return synthesize(law, prior, verdict.decomposition)


def _cmd_simulate(args) -> int:
    scheme = _scheme_from_input(_read_json(args.input))
    estimate = simulate(scheme, args.samples, args.seed, shards=args.shards)
    _emit(jsonio.law_to_json(estimate, _formatter(args)))
    return 0


def _cmd_polarize(args) -> int:
    if args.states != 2:
        raise InvariantError("only binary-state polarization is exposed on the CLI")
    prior = Prior.binary(parse_rational(args.mu))
    fmt = _formatter(args)
    report = max_polarization(args.n, prior)
    out = {
        "n": args.n,
        "mu": fmt(parse_rational(args.mu)),
        "value": fmt(report.value),
        "lower_bound": fmt(report.lower_bound),
        "upper_bound": fmt(report.upper_bound),
        "structure": jsonio.structure_to_json(report.structure, fmt),
    }
    if args.search_denominator:
        best, structure = search_max_polarization(
            args.n, prior, denominator=args.search_denominator
        )
        out["grid_search"] = {
            "denominator": args.search_denominator,
            "best": fmt(best),
            "structure": jsonio.structure_to_json(structure, fmt),
        }
    _emit(out)
    if args.csv:
        rows = []
        for n in range(1, (args.n_max or args.n) + 1):
            r = max_polarization(n, prior)
            rows.append((n, fmt(r.lower_bound), fmt(r.upper_bound), fmt(r.value)))
        _write_text(args.csv, _csv_text(("n", "lower", "upper", "achieved"), rows))
    return 0


def _cmd_product_check(args) -> int:
    prior = Prior.binary(parse_rational(args.mu))
    if args.q is not None:
        scalar = jsonio.scalar_measure_from_json(jsonio.loads(args.q))
        marginal = DiscreteMeasure((Belief.binary(v), w) for v, w in scalar.atoms)
    else:
        if args.a is None or args.b is None:
            raise InvariantError("provide either --q or both --a and --b")
        a, b = parse_rational(args.a), parse_rational(args.b)
        mu = parse_rational(args.mu)
        if not 0 <= a < mu < b <= 1:
            raise InvariantError(f"need a < mu < b, got a={a}, mu={mu}, b={b}")
        high = (mu - a) / (b - a)
        marginal = DiscreteMeasure(
            [(Belief.binary(a), 1 - high), (Belief.binary(b), high)]
        )
    verdict = product_feasible(SymmetricProduct(marginal, args.n), prior)
    _emit(jsonio.verdict_to_json(verdict, _formatter(args)))
    return 0


def _cmd_threshold_curve(args) -> int:
    rows = threshold_curve(args.n_max)
    fmt = _formatter(args)
    table = [(n, fmt(t)) for n, t in rows]
    text = _csv_text(("n", "threshold"), table)
    _write_text(args.csv, text)
    if args.svg:
        _write_text(
            args.svg,
            svg.bar_chart(rows, title="feasible low atoms by population size"),
        )
    return 0


def _parse_utility(expr: str, n: int) -> SenderUtility:
    if expr == "linear":
        return SenderUtility.linear(n)
    if expr.startswith("threshold:"):
        return SenderUtility.step(n, parse_rational(expr.split(":", 1)[1]))
    values = jsonio.loads(expr)
    if not isinstance(values, list):
        raise InvariantError("--u must be 'linear', 'threshold:CUT' or a JSON array")
    if len(values) != n + 1:
        raise InvariantError(f"--u needs n + 1 = {n + 1} grid values, got {len(values)}")
    return SenderUtility(values)


def _cmd_persuade(args) -> int:
    utility = _parse_utility(args.u, args.n)
    instance = PersuasionInstance(
        args.n, parse_rational(args.mu), parse_rational(args.tau), utility
    )
    solution = persuasion_policy(instance)
    fmt = _formatter(args)
    _emit(
        {
            "value": fmt(solution.value),
            "adoption_law": jsonio.scalar_measure_to_json(solution.adoption_law, fmt),
            "scheme": jsonio.scheme_to_json(solution.scheme, fmt),
        }
    )
    if args.csv or args.svg:
        grid = [Fraction(i, args.n) for i in range(args.n + 1)]
        cav = [grid_concavification(utility, x)[0] for x in grid]
        if args.csv:
            rows = [
                (fmt(x), fmt(u), fmt(c))
                for x, u, c in zip(grid, utility.values, cav)
            ]
            _write_text(args.csv, _csv_text(("grid", "u", "cav"), rows))
        if args.svg:
            _write_text(
                args.svg,
                svg.point_line_chart(
                    list(zip(grid, utility.values)),
                    list(zip(grid, cav)),
                    title="utility and its grid concavification",
                ),
            )
    return 0


def _cmd_expand(args) -> int:
    scheme = jsonio.scheme_from_json(_read_json(args.input))
    structure = expand_scheme(scheme)
    _emit(jsonio.structure_to_json(structure, _formatter(args)))
    return 0


SCHEMA_NOTES = """\
input schemas (rationals: ints, "p/q" strings, or decimal literals, all exact):
  belief     array of state probabilities, e.g. ["1/4", "3/4"]
  empirical  {"n": N, "counts": [{"belief": ..., "count": K}, ...]}
  law        {"n": N, "atoms": [{"empirical": ..., "weight": W}, ...]}
  problem    {"mu": belief, "law": law}            (feasible, synthesize, simulate)
  scheme     {"n": N, "mu": belief, "state_laws": [{"state": S, "law": law}, ...]}
  structure  {"n": N, "m": M, "mu": belief, "signal_sets": [[label, ...], ...],
              "kernel": [{"state": S, "profiles": [{"signals": [...], "prob": P}]}]}
environment: POPLAW_MAX_PROFILES caps enumerated profiles (default 1000000).
exit codes: 0 ok, 1 resource bound exceeded, 2 invalid input.
"""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poplaw",
        description="Feasibility, synthesis and design of population posterior-belief laws.",
        epilog=SCHEMA_NOTES,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_decimal(p):
        p.add_argument(
            "--decimal",
            type=int,
            default=None,
            metavar="D",
            help="render rationals as D-digit decimals (display only)",
        )

    p = sub.add_parser("feasible", help="decide feasibility of {mu, law}")
    p.add_argument("input", help="problem JSON path or - for stdin")
    add_decimal(p)
    p.set_defaults(func=_cmd_feasible)

    p = sub.add_parser("synthesize", help="decide feasibility and emit an implementing scheme")
    p.add_argument("input")
    add_decimal(p)
    p.set_defaults(func=_cmd_synthesize)

    p = sub.add_parser("oracle", help="enumerate the law induced by an information structure")
    p.add_argument("input")
    add_decimal(p)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("expand", help="expand a scheme into an explicit information structure")
    p.add_argument("input")
    add_decimal(p)
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("simulate", help="Monte-Carlo estimate of a scheme's law")
    p.add_argument("input", help="scheme JSON, or a {mu, law} problem to synthesize first")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--shards", type=int, default=1)
    add_decimal(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("polarize", help="maximal polarization report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", required=True, help="prior probability of state 1")
    p.add_argument("--states", type=int, default=2)
    p.add_argument("--search-denominator", type=int, default=None,
                   help="also run the exhaustive kernel grid search at this denominator")
    p.add_argument("--csv", default=None, help="write (n, lower, upper, achieved) rows")
    p.add_argument("--n-max", type=int, default=None, help="row range for --csv")
    add_decimal(p)
    p.set_defaults(func=_cmd_polarize)

    p = sub.add_parser("product-check", help="feasibility of a symmetric product law")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--q", default=None, help="marginal as JSON [{value, weight}, ...]")
    p.add_argument("--a", default=None, help="low belief of a binary marginal")
    p.add_argument("--b", default=None, help="high belief of a binary marginal")
    add_decimal(p)
    p.set_defaults(func=_cmd_product_check)

    p = sub.add_parser("product-threshold-curve", help="feasibility thresholds by population size")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--csv", default="-", help="output path or - for stdout")
    p.add_argument("--svg", default=None)
    add_decimal(p)
    p.set_defaults(func=_cmd_threshold_curve)

    p = sub.add_parser("persuade", help="optimal private persuasion of a homogeneous population")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--tau", required=True)
    p.add_argument("--u", required=True, help="'linear', 'threshold:CUT', or JSON array of n+1 values")
    p.add_argument("--csv", default=None, help="write (grid, u, cav) rows")
    p.add_argument("--svg", default=None)
    add_decimal(p)
    p.set_defaults(func=_cmd_persuade)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"poplaw: resource limit: {exc}", file=sys.stderr)
        return 1
    except (InvariantError, PoplawError) as exc:
        print(f"poplaw: invalid input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
