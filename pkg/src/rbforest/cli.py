"""Command-line front end.

Exit codes: 0 on success, 1 when the law suite reports a failure, 2 on
usage, parse, or validation errors.  All diagnostics go to standard error;
standard output is deterministic for identical invocations.
"""
from __future__ import annotations

import argparse
import os
import sys

from .algebra import graft, multiply
from .coalgebra import (
    closure,
    counit,
    coproduct,
    enumerate_subforests,
    evaluate_marked_word,
    marking_components,
    quotient,
)
from .forests import Letter, enumerate_forests, make_alphabet
from .hopf import antipode, run_axiom_suite
from .models import LaurentModel, ModelError, ScalarModel, evaluate_hom
from .reporting import render_text, write_csv, write_figures, write_json
from .syntax import (
    ParseError,
    parse_element,
    parse_forest,
    parse_laurent_series,
    parse_rational,
    render,
)


class CliError(ValueError):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rbforest",
        description=(
            "Exact computations in the free Rota-Baxter algebra on angularly "
            "decorated rooted forests, with a machine-checked law suite."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_alphabet(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--alphabet",
            help="comma-separated decoration letters, e.g. 'a,b' "
            "(falls back to RBFOREST_ALPHABET)",
        )

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--format", choices=("plain", "latex"), default="plain", dest="fmt"
        )

    p = sub.add_parser("mul", help="product of two elements")
    p.add_argument("left")
    p.add_argument("right")
    add_alphabet(p)
    add_format(p)

    p = sub.add_parser("bplus", help="apply the grafting operator")
    p.add_argument("element")
    add_alphabet(p)
    add_format(p)

    p = sub.add_parser("coproduct", help="angular coproduct of an element")
    p.add_argument("element")
    add_alphabet(p)
    add_format(p)

    p = sub.add_parser("counit", help="counit of an element")
    p.add_argument("element")
    add_alphabet(p)

    p = sub.add_parser("antipode", help="antipode of an element")
    p.add_argument("element")
    add_alphabet(p)
    add_format(p)

    p = sub.add_parser(
        "subforests", help="markings, closures, and quotients of a forest"
    )
    p.add_argument("forest")
    add_alphabet(p)

    p = sub.add_parser("enumerate", help="all forests up to a degree")
    p.add_argument("--max-degree", type=int, required=True)
    add_alphabet(p)

    p = sub.add_parser("eval", help="evaluate an element in a concrete model")
    p.add_argument("element")
    p.add_argument("--model", choices=("scalar", "laurent"), required=True)
    p.add_argument("--weight", help="rational weight, e.g. -1 or 3/2")
    p.add_argument(
        "--assign",
        action="append",
        default=[],
        metavar="LETTER=EXPR",
        help="value of a letter (repeatable)",
    )
    add_alphabet(p)

    p = sub.add_parser("check", help="run the axiom verification suite")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--samples", type=int, help="seeded random corpus size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", dest="json_path", help="write the JSON report here")
    p.add_argument("--csv", dest="csv_path", help="write the CSV report here")
    p.add_argument(
        "--figures", dest="figures_dir", help="render report figures into this directory"
    )
    add_alphabet(p)

    return parser


def _alphabet_from(args) -> tuple[Letter, ...]:
    declaration = args.alphabet
    if declaration is None:
        declaration = os.environ.get("RBFOREST_ALPHABET")
    if declaration is None:
        raise CliError(
            "no alphabet declared: pass --alphabet or set RBFOREST_ALPHABET"
        )
    return make_alphabet(declaration)


def _cmd_mul(args) -> int:
    alphabet = _alphabet_from(args)
    result = multiply(
        parse_element(args.left, alphabet), parse_element(args.right, alphabet)
    )
    print(render(result, args.fmt))
    return 0


def _cmd_bplus(args) -> int:
    alphabet = _alphabet_from(args)
    print(render(graft(parse_element(args.element, alphabet)), args.fmt))
    return 0


def _cmd_coproduct(args) -> int:
    alphabet = _alphabet_from(args)
    print(render(coproduct(parse_element(args.element, alphabet)), args.fmt))
    return 0


def _cmd_counit(args) -> int:
    alphabet = _alphabet_from(args)
    print(counit(parse_element(args.element, alphabet)))
    return 0


def _cmd_antipode(args) -> int:
    alphabet = _alphabet_from(args)
    print(render(antipode(parse_element(args.element, alphabet)), args.fmt))
    return 0


def _cmd_subforests(args) -> int:
    alphabet = _alphabet_from(args)
    forest = parse_forest(args.forest, alphabet)
    rows = [("#", "subforest", "closure", "quotient", "reduced")]
    for index, marking in enumerate(enumerate_subforests(forest), start=1):
        components = marking_components(forest, marking)
        label = " ".join(str(item) for _, item in components) or "(empty)"
        quot = quotient(forest, marking)
        rows.append(
            (
                str(index),
                label,
                str(closure(forest, marking)),
                str(quot),
                str(evaluate_marked_word(quot)),
            )
        )
    widths = [max(len(row[col]) for row in rows) for col in range(5)]
    for row in rows:
        print("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())
    return 0


def _cmd_enumerate(args) -> int:
    alphabet = _alphabet_from(args)
    for forest in enumerate_forests(args.max_degree, alphabet):
        print(forest)
    return 0


def _cmd_eval(args) -> int:
    alphabet = _alphabet_from(args)
    if args.model == "scalar":
        if args.weight is None:
            raise CliError("the scalar model needs --weight")
        model = ScalarModel(parse_rational(args.weight))
        parse_value = parse_rational
    else:
        model = LaurentModel()
        if args.weight is not None and parse_rational(args.weight) != model.weight:
            raise CliError(
                f"weight mismatch: the Laurent model has weight -1, got {args.weight}"
            )
        parse_value = parse_laurent_series
    declared = {letter.symbol: letter for letter in alphabet}
    assignment = {}
    for item in args.assign:
        symbol, _, expr = item.partition("=")
        symbol = symbol.strip()
        if not expr:
            raise CliError(f"bad --assign {item!r}: expected LETTER=EXPR")
        if symbol not in declared:
            raise CliError(f"assigned letter {symbol!r} is not in the alphabet")
        assignment[declared[symbol]] = parse_value(expr)
    element = parse_element(args.element, alphabet)
    print(evaluate_hom(element, assignment, model))
    return 0


def _cmd_check(args) -> int:
    alphabet = _alphabet_from(args)
    report = run_axiom_suite(
        args.max_degree, alphabet, samples=args.samples, seed=args.seed
    )
    print(render_text(report))
    if args.json_path:
        write_json(report, args.json_path)
        print(f"wrote JSON report to {args.json_path}", file=sys.stderr)
    if args.csv_path:
        write_csv(report, args.csv_path)
        print(f"wrote CSV report to {args.csv_path}", file=sys.stderr)
    if args.figures_dir:
        for path in write_figures(report, args.figures_dir):
            print(f"wrote figure {path}", file=sys.stderr)
    return 0 if report.all_passed else 1


_COMMANDS = {
    "mul": _cmd_mul,
    "bplus": _cmd_bplus,
    "coproduct": _cmd_coproduct,
    "counit": _cmd_counit,
    "antipode": _cmd_antipode,
    "subforests": _cmd_subforests,
    "enumerate": _cmd_enumerate,
    "eval": _cmd_eval,
    "check": _cmd_check,
}


def dispatch(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:  # argparse reports usage errors itself
        return int(exit_.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, CliError, ModelError, ValueError) as error:
        print(f"error: {error}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
