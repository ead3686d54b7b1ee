"""Command-line front end over the interchange format.

Exit codes: 0 on success, 1 on input or validation errors (message on
standard error), 2 when a resource cap is exceeded.  Reports are JSON by
default and are byte-identical across runs up to the trailing timing field.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Callable, Optional

from .automaton import (
    Automaton,
    automaton_to_json,
    parallel_composition,
    parse_automaton,
    synchronized_product,
)
from .classes import is_deterministic, is_hierarchical, is_sharp_acyclic
from .errors import CapExceeded, ValidationError
from .leaks import decide_leaktight, extended_markov_monoid, find_leak_witness
from .limitword import LimitWord
from .monoid import DEFAULT_CAP, decide_value1, markov_monoid
from .oracle import (
    brute_force_value,
    check_consistency,
    check_lower_bound,
    evaluate_family_at,
    parse_family,
)
from .reduction import (
    probabilistic_row_count,
    reduce_basic,
    reduce_full,
    third_simulation,
)

__all__ = ["main"]

DEFAULT_SEED = 0

SUBCOMMANDS = (
    "validate",
    "value1",
    "leaktight",
    "monoid",
    "extended-monoid",
    "sharp-height",
    "classify",
    "compose",
    "reduce",
    "estimate-value",
    "reify-check",
)


class _Parser(argparse.ArgumentParser):
    """Raise instead of exiting so bad arguments map to exit code 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise ValidationError(message)


def _read_automaton(path: str) -> Automaton:
    if path == "-":
        return parse_automaton(sys.stdin.read())
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    return parse_automaton(text)


def _digest(automaton: Automaton) -> dict:
    return {
        "states": len(automaton.states),
        "letters": len(automaton.alphabet),
        "p_min": str(automaton.min_transition_probability),
    }


def _word_lines(word: LimitWord, automaton: Automaton) -> list[str]:
    return word.render(automaton.states).split("\n")


def _fraction_fields(value: Fraction) -> dict:
    return {"value": str(value), "value_approx": float(value)}


def _bindings(args: argparse.Namespace) -> dict[str, int]:
    bindings: dict[str, int] = {}
    for item in args.bind or []:
        name, equals, number = item.partition("=")
        if not equals or not name:
            raise ValidationError(f"--bind expects NAME=NAT, got {item!r}")
        try:
            value = int(number)
        except ValueError:
            raise ValidationError(f"--bind {name}: {number!r} is not a natural") from None
        if value < 0:
            raise ValidationError(f"--bind {name}: must be nonnegative")
        bindings[name] = value
    return bindings


# ---------------------------------------------------------------------------
# Subcommand bodies


def _run_validate(args: argparse.Namespace) -> dict:
    automaton = _read_automaton(args.input)
    return {"digest": _digest(automaton), "valid": True}


def _run_value1(args: argparse.Namespace) -> dict:
    automaton = _read_automaton(args.input)
    extended = extended_markov_monoid(automaton, args.cap)
    leak = find_leak_witness(extended)
    report = decide_value1(automaton, args.cap, extended=extended)
    leaktight = "yes" if leak is None else "no"
    body: dict = {"digest": _digest(automaton)}
    if report.value1:
        body["value1"] = "yes"
        body["witness"] = report.certificate.witness.render()
    else:
        body["value1"] = "no-with-bound" if leak is None else "no-unreliable"
        bound = report.certificate.bound
        body["witness"] = None
        body["p_min"] = str(bound.p_min)
        body["monoid_size"] = bound.monoid_size
        body["bound_height"] = bound.height
        body["bound"] = bound.formula
        body["note"] = report.certificate.note
    body["leaktight"] = leaktight
    return body


def _run_leaktight(args: argparse.Namespace) -> dict:
    automaton = _read_automaton(args.input)
    report = decide_leaktight(automaton, args.cap)
    body: dict = {"digest": _digest(automaton)}
    body["leaktight"] = "yes" if report.leaktight else "no"
    if report.witness is None:
        body["witness"] = None
    else:
        witness = report.witness
        body["witness"] = {
            "r": automaton.states[witness.r],
            "q": automaton.states[witness.q],
            "expression": witness.expression.render(),
            "word": _word_lines(witness.element.word, automaton),
            "support": _word_lines(witness.element.support, automaton),
        }
    body["size"] = len(report.closure.elements)
    return body


def _run_monoid(args: argparse.Namespace) -> dict:
    automaton = _read_automaton(args.input)
    closure = markov_monoid(automaton, args.cap)
    return {
        "digest": _digest(automaton),
        "size": len(closure.elements),
        "max_height": closure.max_height,
        "elements": [
            {
                "expression": closure.provenance[element].render(),
                "height": closure.heights[element],
                "word": _word_lines(element, automaton),
            }
            for element in closure.elements
        ],
    }


def _run_extended_monoid(args: argparse.Namespace) -> dict:
    automaton = _read_automaton(args.input)
    closure = extended_markov_monoid(automaton, args.cap)
    return {
        "digest": _digest(automaton),
        "size": len(closure.elements),
        "max_height": max(closure.heights.values()),
        "elements": [
            {
                "expression": closure.provenance[element].render(),
                "height": closure.heights[element],
                "word": _word_lines(element.word, automaton),
                "support": _word_lines(element.support, automaton),
            }
            for element in closure.elements
        ],
    }


def _run_sharp_height(args: argparse.Namespace) -> dict:
    automaton = _read_automaton(args.input)
    closure = markov_monoid(automaton, args.cap)
    return {
        "digest": _digest(automaton),
        "sharp_height": closure.max_height,
        "size": len(closure.elements),
    }


def _run_classify(args: argparse.Namespace) -> dict:
    automaton = _read_automaton(args.input)
    ranks = is_hierarchical(automaton)
    leak_report = decide_leaktight(automaton, args.cap)
    return {
        "digest": _digest(automaton),
        "deterministic": is_deterministic(automaton),
        "hierarchical": ranks is not None,
        "ranks": ranks,
        "sharp_acyclic": is_sharp_acyclic(automaton),
        "leaktight": "yes" if leak_report.leaktight else "no",
    }


def _run_compose(args: argparse.Namespace) -> dict:
    left = _read_automaton(args.left)
    right = _read_automaton(args.right)
    if args.mode == "parallel":
        composed = parallel_composition(left, right)
    else:
        composed = synchronized_product(left, right)
    return {
        "mode": args.mode,
        "digest": _digest(composed),
        "automaton": automaton_to_json(composed),
    }


def _run_reduce(args: argparse.Namespace) -> dict:
    automaton = _read_automaton(args.input)
    if args.mode == "third":
        reduced = third_simulation(automaton)
        return {
            "mode": "third",
            "digest": _digest(reduced),
            "probabilistic_rows": probabilistic_row_count(reduced),
            "automaton": automaton_to_json(reduced),
        }
    output = reduce_basic(automaton) if args.mode == "basic" else reduce_full(automaton)
    return {
        "mode": args.mode,
        "digest": _digest(output.automaton),
        "probabilistic_rows": probabilistic_row_count(output.automaton),
        "letter_map": dict(output.letter_map),
        "hat": {letter: list(block) for letter, block in output.hat.items()},
        "automaton": automaton_to_json(output.automaton),
    }


def _run_estimate_value(args: argparse.Namespace) -> dict:
    automaton = _read_automaton(args.input)
    body: dict = {"digest": _digest(automaton)}
    if args.template is not None:
        family = parse_family(args.template)
        bindings = _bindings(args)
        value = evaluate_family_at(automaton, family, bindings)
        body["family"] = args.template
        body["bindings"] = dict(sorted(bindings.items()))
        body.update(_fraction_fields(value))
    else:
        max_len = args.max_len if args.max_len is not None else 6
        value = brute_force_value(automaton, max_len, budget=args.cap)
        body["max_len"] = max_len
        body.update(_fraction_fields(value))
    return body


def _run_reify_check(args: argparse.Namespace) -> dict:
    automaton = _read_automaton(args.input)
    bindings = _bindings(args)
    n = bindings.get("n", 12)
    if n < 1:
        raise ValidationError("reification parameter n must be at least 1")
    closure = markov_monoid(automaton, args.cap)
    reports = check_consistency(
        automaton,
        closure,
        n=n,
        zero_eps=args.eps,
        one_delta=args.delta,
    )
    consistency = [
        {
            "expression": report.expression.render(),
            "status": report.status,
            "failures": [
                {
                    "from": automaton.states[entry.s],
                    "to": automaton.states[entry.t],
                    "claimed": entry.claimed,
                    "measured_approx": float(entry.measured),
                }
                for entry in report.entries
                if not entry.ok
            ],
        }
        for report in reports
    ]
    body: dict = {
        "digest": _digest(automaton),
        "n": n,
        "zero_eps": str(args.eps),
        "one_delta": str(args.delta),
        "consistent": all(report.ok for report in reports),
        "consistency": consistency,
    }
    extended = extended_markov_monoid(automaton, args.cap)
    if find_leak_witness(extended) is not None:
        body["lower_bound"] = {"skipped": "not leaktight"}
    else:
        bound_n = min(n, 3)
        bound_reports = check_lower_bound(automaton, extended, n=bound_n)
        body["lower_bound"] = {
            "n": bound_n,
            "ok": all(report.ok for report in bound_reports),
            "elements": len(bound_reports),
        }
    return body


_HANDLERS: dict[str, Callable[[argparse.Namespace], dict]] = {
    "validate": _run_validate,
    "value1": _run_value1,
    "leaktight": _run_leaktight,
    "monoid": _run_monoid,
    "extended-monoid": _run_extended_monoid,
    "sharp-height": _run_sharp_height,
    "classify": _run_classify,
    "compose": _run_compose,
    "reduce": _run_reduce,
    "estimate-value": _run_estimate_value,
    "reify-check": _run_reify_check,
}


def _fraction_flag(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"not a rational: {text!r}") from None


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP)
    common.add_argument("--max-len", type=int, default=None)
    common.add_argument("--bind", action="append", metavar="NAME=NAT")
    common.add_argument("--eps", type=_fraction_flag, default=Fraction(1, 1000))
    common.add_argument("--delta", type=_fraction_flag, default=Fraction(1, 100))

    parser = _Parser(
        prog="leaktight",
        description=(
            "Exact decisions for probabilistic automata: value 1, leaktight, "
            "closures, classes, reductions and numeric oracles."
        ),
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return subparsers.add_parser(name, parents=[common], help=help_text)

    for name in ("validate", "value1", "leaktight", "monoid",
                 "extended-monoid", "sharp-height", "classify"):
        sub = add(name, f"run {name} on an automaton")
        sub.add_argument("input", help="interchange JSON file, or - for stdin")

    compose = add("compose", "combine two automata")
    compose.add_argument("mode", choices=("parallel", "product"))
    compose.add_argument("left", help="interchange JSON file")
    compose.add_argument("right", help="interchange JSON file")

    reduce_sub = add("reduce", "single-transition and coin-gadget constructions")
    reduce_sub.add_argument("mode", choices=("basic", "full", "third"))
    reduce_sub.add_argument("input", help="interchange JSON file, or - for stdin")

    estimate = add("estimate-value", "brute-force or family value estimation")
    estimate.add_argument("input", help="interchange JSON file, or - for stdin")
    estimate.add_argument(
        "template",
        nargs="?",
        default=None,
        help="word-family template, e.g. '(b a^n)^m' with --bind n=7 --bind m=200",
    )

    reify = add("reify-check", "reify closure expressions and check thresholds")
    reify.add_argument("input", help="interchange JSON file, or - for stdin")

    return parser


def _render_text(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, (str, int, float, bool)) or value is None:
            lines.append(f"{key}: {value}")
        else:
            lines.append(f"{key}: {json.dumps(value, ensure_ascii=False)}")
    return "\n".join(lines)


def main(argv: Optional[list[str]] = None) -> int:
    arguments = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(arguments)
        if not 0 <= args.seed < 2**64:
            raise ValidationError("--seed must fit in 64 bits")
        if args.cap < 1:
            raise ValidationError("--cap must be positive")
        if args.max_len is not None and args.max_len < 0:
            raise ValidationError("--max-len must be nonnegative")
        started = time.perf_counter()
        body = _HANDLERS[args.command](args)
        report = {"command": args.command, "argv": arguments, "seed": args.seed}
        report.update(body)
        report["elapsed_ms"] = round((time.perf_counter() - started) * 1000, 3)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(json.dumps(report, ensure_ascii=False, indent=2))
    else:
        print(_render_text(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
