"""Numeric ground truth: brute force, word families, reified expressions."""

from __future__ import annotations

import math
from fractions import Fraction as F

import pytest

from leaktight import (
    CapExceeded,
    ValidationError,
    brute_force_value,
    check_consistency,
    check_lower_bound,
    evaluate_family,
    evaluate_family_at,
    expression_matrix,
    family_word,
    markov_monoid,
    extended_markov_monoid,
    parse_expression,
    parse_family,
    reification_exponent,
    reify,
)
from leaktight.zoo import det1, fig1, fig3, hier2, rnd3, sink

from .helpers import seeded_automaton, seeded_closure


# ---------------------------------------------------------------------------
# Brute force


def test_brute_force_fixture_values() -> None:
    assert brute_force_value(det1(), max_len=0) == 1
    assert brute_force_value(sink(), max_len=6) == 0
    assert brute_force_value(fig3(), max_len=4) == F(15, 16)
    assert brute_force_value(fig1(F(1, 3)), max_len=10) == F(1, 2)


def test_brute_force_monotone_in_max_len() -> None:
    a = fig3()
    values = [brute_force_value(a, max_len=k) for k in range(7)]
    assert values == sorted(values)
    # fig3 value-1: a^k alone pushes acceptance to 1 - 2^-k
    assert values[6] >= 1 - F(1, 2) ** 6


def test_brute_force_budget() -> None:
    with pytest.raises(CapExceeded, match="budget exceeded"):
        brute_force_value(fig1(F(1, 2)), max_len=30, budget=50)


def test_brute_force_rejects_negative_length() -> None:
    with pytest.raises(ValidationError):
        brute_force_value(fig3(), max_len=-1)


# ---------------------------------------------------------------------------
# Word families


def test_family_parsing_round_trip() -> None:
    family = parse_family("(b a^n)^N")
    assert family.parameters() == frozenset({"N", "n"})
    assert family_word(family, {"n": 2, "N": 2}) == ("b", "a", "a", "b", "a", "a")


def test_family_literal_powers() -> None:
    family = parse_family("a^3 b")
    assert family.parameters() == frozenset()
    assert family_word(family, {}) == ("a", "a", "a", "b")


def test_family_nested_groups() -> None:
    family = parse_family("((a b)^2 a)^k")
    assert family_word(family, {"k": 2}) == tuple("ababa" * 2)


def test_family_syntax_errors() -> None:
    for bad in ("", "(a", "a^", "a^^2", ")a(", "a^-1"):
        with pytest.raises(ValidationError, match="family syntax error at offset"):
            parse_family(bad)


def test_family_unbound_parameter() -> None:
    family = parse_family("a^n")
    with pytest.raises(ValidationError, match="unbound parameter"):
        evaluate_family_at(fig3(), family)


def test_family_evaluation_matches_direct_word() -> None:
    a = fig3()
    family = parse_family("(b a^n)^N")
    for n in (0, 1, 3):
        for big_n in (0, 1, 4):
            bindings = {"n": n, "N": big_n}
            direct = a.acceptance_probability(family_word(family, bindings))
            assert evaluate_family_at(a, family, bindings) == direct


def test_family_grid_evaluation() -> None:
    a = fig3()
    family = parse_family("a^n")
    grid = evaluate_family(a, family, {"n": (0, 1, 2, 3)})
    assert grid[(("n", 2),)] == F(3, 4)
    assert len(grid) == 4
    values = [grid[(("n", k),)] for k in (0, 1, 2, 3)]
    assert values == sorted(values)


def test_family_threshold_golden() -> None:
    a = fig1(F(2, 3))
    family = parse_family("(b a^n)^N")
    value = evaluate_family_at(a, family, {"n": 7, "N": 200})
    p, q = F(1, 2) * F(2, 3) ** 7, F(1, 2) * F(1, 3) ** 7
    assert value == p / (p + q) * (1 - (1 - p - q) ** 199)
    assert value >= F(95, 100)


def test_family_value_monotone_in_repeats() -> None:
    a = fig1(F(2, 3))
    family = parse_family("(b a^n)^N")
    previous = F(-1)
    for big_n in (1, 5, 25, 125):
        value = evaluate_family_at(a, family, {"n": 7, "N": big_n})
        assert value >= previous
        previous = value


# ---------------------------------------------------------------------------
# Reification


def test_reification_exponent_is_length_times_factorial() -> None:
    a = fig3()
    expr = parse_expression("(a)#", a)
    assert reification_exponent(expr, 1) == math.factorial(2)
    assert reification_exponent(expr, 12) == 12 * math.factorial(2)


def test_reify_goldens() -> None:
    a = fig3()
    assert reify(parse_expression("a b", a), 5) == ("a", "b")
    assert reify(parse_expression("(a)#", a), 1) == ("a", "a")
    assert reify(parse_expression("(a)#", a), 3) == ("a",) * 6
    assert reify(parse_expression("ε", a), 3) == ()
    nested = parse_expression("((a)# (a)#)#", a)
    assert len(reify(nested, 1)) == 2 * 2 * 2


def test_reify_budget() -> None:
    a = fig3()
    expr = parse_expression("(a)#", a)
    with pytest.raises(CapExceeded, match="budget exceeded"):
        reify(expr, 10**6, budget=1000)


def test_expression_matrix_equals_word_matrix_of_reified_word() -> None:
    a = fig3()
    for text in ("ε", "a", "b a", "(a)#", "(a b a)#", "((a)# (a)#)#"):
        expr = parse_expression(text, a)
        for n in (1, 2, 3):
            assert expression_matrix(a, expr, n) == a.word_matrix(reify(expr, n))


# ---------------------------------------------------------------------------
# Consistency


def test_consistency_on_fixture_closures() -> None:
    for a in (fig3(), det1(), hier2(), fig1(F(1, 2))):
        closure = markov_monoid(a)
        reports = check_consistency(a, closure, n=12)
        assert len(reports) == len(closure.elements)
        assert all(report.ok for report in reports)
        assert all(report.status == "pass" for report in reports)


def test_consistency_report_covers_all_entries() -> None:
    a = fig3()
    closure = markov_monoid(a)
    report = check_consistency(a, closure, n=4)[0]
    assert len(report.entries) == len(a.states) ** 2


def test_consistency_failure_is_reported_not_raised() -> None:
    # An element foreign to the automaton fails consistency gracefully:
    # claimed edges carry no probability mass.
    from leaktight import MonoidClosure, LimitWord
    from leaktight.sharpexpr import letter_expr

    a = fig3()
    closure = markov_monoid(a)
    expr = closure.provenance[letter_expr(a, "b").word]
    fake = LimitWord.from_sets(2, [{1}, {0}])
    bad = MonoidClosure(
        automaton=a,
        elements=(fake,),
        provenance={fake: expr},
        heights={fake: 0},
    )
    reports = check_consistency(a, bad, n=12)
    assert len(reports) == 1
    assert not reports[0].ok
    assert reports[0].status == "inconclusive at n=12"


# ---------------------------------------------------------------------------
# Lower bounds


def test_lower_bound_on_leaktight_fixtures() -> None:
    for a in (fig3(), det1(), hier2(), rnd3()):
        ext = extended_markov_monoid(a)
        for n in (1, 2, 3):
            reports = check_lower_bound(a, ext, n=n)
            assert len(reports) == len(ext.elements)
            assert all(report.ok for report in reports), (a.states, n)


def test_lower_bound_requires_no_leak() -> None:
    a = fig1(F(1, 2))
    ext = extended_markov_monoid(a)
    with pytest.raises(ValidationError, match="precondition violation"):
        check_lower_bound(a, ext)


def test_lower_bound_entries_cover_claimed_edges() -> None:
    a = fig3()
    ext = extended_markov_monoid(a)
    for report in check_lower_bound(a, ext, n=2):
        assert report.ok
        assert report.support_exact
        assert report.depth >= 0
        claimed = sum(
            1
            for s in range(len(a.states))
            for t in range(len(a.states))
            if (s, t) in report.element.word
        )
        assert len(report.entries) == claimed
        p_min = a.min_transition_probability
        for entry in report.entries:
            assert entry.measured >= p_min ** (2**report.depth)


def test_lower_bound_expression_selection() -> None:
    a = fig3()
    ext = extended_markov_monoid(a)
    chosen = [ext.provenance[ext.elements[0]]]
    reports = check_lower_bound(a, ext, expressions=chosen, n=2)
    assert len(reports) == 1
    foreign = parse_expression("b b", a)
    with pytest.raises(ValidationError, match="membership violation"):
        check_lower_bound(a, ext, expressions=[foreign], n=2)
