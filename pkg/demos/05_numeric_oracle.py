"""Cross-check boolean limit-word claims against exact numeric evaluation.

Every answer the monoid machinery produces is a claim about limits of
acceptance probabilities.  This script re-derives those claims three ways
with exact rational arithmetic:

  brute force      maximum acceptance probability over all short words;
  word families    templates like (b a^n)^N evaluated at chosen or gridded
                   parameter values, without materializing the huge word;
  reification      substituting n·(|Q|!) repetitions for each # in a
                   witness expression and measuring the resulting word.
"""

from fractions import Fraction

from leaktight import (
    brute_force_value,
    check_consistency,
    evaluate_family,
    evaluate_family_at,
    expression_matrix,
    markov_monoid,
    parse_family,
    reify,
)
from leaktight.zoo import fig1, fig3


def main():
    # --- brute force ----------------------------------------------------
    funnel = fig3()
    print("maximum acceptance probability of the funnel automaton:")
    for max_len in range(5):
        value = brute_force_value(funnel, max_len)
        print(f"  words of length <= {max_len}: {value}")
    print("  (the supremum over all words is 1: pump the letter a)")
    print()

    # --- word families ----------------------------------------------------
    # On the two-coin automaton, words (b a^n)^N retry a biased coin; with
    # bias 2/3 the acceptance probability climbs toward 1, while the fair
    # coin is stuck at 1/2 by symmetry.
    family = parse_family("(b a^n)^N")
    print(f"family (b a^n)^N with parameters {sorted(family.parameters())}:")
    biased = fig1(Fraction(2, 3))
    value = evaluate_family_at(biased, family, {"n": 7, "N": 200})
    print(f"  bias 2/3, n=7, N=200: {float(value):.10f}")
    fair = fig1(Fraction(1, 2))
    grid = evaluate_family(fair, family, {"n": [1, 3, 5], "N": [10, 100]})
    worst = max(grid.values())
    print(f"  fair coin over a {len(grid)}-point grid: max {float(worst):.10f}"
          " (never above 1/2)")
    assert worst <= Fraction(1, 2)
    print()

    # --- reification ------------------------------------------------------
    closure = markov_monoid(funnel)
    witness = max(closure.elements, key=lambda u: closure.heights[u])
    expression = closure.provenance[witness]
    print(f"reifying the witness expression {expression.render()}:")
    for n in (1, 2, 3):
        word = reify(expression, n)
        measured = funnel.word_matrix(word)
        assert measured == expression_matrix(funnel, expression, n)
        print(f"  n={n}: word length {len(word)}, "
              f"acceptance {funnel.acceptance_probability(word)}")
    print()

    reports = check_consistency(funnel, closure, n=12)
    print(f"consistency of all {len(reports)} closure elements at n=12: "
          f"{'pass' if all(r.ok for r in reports) else 'inconclusive'}")
    for report in reports:
        zeros = sum(1 for e in report.entries if not e.claimed)
        ones = len(report.entries) - zeros
        print(f"  {report.expression.render():>8}  "
              f"{ones} claimed edges, {zeros} claimed non-edges, "
              f"ok={report.ok}")


if __name__ == "__main__":
    main()
