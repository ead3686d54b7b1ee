"""Hunt for leaks in the extended monoid of limit-word pairs.

A leak is a vanishing-but-nonzero escape route out of a recurrence class:
the limit word says probability mass stays inside the class, while the
iterate-free support still has an edge out of it.  Automata without leaks
(leaktight automata) are exactly the ones where the monoid saturation is
a complete decision procedure for value 1.

The hunt runs on the two-coin automaton: from a central state, letter `b`
flips a coin between a Left and a Right component, and letter `a` retries
inside each component with bias x on the Left and 1-x on the Right.  The
witness found is the same for every bias because leaks are a purely
qualitative phenomenon.
"""

from fractions import Fraction

from leaktight import decide_leaktight, extended_markov_monoid
from leaktight.zoo import fig1, fig3


def main():
    for x in (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)):
        automaton = fig1(x)
        closure = extended_markov_monoid(automaton)
        report = decide_leaktight(automaton)
        print(f"== two-coin automaton, bias x = {x} ==")
        print(f"extended monoid size: {len(closure.elements)}")
        print(f"leaktight:            {report.leaktight}")
        witness = report.witness
        if witness is not None:
            r = automaton.states[witness.r]
            q = automaton.states[witness.q]
            print(f"leak witness:         {witness.expression.render()}")
            print(f"  recurrent state {r!r} keeps its mass in the limit,")
            print(f"  yet the support still reaches {q!r}, which cannot")
            print(f"  return to {r!r}.")
        print()

    # A leaktight automaton for contrast: every support edge out of a
    # recurrence class can be ruled out, so no witness exists.
    report = decide_leaktight(fig3())
    print("== funnel automaton ==")
    print(f"leaktight:            {report.leaktight}")
    print(f"leak witness:         {report.witness}")


if __name__ == "__main__":
    main()
