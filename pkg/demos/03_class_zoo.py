"""Recognize structural classes that guarantee leaktightness.

Three syntactic classes of automata are known to be leaktight, each for a
different reason:

  deterministic    every row of every letter is a unit vector;
  hierarchical     states can be ranked so that each transition moves
                   strictly up in rank except for at most one stay-put
                   successor per (state, letter);
  #-acyclic        the subset graph of the letters has no non-trivial
                   cycle through distinct iterated elements.

The script classifies the built-in menagerie plus a batch of randomly
generated automata and cross-checks every positive classification against
the leak decision procedure.
"""

import random

from leaktight import (
    decide_leaktight,
    is_deterministic,
    is_hierarchical,
    is_sharp_acyclic,
    sharp_height,
)
from leaktight.generate import random_automaton, random_deterministic, random_hierarchical
from leaktight.zoo import det1, fig3, hier2, rnd3, sink


def classify(name, automaton):
    det = is_deterministic(automaton)
    ranks = is_hierarchical(automaton)
    hier = ranks is not None
    acyclic = is_sharp_acyclic(automaton)
    leak = decide_leaktight(automaton).leaktight
    print(f"{name:12} deterministic={str(det):5} hierarchical={str(hier):5} "
          f"#-acyclic={str(acyclic):5} leaktight={leak}")
    if hier:
        print(f"{'':12} ranks: {dict(sorted(ranks.items()))}")
    return det, hier, acyclic, leak


def main():
    print("-- menagerie --")
    for name, automaton in [
        ("det1", det1()),
        ("hier2", hier2()),
        ("sink", sink()),
        ("funnel", fig3()),
        ("rnd3", rnd3()),
    ]:
        det, hier, acyclic, leak = classify(name, automaton)
        if det or hier or acyclic:
            assert leak, f"{name}: class membership must imply leaktight"
    print()

    print("-- random samples --")
    rng = random.Random(7)
    counts = {"deterministic": 0, "hierarchical": 0, "#-acyclic": 0}
    for seed in range(60):
        det_a = random_deterministic(random.Random(seed), states=4, letters=2)
        assert is_deterministic(det_a)
        assert sharp_height(det_a) == 0, "deterministic monoids never iterate"
        assert decide_leaktight(det_a).leaktight
        counts["deterministic"] += 1

        hier_a = random_hierarchical(random.Random(seed), states=4, letters=2)
        assert is_hierarchical(hier_a) is not None
        assert decide_leaktight(hier_a).leaktight
        counts["hierarchical"] += 1

        any_a = random_automaton(rng, states=rng.randrange(1, 5),
                                 letters=rng.randrange(1, 3))
        if is_sharp_acyclic(any_a):
            assert decide_leaktight(any_a).leaktight
            counts["#-acyclic"] += 1

    for kind, n in counts.items():
        print(f"checked {n:3} {kind} automata: all leaktight")


if __name__ == "__main__":
    main()
