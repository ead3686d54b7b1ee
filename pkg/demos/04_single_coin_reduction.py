"""Reduce a simple automaton to one with a single probabilistic transition.

A simple automaton only uses probabilities 0, 1/2, and 1.  Three
constructions successively concentrate the randomness:

  reduce_basic   one probabilistic row, and acceptance probabilities are
                 preserved exactly under the word translation `hat`;
  reduce_full    additionally restarts rejected runs, so repeating the
                 translated word with the `finish` marker converges to the
                 original probability from below;
  third gadget   replaces the fair coin with a biased 1/3-2/3 choice whose
                 decision is amplified by interleaved `sharp` letters.

The script verifies each construction numerically on a three-state simple
automaton, using exact rational arithmetic throughout.
"""

import itertools
import random
from fractions import Fraction

from leaktight import (
    hat_morphism,
    hat_with_finish,
    probabilistic_row_count,
    reduce_basic,
    reduce_full,
    sharp_interleave,
    third_simulation,
)
from leaktight.zoo import rnd3


def main():
    source = rnd3()
    print(f"source: {len(source.states)} states, "
          f"{len(source.alphabet)} letters, "
          f"{probabilistic_row_count(source)} probabilistic rows")
    print()

    # --- exact single-coin reduction -----------------------------------
    basic = reduce_basic(source)
    target = basic.automaton
    print(f"reduce_basic: {len(target.states)} states, "
          f"{len(target.alphabet)} letters, "
          f"{probabilistic_row_count(target)} probabilistic row")
    checked = 0
    for length in range(4):
        for word in itertools.product(source.alphabet, repeat=length):
            direct = source.acceptance_probability(word)
            encoded = target.acceptance_probability(hat_morphism(source, word))
            assert direct == encoded, (word, direct, encoded)
            checked += 1
    print(f"acceptance preserved exactly on all {checked} words up to length 3")
    print()

    # --- restarting reduction: convergence from below ------------------
    full = reduce_full(source)
    target = full.automaton
    rng = random.Random(11)
    word = tuple(rng.choice(source.alphabet) for _ in range(3))
    goal = source.acceptance_probability(word)
    print(f"reduce_full:  {len(target.states)} states, "
          f"{len(target.alphabet)} letters")
    print(f"word {' '.join(word)} has probability {goal} at the source;")
    print("repeating the translated word drives the target toward it:")
    previous = Fraction(0)
    for repeats in (1, 2, 4, 8, 16):
        p = target.acceptance_probability(hat_with_finish(source, word, repeats))
        assert previous <= p <= goal
        print(f"  {repeats:2} repeats -> {float(p):.9f}")
        previous = p
    print(f"  limit        {float(goal):.9f}")
    print()

    # --- biased coin with sharp amplification --------------------------
    gadget = third_simulation(source)
    print(f"third gadget: {len(gadget.states)} states, entries drawn from "
          "{0, 1/3, 2/3, 1}")
    print("each sharp round sharpens the simulated fair coin:")
    for rounds in (1, 2, 5):
        branch = Fraction(1, 2) * (1 - Fraction(5, 9) ** rounds)
        print(f"  {rounds} rounds -> branch probability {branch} "
              f"(= {float(branch):.6f}, approaching 1/2)")
    word = ("a", "b")
    for rounds in (2, 6, 18):
        p = gadget.acceptance_probability(sharp_interleave(word, rounds))
        print(f"  word a b with {rounds:2} rounds -> {float(p):.9f} "
              f"(source: {float(source.acceptance_probability(word)):.9f})")


if __name__ == "__main__":
    main()
