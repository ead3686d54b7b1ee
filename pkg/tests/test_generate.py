"""Seeded generators: reproducibility, shape guarantees, perturbation."""

from __future__ import annotations

from fractions import Fraction as F

import pytest

from leaktight import ValidationError, is_deterministic, is_hierarchical, is_simple
from leaktight.generate import (
    perturb,
    random_automaton,
    random_deterministic,
    random_hierarchical,
)
from leaktight.zoo import fig1, fig3


def test_same_seed_same_automaton() -> None:
    assert random_automaton(7) == random_automaton(7)
    assert random_automaton(7) != random_automaton(8)


def test_generated_automata_are_simple() -> None:
    for seed in range(30):
        a = random_automaton(seed, states=4, letters=2)
        assert is_simple(a)
        assert a.initial == a.states[0]


def test_generator_validates_sizes() -> None:
    with pytest.raises(ValidationError):
        random_automaton(0, states=0)
    with pytest.raises(ValidationError):
        random_automaton(0, letters=0)


def test_deterministic_generator() -> None:
    for seed in range(30):
        assert is_deterministic(random_deterministic(seed, states=4))


def test_hierarchical_generator() -> None:
    for seed in range(30):
        assert is_hierarchical(random_hierarchical(seed, states=4)) is not None


def test_perturb_preserves_support_and_structure() -> None:
    for seed in range(30):
        a = random_automaton(seed, states=4)
        b = perturb(seed + 1000, a)
        assert b.states == a.states
        assert b.alphabet == a.alphabet
        assert b.initial == a.initial and b.final == a.final
        for letter in a.alphabet:
            ma, mb = a.matrix(letter), b.matrix(letter)
            assert sum(mb[0]) == 1
            for s in range(len(a.states)):
                for t in range(len(a.states)):
                    assert (ma[s][t] > 0) == (mb[s][t] > 0)


def test_perturb_leaves_deterministic_rows_alone() -> None:
    a = random_deterministic(3, states=4)
    assert perturb(11, a) == a


def test_perturb_changes_some_probability() -> None:
    a = fig1(F(1, 2))
    changed = any(perturb(seed, a) != a for seed in range(10))
    assert changed
