"""Structural class membership: deterministic, hierarchical, subset-acyclic."""

from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from leaktight import (
    CapExceeded,
    decide_leaktight,
    is_deterministic,
    is_hierarchical,
    is_sharp_acyclic,
    sharp_height,
)
from leaktight.generate import random_deterministic, random_hierarchical
from leaktight.zoo import det1, fig1, fig3, hier2, rnd3, sink

from .helpers import seeded_automaton


def test_deterministic_fixtures() -> None:
    assert is_deterministic(det1())
    assert is_deterministic(sink())
    assert not is_deterministic(fig3())
    assert not is_deterministic(rnd3())


def test_hierarchical_fixture_ranks() -> None:
    ranks = is_hierarchical(hier2())
    assert ranks == {"0": 0, "1": 1}
    assert is_hierarchical(det1()) == {"0": 0}


def test_hierarchical_ranks_never_decrease() -> None:
    for seed in range(60):
        a = seeded_automaton(seed)
        ranks = is_hierarchical(a)
        if ranks is None:
            continue
        for letter in a.alphabet:
            m = a.matrix(letter)
            same_rank = {s: 0 for s in a.states}
            for s, source in enumerate(a.states):
                for t, target in enumerate(a.states):
                    if m[s][t] > 0:
                        assert ranks[target] >= ranks[source]
                        if ranks[target] == ranks[source]:
                            same_rank[source] += 1
            assert all(count <= 1 for count in same_rank.values())


def test_fig3_is_not_hierarchical_or_acyclic() -> None:
    assert is_hierarchical(fig3()) is None
    assert not is_sharp_acyclic(fig3())


def test_fig1_is_not_sharp_acyclic() -> None:
    assert not is_sharp_acyclic(fig1(F(1, 2)))


def test_sharp_acyclic_fixtures() -> None:
    assert is_sharp_acyclic(det1())
    assert is_sharp_acyclic(hier2())
    assert is_sharp_acyclic(sink())


def test_sharp_acyclic_cap() -> None:
    a = seeded_automaton(0)
    with pytest.raises(CapExceeded, match="subset graph"):
        is_sharp_acyclic(a, cap=0)


def test_deterministic_generator_and_theorems() -> None:
    for seed in range(50):
        a = random_deterministic(seed, states=random.Random(seed).randrange(1, 5))
        assert is_deterministic(a)
        assert sharp_height(a) == 0
        assert decide_leaktight(a).leaktight


def test_hierarchical_generator_and_theorem() -> None:
    for seed in range(50):
        a = random_hierarchical(seed, states=random.Random(seed).randrange(1, 5))
        assert is_hierarchical(a) is not None
        assert decide_leaktight(a).leaktight


def test_sharp_acyclic_implies_leaktight_on_samples() -> None:
    hits = 0
    for seed in range(120):
        a = seeded_automaton(seed)
        if is_sharp_acyclic(a):
            hits += 1
            assert decide_leaktight(a).leaktight
    assert hits > 0
