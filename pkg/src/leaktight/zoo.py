"""Small named automata used throughout the tests and demos."""

from __future__ import annotations

from fractions import Fraction

from .automaton import Automaton, Matrix
from .errors import ValidationError

__all__ = ["fig3", "fig1", "det1", "hier2", "sink", "rnd3"]

F = Fraction


def _matrix(rows: list[dict[int, Fraction]], dim: int) -> Matrix:
    return tuple(
        tuple(row.get(t, F(0)) for t in range(dim)) for row in rows
    )


def fig3() -> Automaton:
    """Two states; letter a tosses a coin out of 0 and holds 1; letter b resets.

    Has value 1 (witnessed by iterating a) and is leaktight.
    """
    return Automaton(
        states=("0", "1"),
        alphabet=("a", "b"),
        initial="0",
        final=frozenset({"1"}),
        matrices=(
            _matrix([{0: F(1, 2), 1: F(1, 2)}, {1: F(1)}], 2),
            _matrix([{0: F(1)}, {0: F(1)}], 2),
        ),
    )


def fig1(x: Fraction) -> Automaton:
    """Five states; b splits into two arms, a leaks between arm and start.

    The left arm keeps its mass with probability x per a, the right arm
    with 1 − x; only the left arm's target T is final.  Not leaktight; its
    value is 1 exactly when x > 1/2, yet every boolean abstraction is
    independent of x.
    """
    x = Fraction(x)
    if not 0 < x < 1:
        raise ValidationError(f"x must be strictly between 0 and 1, got {x}")
    states = ("0", "L", "R", "T", "B")
    return Automaton(
        states=states,
        alphabet=("a", "b"),
        initial="0",
        final=frozenset({"T"}),
        matrices=(
            _matrix(
                [
                    {0: F(1)},
                    {1: x, 0: 1 - x},
                    {2: 1 - x, 0: x},
                    {3: F(1)},
                    {4: F(1)},
                ],
                5,
            ),
            _matrix(
                [
                    {1: F(1, 2), 2: F(1, 2)},
                    {3: F(1)},
                    {4: F(1)},
                    {3: F(1)},
                    {4: F(1)},
                ],
                5,
            ),
        ),
    )


def det1() -> Automaton:
    """One state, both letters loop, the state is initial and final."""
    return Automaton(
        states=("0",),
        alphabet=("a", "b"),
        initial="0",
        final=frozenset({"0"}),
        matrices=(
            _matrix([{0: F(1)}], 1),
            _matrix([{0: F(1)}], 1),
        ),
    )


def hier2() -> Automaton:
    """Two ranks: a climbs from 0 to 1 with a coin, b does nothing."""
    return Automaton(
        states=("0", "1"),
        alphabet=("a", "b"),
        initial="0",
        final=frozenset({"1"}),
        matrices=(
            _matrix([{0: F(1, 2), 1: F(1, 2)}, {1: F(1)}], 2),
            _matrix([{0: F(1)}, {1: F(1)}], 2),
        ),
    )


def sink() -> Automaton:
    """Two isolated self-looping states; the final one is unreachable."""
    return Automaton(
        states=("0", "f"),
        alphabet=("a", "b"),
        initial="0",
        final=frozenset({"f"}),
        matrices=(
            _matrix([{0: F(1)}, {1: F(1)}], 2),
            _matrix([{0: F(1)}, {1: F(1)}], 2),
        ),
    )


def rnd3() -> Automaton:
    """Three states, all rows simple, initial not final; used by the reductions."""
    return Automaton(
        states=("0", "1", "2"),
        alphabet=("a", "b"),
        initial="0",
        final=frozenset({"2"}),
        matrices=(
            _matrix(
                [
                    {0: F(1, 2), 1: F(1, 2)},
                    {1: F(1, 2), 2: F(1, 2)},
                    {2: F(1)},
                ],
                3,
            ),
            _matrix(
                [
                    {0: F(1, 2), 2: F(1, 2)},
                    {0: F(1)},
                    {1: F(1, 2), 2: F(1, 2)},
                ],
                3,
            ),
        ),
    )
