"""Exact-rational probabilistic automata: model, interchange format, evaluation, composition.

An automaton is a tuple (states, alphabet, one row-stochastic matrix per letter,
initial state, final states).  All probabilities are `fractions.Fraction`; there
is no floating point anywhere in the model.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import ValidationError

__all__ = [
    "Matrix",
    "Automaton",
    "identity_matrix",
    "matrix_product",
    "matrix_power",
    "parse_automaton",
    "automaton_from_json",
    "automaton_to_json",
    "render_automaton",
    "parallel_composition",
    "synchronized_product",
]

Matrix = tuple[tuple[Fraction, ...], ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def identity_matrix(dim: int) -> Matrix:
    return tuple(
        tuple(ONE if i == j else ZERO for j in range(dim)) for i in range(dim)
    )


def matrix_product(left: Matrix, right: Matrix) -> Matrix:
    dim = len(left)
    cols = tuple(zip(*right))
    return tuple(
        tuple(sum(row[k] * col[k] for k in range(dim)) for col in cols)
        for row in left
    )


def matrix_power(matrix: Matrix, exponent: int) -> Matrix:
    if exponent < 0:
        raise ValueError("exponent must be nonnegative")
    result = identity_matrix(len(matrix))
    base = matrix
    e = exponent
    while e:
        if e & 1:
            result = matrix_product(result, base)
        base = matrix_product(base, base) if e > 1 else base
        e >>= 1
    return result


def _check_name(name: object, what: str) -> str:
    if not isinstance(name, str) or not name:
        raise ValidationError(f"{what} must be a non-empty string, got {name!r}")
    if any(ord(c) < 0x20 or ord(c) == 0x7F for c in name):
        raise ValidationError(f"{what} {name!r} contains control characters")
    return name


@dataclass(frozen=True)
class Automaton:
    """A probabilistic automaton with exact rational transition matrices.

    `matrices[i]` is the transition matrix of `alphabet[i]`; entry (s, t) is
    the probability of moving from `states[s]` to `states[t]`.
    """

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    initial: str
    final: frozenset[str]
    matrices: tuple[Matrix, ...]

    def __post_init__(self) -> None:
        if not self.states:
            raise ValidationError("automaton needs at least one state")
        if not self.alphabet:
            raise ValidationError("automaton needs at least one letter")
        for s in self.states:
            _check_name(s, "state name")
        for a in self.alphabet:
            _check_name(a, "letter name")
        if len(set(self.states)) != len(self.states):
            raise ValidationError("duplicate state names")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValidationError("duplicate letter names")
        if self.initial not in self.states:
            raise ValidationError(f"initial state {self.initial!r} is not a state")
        for f in self.final:
            if f not in self.states:
                raise ValidationError(f"final state {f!r} is not a state")
        if len(self.matrices) != len(self.alphabet):
            raise ValidationError("one transition matrix per letter is required")
        dim = len(self.states)
        for letter, matrix in zip(self.alphabet, self.matrices):
            if len(matrix) != dim or any(len(row) != dim for row in matrix):
                raise ValidationError(f"letter {letter!r}: matrix is not {dim}x{dim}")
            for s, row in enumerate(matrix):
                total = ZERO
                for entry in row:
                    if not isinstance(entry, Fraction):
                        raise ValidationError(
                            f"letter {letter!r}: non-rational entry {entry!r}"
                        )
                    if entry < 0 or entry > 1:
                        raise ValidationError(
                            f"letter {letter!r}: entry {entry} outside [0,1]"
                        )
                    total += entry
                if total != 1:
                    raise ValidationError(
                        f"letter {letter!r}, state {self.states[s]!r}: "
                        f"row sum {total} ≠ 1"
                    )

    @cached_property
    def state_index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.states)}

    @cached_property
    def letter_index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.alphabet)}

    @cached_property
    def final_indices(self) -> frozenset[int]:
        return frozenset(self.state_index[f] for f in self.final)

    @cached_property
    def min_transition_probability(self) -> Fraction:
        """The smallest strictly positive entry over all letter matrices (p_min)."""
        return min(
            entry
            for matrix in self.matrices
            for row in matrix
            for entry in row
            if entry > 0
        )

    def matrix(self, letter: str) -> Matrix:
        try:
            return self.matrices[self.letter_index[letter]]
        except KeyError:
            raise ValidationError(f"unknown letter {letter!r}") from None

    def word_matrix(self, word: Iterable[str]) -> Matrix:
        """Exact product of the letter matrices of `word` (identity for the empty word)."""
        result = identity_matrix(len(self.states))
        for letter in word:
            result = matrix_product(result, self.matrix(letter))
        return result

    def step(self, distribution: tuple[Fraction, ...], letter: str) -> tuple[Fraction, ...]:
        """One letter of evolution of a distribution row vector."""
        matrix = self.matrix(letter)
        dim = len(self.states)
        return tuple(
            sum(distribution[s] * matrix[s][t] for s in range(dim) if distribution[s])
            for t in range(dim)
        )

    def initial_distribution(self) -> tuple[Fraction, ...]:
        i = self.state_index[self.initial]
        return tuple(ONE if s == i else ZERO for s in range(len(self.states)))

    def acceptance_of(self, distribution: Sequence[Fraction]) -> Fraction:
        return sum((distribution[f] for f in self.final_indices), start=ZERO)

    def acceptance_probability(self, word: Iterable[str]) -> Fraction:
        """Probability that reading `word` from the initial state ends in a final state."""
        distribution = self.initial_distribution()
        for letter in word:
            distribution = self.step(distribution, letter)
        return self.acceptance_of(distribution)


# ---------------------------------------------------------------------------
# Interchange format


def _parse_probability(value: object) -> Fraction:
    if isinstance(value, bool):
        raise ValidationError(f"probability must be a rational string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad probability {value!r}: {exc}") from None
    raise ValidationError(f"probability must be a rational string, got {value!r}")


def automaton_from_json(document: Mapping) -> Automaton:
    """Build and validate an automaton from an interchange-format dictionary."""
    if not isinstance(document, Mapping):
        raise ValidationError("document must be a JSON object")
    for field in ("states", "alphabet", "initial", "final", "transitions"):
        if field not in document:
            raise ValidationError(f"missing field {field!r}")
    states = tuple(_check_name(s, "state name") for s in document["states"])
    alphabet = tuple(_check_name(a, "letter name") for a in document["alphabet"])
    if len(set(states)) != len(states):
        raise ValidationError("duplicate state names")
    index = {s: i for i, s in enumerate(states)}
    transitions = document["transitions"]
    if not isinstance(transitions, Mapping):
        raise ValidationError("transitions must be an object keyed by letter")
    for letter in transitions:
        if letter not in alphabet:
            raise ValidationError(f"transitions mention unknown letter {letter!r}")
    dim = len(states)
    matrices = []
    for letter in alphabet:
        rows = [[ZERO] * dim for _ in range(dim)]
        seen: set[tuple[int, int]] = set()
        for triple in transitions.get(letter, ()):
            if not isinstance(triple, Sequence) or len(triple) != 3:
                raise ValidationError(
                    f"letter {letter!r}: each transition must be [from, to, probability]"
                )
            src, dst, prob = triple
            if src not in index:
                raise ValidationError(f"letter {letter!r}: unknown state {src!r}")
            if dst not in index:
                raise ValidationError(f"letter {letter!r}: unknown state {dst!r}")
            key = (index[src], index[dst])
            if key in seen:
                raise ValidationError(
                    f"letter {letter!r}: duplicate transition {src!r} -> {dst!r}"
                )
            seen.add(key)
            rows[key[0]][key[1]] = _parse_probability(prob)
        matrices.append(tuple(tuple(row) for row in rows))
    final = document["final"]
    if isinstance(final, str):
        raise ValidationError("final must be an array of state names")
    return Automaton(
        states=states,
        alphabet=alphabet,
        initial=document["initial"] if isinstance(document["initial"], str) else
        _check_name(document["initial"], "initial state"),
        final=frozenset(final),
        matrices=tuple(matrices),
    )


def parse_automaton(text: str) -> Automaton:
    """Parse an interchange-format JSON document into a validated automaton."""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    return automaton_from_json(document)


def automaton_to_json(automaton: Automaton) -> dict:
    """Serialize to the interchange format (zero entries omitted)."""
    transitions: dict[str, list] = {}
    for letter, matrix in zip(automaton.alphabet, automaton.matrices):
        triples = []
        for s, row in enumerate(matrix):
            for t, entry in enumerate(row):
                if entry:
                    triples.append(
                        [automaton.states[s], automaton.states[t], str(entry)]
                    )
        transitions[letter] = triples
    return {
        "states": list(automaton.states),
        "alphabet": list(automaton.alphabet),
        "initial": automaton.initial,
        "final": [s for s in automaton.states if s in automaton.final],
        "transitions": transitions,
    }


def render_automaton(automaton: Automaton) -> str:
    return json.dumps(automaton_to_json(automaton), indent=2, ensure_ascii=False)


# ---------------------------------------------------------------------------
# Compositions


def _require_same_alphabet(a: Automaton, b: Automaton) -> tuple[str, ...]:
    if set(a.alphabet) != set(b.alphabet):
        raise ValidationError(
            f"alphabet mismatch: {sorted(a.alphabet)} vs {sorted(b.alphabet)}"
        )
    return a.alphabet


def _fresh(base: str, taken: set[str]) -> str:
    name = base
    while name in taken:
        name = "_" + name
    return name


def parallel_composition(a: Automaton, b: Automaton) -> Automaton:
    """Disjoint union behind a fresh initial state.

    For every letter the fresh initial state moves with probability 1/3 each
    to itself, to A's initial state, and to B's initial state; final states
    are the union of both components' final states.
    """
    alphabet = _require_same_alphabet(a, b)
    a_names = {s: f"A.{s}" for s in a.states}
    b_names = {s: f"B.{s}" for s in b.states}
    taken = set(a_names.values()) | set(b_names.values())
    init = _fresh("init", taken)
    states = (init,) + tuple(a_names[s] for s in a.states) + tuple(
        b_names[s] for s in b.states
    )
    index = {s: i for i, s in enumerate(states)}
    dim = len(states)
    third = Fraction(1, 3)
    matrices = []
    for letter in alphabet:
        rows = [[ZERO] * dim for _ in range(dim)]
        rows[0][0] = third
        rows[0][index[a_names[a.initial]]] = third
        rows[0][index[b_names[b.initial]]] = third
        for component, names, offset in ((a, a_names, None), (b, b_names, None)):
            matrix = component.matrix(letter)
            for s, row in enumerate(matrix):
                si = index[names[component.states[s]]]
                for t, entry in enumerate(row):
                    if entry:
                        rows[si][index[names[component.states[t]]]] = entry
        matrices.append(tuple(tuple(row) for row in rows))
    final = frozenset(a_names[s] for s in a.final) | frozenset(
        b_names[s] for s in b.final
    )
    return Automaton(states, alphabet, init, final, tuple(matrices))


def synchronized_product(a: Automaton, b: Automaton) -> Automaton:
    """Cartesian product running both automata on the same word.

    Transition probabilities multiply; a pair is final when both components
    are final (intersection semantics).
    """
    alphabet = _require_same_alphabet(a, b)
    separator = "|"
    while len({f"{s}{separator}{t}" for s in a.states for t in b.states}) != len(
        a.states
    ) * len(b.states):
        separator += "|"
    name = {
        (s, t): f"{s}{separator}{t}" for s in a.states for t in b.states
    }
    pairs = [(s, t) for s in a.states for t in b.states]
    states = tuple(name[p] for p in pairs)
    index = {p: i for i, p in enumerate(pairs)}
    dim = len(pairs)
    matrices = []
    for letter in alphabet:
        ma, mb = a.matrix(letter), b.matrix(letter)
        rows = [[ZERO] * dim for _ in range(dim)]
        for (s, t), i in index.items():
            row_a = ma[a.state_index[s]]
            row_b = mb[b.state_index[t]]
            for s2, pa in enumerate(row_a):
                if not pa:
                    continue
                for t2, pb in enumerate(row_b):
                    if pb:
                        rows[i][index[(a.states[s2], b.states[t2])]] = pa * pb
        matrices.append(tuple(tuple(row) for row in rows))
    final = frozenset(
        name[(s, t)] for s in a.final for t in b.final
    )
    return Automaton(
        states, alphabet, name[(a.initial, b.initial)], final, tuple(matrices)
    )
