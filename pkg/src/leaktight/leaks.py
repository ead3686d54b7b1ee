"""Extended closure tracking iterate-free supports, and the leaktight decision.

Elements are pairs: the limit word produced with iterates, alongside the
boolean support the same expression would have if every iterate were dropped.
A leak is an idempotent pair whose iterate-free support lets a recurrent
state escape to somewhere it can never return from.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .automaton import Automaton
from .errors import ValidationError
from .limitword import LimitWord
from .monoid import DEFAULT_CAP, MonoidClosure, _saturate
from .sharpexpr import SharpExpression, epsilon_expr, letter_expr

__all__ = [
    "ExtendedLimitWord",
    "ExtendedClosure",
    "extended_markov_monoid",
    "LeakWitness",
    "find_leak_witness",
    "LeaktightReport",
    "decide_leaktight",
]


@dataclass(frozen=True)
class ExtendedLimitWord:
    """A limit word paired with its iterate-free support.

    The limit word refines the support: every edge of `word` is an edge of
    `support` (iterates only ever remove edges).
    """

    word: LimitWord
    support: LimitWord

    def __post_init__(self) -> None:
        if self.word.dim != self.support.dim:
            raise ValidationError(
                f"dimension mismatch: {self.word.dim} vs {self.support.dim}"
            )
        for s in range(self.word.dim):
            if self.word.rows[s] & ~self.support.rows[s]:
                raise ValidationError(
                    f"row {s}: limit word has an edge missing from the support"
                )

    @property
    def dim(self) -> int:
        return self.word.dim

    def concat(self, other: "ExtendedLimitWord") -> "ExtendedLimitWord":
        return ExtendedLimitWord(
            word=self.word.concat(other.word),
            support=self.support.concat(other.support),
        )

    def is_idempotent(self) -> bool:
        return self.word.is_idempotent() and self.support.is_idempotent()

    def iterate(self) -> "ExtendedLimitWord":
        """Iterate the limit word; the iterate-free support is unchanged."""
        if not self.is_idempotent():
            raise ValidationError(
                "precondition violation: element is not idempotent"
            )
        return ExtendedLimitWord(word=self.word.iterate(), support=self.support)

    def sort_key(self):
        return (self.word.sort_key(), self.support.sort_key())


@dataclass(frozen=True)
class ExtendedClosure:
    """All extended pairs generated by an automaton's letters."""

    automaton: Automaton
    elements: tuple[ExtendedLimitWord, ...]
    provenance: Mapping[ExtendedLimitWord, SharpExpression]
    heights: Mapping[ExtendedLimitWord, int]

    def __contains__(self, element: ExtendedLimitWord) -> bool:
        return element in self.heights

    def projection(self) -> frozenset[LimitWord]:
        """The set of limit-word components of the pairs."""
        return frozenset(pair.word for pair in self.elements)

    def project(self) -> MonoidClosure:
        """Collapse pairs to their limit words, keeping the least heights."""
        elements: list[LimitWord] = []
        provenance: dict[LimitWord, SharpExpression] = {}
        heights: dict[LimitWord, int] = {}
        for pair in self.elements:
            u = pair.word
            h = self.heights[pair]
            if u not in heights:
                elements.append(u)
                provenance[u] = self.provenance[pair]
                heights[u] = h
            elif h < heights[u]:
                provenance[u] = self.provenance[pair]
                heights[u] = h
        return MonoidClosure(
            automaton=self.automaton,
            elements=tuple(elements),
            provenance=provenance,
            heights=heights,
        )


def extended_markov_monoid(
    automaton: Automaton, cap: int = DEFAULT_CAP
) -> ExtendedClosure:
    """Saturate letter pairs under concatenation and iterates-on-idempotents."""
    dim = len(automaton.states)
    one = LimitWord.identity(dim)
    identity = (ExtendedLimitWord(word=one, support=one), epsilon_expr(dim))
    generators = []
    for letter in automaton.alphabet:
        expression = letter_expr(automaton, letter)
        pair = ExtendedLimitWord(word=expression.word, support=expression.word)
        generators.append((pair, expression))
    order, expressions, heights = _saturate(identity, generators, cap)
    return ExtendedClosure(
        automaton=automaton,
        elements=order,
        provenance=expressions,
        heights=heights,
    )


@dataclass(frozen=True)
class LeakWitness:
    """An idempotent pair whose support leaks out of a recurrence class.

    State `r` is recurrent in the limit word, the support has an edge from
    `r` to `q`, and the limit word has no edge from `q` back to `r`.
    """

    element: ExtendedLimitWord
    expression: SharpExpression
    r: int
    q: int


def find_leak_witness(closure: ExtendedClosure) -> Optional[LeakWitness]:
    """The least leak witness (by element, then by the pair (r, q)), or None."""
    candidates: list[tuple[tuple, ExtendedLimitWord, int, int]] = []
    for pair in closure.elements:
        if not pair.is_idempotent():
            continue
        word, support = pair.word, pair.support
        recurrent = word.recurrent_states()
        leak: Optional[tuple[int, int]] = None
        for r in sorted(recurrent):
            row = support.rows[r]
            for q in range(word.dim):
                if row >> q & 1 and not word.rows[q] >> r & 1:
                    leak = (r, q)
                    break
            if leak is not None:
                break
        if leak is not None:
            candidates.append((pair.sort_key(), pair, leak[0], leak[1]))
    if not candidates:
        return None
    key, pair, r, q = min(candidates, key=lambda item: (item[0], item[2], item[3]))
    return LeakWitness(
        element=pair, expression=closure.provenance[pair], r=r, q=q
    )


@dataclass(frozen=True)
class LeaktightReport:
    leaktight: bool
    witness: Optional[LeakWitness]
    closure: ExtendedClosure


def decide_leaktight(
    automaton: Automaton, cap: int = DEFAULT_CAP
) -> LeaktightReport:
    """An automaton is leaktight when its extended closure has no leak."""
    closure = extended_markov_monoid(automaton, cap)
    witness = find_leak_witness(closure)
    return LeaktightReport(
        leaktight=witness is None, witness=witness, closure=closure
    )
