"""Saturation of the boolean-abstraction monoid and the value-1 decision.

The closure starts from the identity and the letter abstractions, closes
under concatenation, and — layer by layer — adds the iterate of every
idempotent element.  Each element is recorded together with a witnessing
expression and the least number of nested iterates that can produce it.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .automaton import Automaton
from .errors import CapExceeded, ValidationError
from .limitword import LimitWord
from .sharpexpr import (
    SharpExpression,
    concat_expr,
    epsilon_expr,
    iterate_expr,
    letter_expr,
)

__all__ = [
    "DEFAULT_CAP",
    "MonoidClosure",
    "markov_monoid",
    "is_value1_witness",
    "find_value1_witness",
    "UpperBound",
    "Certificate",
    "Value1Report",
    "decide_value1",
    "sharp_height",
    "bounded_witness_search",
    "j_leq",
    "two_sided_ideal",
]

DEFAULT_CAP = 2**20


# ---------------------------------------------------------------------------
# Generic stratified saturation
#
# Works for any element type with concat / is_idempotent / iterate methods
# (plain limit words and extended pairs alike).  The single closure pointer
# guarantees every ordered product is computed exactly once; each layer is
# fully concatenation-closed before the next round of iterates, which makes
# the recorded iterate-nesting heights minimal.


def _saturate(identity, generators, cap: int):
    elements: dict = {}
    order: list = []
    expressions: dict = {}
    heights: dict = {}

    def add(element, expression, height) -> None:
        if element in elements:
            return
        if len(order) >= cap:
            raise CapExceeded(
                f"monoid closure exceeded cap of {cap} elements"
            )
        elements[element] = True
        order.append(element)
        expressions[element] = expression
        heights[element] = height

    add(identity[0], identity[1], 0)
    for element, expression in generators:
        add(element, expression, 0)

    pointer = 0

    def close() -> None:
        nonlocal pointer
        while pointer < len(order):
            x = order[pointer]
            xe, xh = expressions[x], heights[x]
            for q in range(pointer + 1):
                y = order[q]
                ye, yh = expressions[y], heights[y]
                h = xh if xh >= yh else yh
                xy = x.concat(y)
                if xy not in elements:
                    add(xy, concat_expr(xe, ye), h)
                if x is not y:
                    yx = y.concat(x)
                    if yx not in elements:
                        add(yx, concat_expr(ye, xe), h)
            pointer += 1

    close()
    level = 0
    while True:
        batch = [u for u in order if heights[u] == level and u.is_idempotent()]
        grew = False
        for u in batch:
            v = u.iterate()
            if v not in elements:
                add(v, iterate_expr(expressions[u]), level + 1)
                grew = True
        if not grew:
            break
        close()
        level += 1
    return tuple(order), expressions, heights


# ---------------------------------------------------------------------------
# The limit-word monoid


@dataclass(frozen=True)
class MonoidClosure:
    """All limit words generated by an automaton's letters.

    `elements` is in discovery order, starting with the identity; each
    element has a witnessing expression in `provenance` and its least
    iterate-nesting height in `heights`.
    """

    automaton: Automaton
    elements: tuple[LimitWord, ...]
    provenance: Mapping[LimitWord, SharpExpression]
    heights: Mapping[LimitWord, int]

    def __contains__(self, element: LimitWord) -> bool:
        return element in self.heights

    @property
    def max_height(self) -> int:
        return max(self.heights.values())


def markov_monoid(automaton: Automaton, cap: int = DEFAULT_CAP) -> MonoidClosure:
    """Saturate the letter abstractions under concatenation and iterates."""
    dim = len(automaton.states)
    identity = (LimitWord.identity(dim), epsilon_expr(dim))
    generators = []
    for letter in automaton.alphabet:
        expression = letter_expr(automaton, letter)
        generators.append((expression.word, expression))
    order, expressions, heights = _saturate(identity, generators, cap)
    return MonoidClosure(
        automaton=automaton,
        elements=order,
        provenance=expressions,
        heights=heights,
    )


def is_value1_witness(automaton: Automaton, element: LimitWord) -> bool:
    """True when every successor of the initial state is a final state."""
    final_mask = 0
    for f in automaton.final_indices:
        final_mask |= 1 << f
    row = element.rows[automaton.state_index[automaton.initial]]
    return row & ~final_mask == 0


def find_value1_witness(closure: MonoidClosure) -> Optional[LimitWord]:
    """The least witness in row-major bit order, or None."""
    automaton = closure.automaton
    witnesses = [
        element
        for element in closure.elements
        if is_value1_witness(automaton, element)
    ]
    if not witnesses:
        return None
    return min(witnesses, key=LimitWord.sort_key)


# ---------------------------------------------------------------------------
# Certificates


@dataclass(frozen=True)
class UpperBound:
    """Symbolic upper bound on the value when no witness exists.

    With p_min the least positive transition probability and J the size of
    the extended closure, the value is at most 1 - p_min^(2^h) for
    h = 3·J².
    """

    p_min: Fraction
    monoid_size: int

    @property
    def height(self) -> int:
        return 3 * self.monoid_size**2

    @property
    def formula(self) -> str:
        return f"1 - ({self.p_min})^(2^{self.height})"


@dataclass(frozen=True)
class Certificate:
    """Outcome of the value-1 decision.

    kind is one of "value1" (with a witnessing expression), "no-witness"
    (with a symbolic upper bound), or "not-applicable".
    """

    kind: str
    witness: Optional[SharpExpression] = None
    element: Optional[LimitWord] = None
    bound: Optional[UpperBound] = None
    note: str = ""

    def __post_init__(self) -> None:
        if self.kind not in ("value1", "no-witness", "not-applicable"):
            raise ValidationError(f"unknown certificate kind {self.kind!r}")
        if self.kind == "value1" and self.witness is None:
            raise ValidationError("value1 certificate needs a witness expression")
        if self.kind == "no-witness" and self.bound is None:
            raise ValidationError("no-witness certificate needs an upper bound")


@dataclass(frozen=True)
class Value1Report:
    value1: bool
    certificate: Certificate
    closure: MonoidClosure
    leaktight: Optional[bool] = None


def decide_value1(
    automaton: Automaton,
    cap: int = DEFAULT_CAP,
    extended=None,
) -> Value1Report:
    """Decide whether the automaton has value 1.

    A found witness is always conclusive.  The negative answer comes with a
    symbolic upper bound and is guaranteed only if the automaton is
    leaktight, which is checked on the extended closure (computed here
    unless one is passed in).
    """
    closure = markov_monoid(automaton, cap)
    witness = find_value1_witness(closure)
    if witness is not None:
        certificate = Certificate(
            kind="value1",
            witness=closure.provenance[witness],
            element=witness,
        )
        return Value1Report(
            value1=True, certificate=certificate, closure=closure
        )
    from .leaks import extended_markov_monoid, find_leak_witness

    ext = extended if extended is not None else extended_markov_monoid(automaton, cap)
    bound = UpperBound(
        p_min=automaton.min_transition_probability,
        monoid_size=len(ext.elements),
    )
    leak = find_leak_witness(ext)
    certificate = Certificate(
        kind="no-witness",
        bound=bound,
        note="guaranteed only if leaktight",
    )
    return Value1Report(
        value1=False,
        certificate=certificate,
        closure=closure,
        leaktight=leak is None,
    )


def sharp_height(automaton: Automaton, cap: int = DEFAULT_CAP) -> int:
    """Largest minimal iterate-nesting height over the closure."""
    return markov_monoid(automaton, cap).max_height


# ---------------------------------------------------------------------------
# Height-bounded witness search


class _WitnessFound(Exception):
    def __init__(self, expression: SharpExpression) -> None:
        self.expression = expression


def bounded_witness_search(
    automaton: Automaton,
    max_height: Optional[int] = None,
    cap: int = DEFAULT_CAP,
) -> Optional[SharpExpression]:
    """Search for a value-1 witness using at most `max_height` nested iterates.

    `max_height=None` uses the number of states, which is always enough to
    find a witness when one exists.  Elements are expanded in order of their
    least iterate-nesting height (concatenation keeps the larger operand
    height, an iterate adds one), and the search returns as soon as a
    witness is offered.
    """
    bound = len(automaton.states) if max_height is None else max_height
    if bound < 0:
        raise ValidationError("max_height must be nonnegative")
    dim = len(automaton.states)
    best: dict[LimitWord, int] = {}
    expr_of: dict[LimitWord, SharpExpression] = {}
    heap: list[tuple[int, int, LimitWord]] = []
    ticket = 0

    def offer(element: LimitWord, height: int, expression: SharpExpression) -> None:
        nonlocal ticket
        known = best.get(element)
        if known is not None and known <= height:
            return
        if known is None:
            if len(best) >= cap:
                raise CapExceeded(
                    f"witness search exceeded cap of {cap} elements"
                )
            if is_value1_witness(automaton, element):
                raise _WitnessFound(expression)
        best[element] = height
        expr_of[element] = expression
        heapq.heappush(heap, (height, ticket, element))
        ticket += 1

    try:
        offer(LimitWord.identity(dim), 0, epsilon_expr(dim))
        for letter in automaton.alphabet:
            expression = letter_expr(automaton, letter)
            offer(expression.word, 0, expression)
        while heap:
            hx, _, x = heapq.heappop(heap)
            if hx > best[x]:
                continue
            ex = expr_of[x]
            for y in list(best):
                hy, ey = best[y], expr_of[y]
                h = hx if hx >= hy else hy
                offer(x.concat(y), h, concat_expr(ex, ey))
                offer(y.concat(x), h, concat_expr(ey, ex))
            if hx + 1 <= bound and x.is_idempotent():
                v = x.iterate()
                if v != x:
                    offer(v, hx + 1, iterate_expr(ex))
    except _WitnessFound as found:
        return found.expression
    return None


# ---------------------------------------------------------------------------
# The two-sided-ideal preorder


def two_sided_ideal(
    element: LimitWord, elements: Iterable[LimitWord]
) -> frozenset[LimitWord]:
    """All products x·element·y over the given elements."""
    pool = tuple(elements)
    left = {x.concat(element) for x in pool}
    return frozenset(l.concat(y) for l in left for y in pool)


def j_leq(u: LimitWord, v: LimitWord, closure: MonoidClosure) -> bool:
    """Whether u lies in the two-sided ideal generated by v."""
    if u not in closure:
        raise ValidationError("membership violation: first element not in closure")
    if v not in closure:
        raise ValidationError("membership violation: second element not in closure")
    return u in two_sided_ideal(v, closure.elements)
