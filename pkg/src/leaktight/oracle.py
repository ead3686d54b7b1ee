"""Ground-truth numerics: brute-force values, word families, reified expressions.

Everything here is exact rational arithmetic.  Expressions over letters are
turned into concrete words (an iterate becomes a large power of its body) or
evaluated directly as matrix products with memoized powers; the resulting
probabilities are compared against the boolean claims of the limit words.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .automaton import (
    Automaton,
    Matrix,
    identity_matrix,
    matrix_power,
    matrix_product,
)
from .errors import CapExceeded, ValidationError
from .leaks import ExtendedClosure, ExtendedLimitWord, find_leak_witness
from .limitword import LimitWord
from .monoid import MonoidClosure
from .sharpexpr import Concat, Epsilon, Iterate, Letter, SharpExpression

__all__ = [
    "DEFAULT_BUDGET",
    "brute_force_value",
    "FamilyAtom",
    "FamilyPower",
    "FamilySeq",
    "WordFamily",
    "parse_family",
    "family_word",
    "evaluate_family_at",
    "evaluate_family",
    "reification_exponent",
    "reify",
    "expression_matrix",
    "EntryCheck",
    "ReificationReport",
    "check_consistency",
    "LowerBoundEntry",
    "LowerBoundReport",
    "check_lower_bound",
]

DEFAULT_BUDGET = 200_000

ZERO = Fraction(0)


# ---------------------------------------------------------------------------
# Brute force over bounded-length words


def brute_force_value(
    automaton: Automaton, max_len: int, budget: int = DEFAULT_BUDGET
) -> Fraction:
    """Exact maximum acceptance probability over words of length ≤ max_len.

    Breadth-first over state distributions with exact-rational
    deduplication: two words inducing the same distribution have the same
    futures, so only distinct distributions are expanded.
    """
    if max_len < 0:
        raise ValidationError("max_len must be nonnegative")
    start = automaton.initial_distribution()
    best = automaton.acceptance_of(start)
    seen = {start}
    frontier = [start]
    explored = 1
    for _ in range(max_len):
        if not frontier or best == 1:
            break
        next_frontier: list[tuple[Fraction, ...]] = []
        for distribution in frontier:
            for letter in automaton.alphabet:
                successor = automaton.step(distribution, letter)
                if successor in seen:
                    continue
                explored += 1
                if explored > budget:
                    raise CapExceeded(
                        f"budget exceeded: more than {budget} distributions"
                    )
                seen.add(successor)
                acceptance = automaton.acceptance_of(successor)
                if acceptance > best:
                    best = acceptance
                next_frontier.append(successor)
        frontier = next_frontier
    return best


# ---------------------------------------------------------------------------
# Word families: `(b a^n)^N`-style templates


@dataclass(frozen=True)
class FamilyAtom:
    letter: str


@dataclass(frozen=True)
class FamilyPower:
    base: "FamilyNode"
    exponent: Union[int, str]


@dataclass(frozen=True)
class FamilySeq:
    parts: tuple["FamilyNode", ...]


FamilyNode = Union[FamilyAtom, FamilyPower, FamilySeq]


@dataclass(frozen=True)
class WordFamily:
    """A parameterized word template with optional default bindings."""

    template: FamilyNode
    bindings: tuple[tuple[str, int], ...] = ()

    def parameters(self) -> frozenset[str]:
        return _free_parameters(self.template)


def _free_parameters(node: FamilyNode) -> frozenset[str]:
    if isinstance(node, FamilyAtom):
        return frozenset()
    if isinstance(node, FamilyPower):
        own = (
            frozenset((node.exponent,))
            if isinstance(node.exponent, str)
            else frozenset()
        )
        return own | _free_parameters(node.base)
    return frozenset().union(*(_free_parameters(p) for p in node.parts))


def _tokenize_family(text: str) -> list[tuple[int, str]]:
    tokens: list[tuple[int, str]] = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in "()^":
            tokens.append((i, c))
            i += 1
            continue
        j = i
        while j < len(text) and text[j] not in "()^" and not text[j].isspace():
            j += 1
        tokens.append((i, text[i:j]))
        i = j
    return tokens


def parse_family(
    text: str, bindings: Optional[Mapping[str, int]] = None
) -> WordFamily:
    """Parse a template like `(b a^n)^N` into a word family.

    Atoms are whitespace-separated letters; `^` raises the preceding letter
    or parenthesized group to a power, either a literal natural or a named
    parameter bound later.
    """
    tokens = _tokenize_family(text)
    pos = 0

    def parse_exponent(offset: int) -> Union[int, str]:
        nonlocal pos
        if pos >= len(tokens) or tokens[pos][1] in "()^":
            raise ValidationError(
                f"family syntax error at offset {offset}: '^' needs an exponent"
            )
        _, token = tokens[pos]
        pos += 1
        if token.isdigit():
            return int(token)
        if token.isidentifier():
            return token
        raise ValidationError(
            f"family syntax error at offset {offset}: exponent {token!r} is "
            "neither a natural number nor a parameter name"
        )

    def parse_sequence(depth: int) -> FamilyNode:
        nonlocal pos
        parts: list[FamilyNode] = []
        while pos < len(tokens):
            offset, token = tokens[pos]
            if token == ")":
                if depth == 0:
                    raise ValidationError(
                        f"family syntax error at offset {offset}: unmatched ')'"
                    )
                break
            if token == "^":
                raise ValidationError(
                    f"family syntax error at offset {offset}: '^' without a base"
                )
            if token == "(":
                pos += 1
                inner = parse_sequence(depth + 1)
                if pos >= len(tokens) or tokens[pos][1] != ")":
                    raise ValidationError(
                        f"family syntax error at offset {offset}: unclosed '('"
                    )
                pos += 1
                node: FamilyNode = inner
            else:
                pos += 1
                node = FamilyAtom(token)
            if pos < len(tokens) and tokens[pos][1] == "^":
                caret_offset = tokens[pos][0]
                pos += 1
                node = FamilyPower(base=node, exponent=parse_exponent(caret_offset))
            parts.append(node)
        if not parts:
            offset = tokens[pos][0] if pos < len(tokens) else len(tokens)
            raise ValidationError(
                f"family syntax error at offset {offset}: empty template"
            )
        return parts[0] if len(parts) == 1 else FamilySeq(tuple(parts))

    template = parse_sequence(0)
    if pos < len(tokens):
        raise ValidationError(
            f"family syntax error at offset {tokens[pos][0]}: unmatched ')'"
        )
    return WordFamily(
        template=template,
        bindings=tuple(sorted((bindings or {}).items())),
    )


def _resolve_exponent(
    exponent: Union[int, str], bindings: Mapping[str, int]
) -> int:
    if isinstance(exponent, int):
        value = exponent
    else:
        if exponent not in bindings:
            raise ValidationError(f"unbound parameter {exponent!r}")
        value = bindings[exponent]
    if not isinstance(value, int) or value < 0:
        raise ValidationError(f"exponent {exponent!r} must bind a natural number")
    return value


def _family_length(node: FamilyNode, bindings: Mapping[str, int]) -> int:
    if isinstance(node, FamilyAtom):
        return 1
    if isinstance(node, FamilyPower):
        return _resolve_exponent(node.exponent, bindings) * _family_length(
            node.base, bindings
        )
    return sum(_family_length(p, bindings) for p in node.parts)


def _merged_bindings(
    family: WordFamily, bindings: Optional[Mapping[str, int]]
) -> dict[str, int]:
    merged = dict(family.bindings)
    merged.update(bindings or {})
    return merged


def family_word(
    family: WordFamily,
    bindings: Optional[Mapping[str, int]] = None,
    budget: int = DEFAULT_BUDGET,
) -> tuple[str, ...]:
    """Instantiate the template into a concrete word."""
    merged = _merged_bindings(family, bindings)
    length = _family_length(family.template, merged)
    if length > budget:
        raise CapExceeded(
            f"budget exceeded: instantiated word has length {length} > {budget}"
        )

    def build(node: FamilyNode) -> tuple[str, ...]:
        if isinstance(node, FamilyAtom):
            return (node.letter,)
        if isinstance(node, FamilyPower):
            return build(node.base) * _resolve_exponent(node.exponent, merged)
        return tuple(letter for part in node.parts for letter in build(part))

    return build(family.template)


def _family_matrix(
    automaton: Automaton,
    node: FamilyNode,
    bindings: Mapping[str, int],
    memo: dict,
) -> Matrix:
    relevant = tuple(
        sorted((k, v) for k, v in bindings.items() if k in _free_parameters(node))
    )
    key = (node, relevant)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if isinstance(node, FamilyAtom):
        result = automaton.matrix(node.letter)
    elif isinstance(node, FamilyPower):
        base = _family_matrix(automaton, node.base, bindings, memo)
        result = matrix_power(base, _resolve_exponent(node.exponent, bindings))
    else:
        result = None
        for part in node.parts:
            block = _family_matrix(automaton, part, bindings, memo)
            result = block if result is None else matrix_product(result, block)
        if result is None:
            raise ValidationError("empty template")
    memo[key] = result
    return result


def evaluate_family_at(
    automaton: Automaton,
    family: WordFamily,
    bindings: Optional[Mapping[str, int]] = None,
    memo: Optional[dict] = None,
) -> Fraction:
    """Exact acceptance probability of one instantiation of the family."""
    merged = _merged_bindings(family, bindings)
    missing = family.parameters() - set(merged)
    if missing:
        raise ValidationError(f"unbound parameter {sorted(missing)[0]!r}")
    matrix = _family_matrix(
        automaton, family.template, merged, {} if memo is None else memo
    )
    row = matrix[automaton.state_index[automaton.initial]]
    return sum((row[f] for f in automaton.final_indices), start=ZERO)


def evaluate_family(
    automaton: Automaton,
    family: WordFamily,
    grid: Mapping[str, Sequence[int]],
) -> dict[tuple[tuple[str, int], ...], Fraction]:
    """Exact acceptance probabilities over a grid of parameter values.

    Matrix powers of inner blocks are shared across grid points that agree
    on the block's own parameters.
    """
    names = sorted(grid)
    memo: dict = {}
    table: dict[tuple[tuple[str, int], ...], Fraction] = {}

    def expand(prefix: dict[str, int], remaining: list[str]) -> None:
        if not remaining:
            point = tuple(sorted(prefix.items()))
            table[point] = evaluate_family_at(automaton, family, prefix, memo)
            return
        name, rest = remaining[0], remaining[1:]
        for value in grid[name]:
            expand({**prefix, name: value}, rest)

    expand({}, names)
    return table


# ---------------------------------------------------------------------------
# Reification of expressions into concrete words


def reification_exponent(expression: SharpExpression, n: int) -> int:
    """g(n) = n · (number of states)!, the repetition count for one iterate."""
    return n * math.factorial(expression.word.dim)


def reify(
    expression: SharpExpression, n: int, budget: int = DEFAULT_BUDGET
) -> tuple[str, ...]:
    """Substitute the expression into a concrete word at parameter n.

    A letter stands for itself, concatenation concatenates, and an iterate
    repeats its body's word g(n) = n·(|Q|!) times.
    """
    if n < 1:
        raise ValidationError("n must be at least 1")

    def length(node: SharpExpression) -> int:
        if isinstance(node, Epsilon):
            return 0
        if isinstance(node, Letter):
            return 1
        if isinstance(node, Concat):
            return length(node.left) + length(node.right)
        return reification_exponent(node, n) * length(node.child)

    total = length(expression)
    if total > budget:
        raise CapExceeded(
            f"budget exceeded: reified word has length {total} > {budget}"
        )

    def build(node: SharpExpression) -> tuple[str, ...]:
        if isinstance(node, Epsilon):
            return ()
        if isinstance(node, Letter):
            return (node.name,)
        if isinstance(node, Concat):
            return build(node.left) + build(node.right)
        return build(node.child) * reification_exponent(node, n)

    return build(expression)


def expression_matrix(
    automaton: Automaton,
    expression: SharpExpression,
    n: int,
    memo: Optional[dict] = None,
) -> Matrix:
    """The exact transition matrix of reify(expression, n), without the word.

    Structural evaluation with fast matrix powers: equal subexpressions are
    computed once via the memo, which may be shared across calls at the
    same n.
    """
    if n < 1:
        raise ValidationError("n must be at least 1")
    table = {} if memo is None else memo

    def evaluate(node: SharpExpression) -> Matrix:
        key = (node, n)
        hit = table.get(key)
        if hit is not None:
            return hit
        if isinstance(node, Epsilon):
            result = identity_matrix(len(automaton.states))
        elif isinstance(node, Letter):
            result = automaton.matrix(node.name)
        elif isinstance(node, Concat):
            result = matrix_product(evaluate(node.left), evaluate(node.right))
        else:
            result = matrix_power(
                evaluate(node.child), reification_exponent(node, n)
            )
        table[key] = result
        return result

    return evaluate(expression)


# ---------------------------------------------------------------------------
# Consistency: measured probabilities against claimed bits


@dataclass(frozen=True)
class EntryCheck:
    s: int
    t: int
    claimed: int
    measured: Fraction
    ok: bool


@dataclass(frozen=True)
class ReificationReport:
    """Thresholded comparison of one element against its reified expression."""

    element: LimitWord
    expression: SharpExpression
    n: int
    entries: tuple[EntryCheck, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.element.dim**2:
            raise ValidationError("report must cover every state pair")

    @property
    def ok(self) -> bool:
        return all(entry.ok for entry in self.entries)

    @property
    def status(self) -> str:
        return "pass" if self.ok else f"inconclusive at n={self.n}"


def check_consistency(
    automaton: Automaton,
    closure: MonoidClosure,
    n: int = 12,
    zero_eps: Fraction = Fraction(1, 1000),
    one_delta: Fraction = Fraction(1, 100),
) -> list[ReificationReport]:
    """Check every closure element against measured probabilities.

    For each element's expression, the exact matrix of the reified word at
    parameter n is computed; entries claimed 0 must have measured
    probability ≤ zero_eps and entries claimed 1 must have measured
    probability ≥ one_delta.  A failing report means the check was
    inconclusive at this n, not that the claim is refuted.
    """
    memo: dict = {}
    reports = []
    dim = len(automaton.states)
    for element in closure.elements:
        expression = closure.provenance[element]
        matrix = expression_matrix(automaton, expression, n, memo)
        entries = []
        for s in range(dim):
            for t in range(dim):
                claimed = 1 if (s, t) in element else 0
                measured = matrix[s][t]
                ok = measured >= one_delta if claimed else measured <= zero_eps
                entries.append(
                    EntryCheck(
                        s=s, t=t, claimed=claimed, measured=measured, ok=ok
                    )
                )
        reports.append(
            ReificationReport(
                element=element,
                expression=expression,
                n=n,
                entries=tuple(entries),
            )
        )
    return reports


# ---------------------------------------------------------------------------
# Lower bound: supports exactly, positive entries not too small


def _expression_depth(node: SharpExpression) -> int:
    if isinstance(node, (Epsilon, Letter)):
        return 0
    if isinstance(node, Concat):
        return 1 + max(_expression_depth(node.left), _expression_depth(node.right))
    return 1 + _expression_depth(node.child)


@dataclass(frozen=True)
class LowerBoundEntry:
    s: int
    t: int
    measured: Fraction
    ok: bool


@dataclass(frozen=True)
class LowerBoundReport:
    element: ExtendedLimitWord
    expression: SharpExpression
    n: int
    depth: int
    support_exact: bool
    entries: tuple[LowerBoundEntry, ...]

    @property
    def ok(self) -> bool:
        return self.support_exact and all(entry.ok for entry in self.entries)


def _at_least_power(
    measured: Fraction, base: Fraction, exponent: int, exponent_cap: int
) -> bool:
    """Exact comparison measured ≥ base**exponent (base in (0, 1])."""
    if base == 1:
        return measured >= 1
    if measured >= base:
        return True
    if measured <= 0:
        return False
    if exponent > exponent_cap:
        raise CapExceeded(
            f"budget exceeded: lower-bound exponent {exponent} > {exponent_cap}"
        )
    p, q = base.numerator, base.denominator
    a, b = measured.numerator, measured.denominator
    return a * q**exponent >= b * p**exponent


def check_lower_bound(
    automaton: Automaton,
    closure: ExtendedClosure,
    expressions: Optional[Iterable[SharpExpression]] = None,
    n: int = 3,
    exponent_cap: int = 2**20,
) -> list[LowerBoundReport]:
    """Check supports exactly and positive entries against p_min^(2^depth).

    Only meaningful when the extended closure has no leak witness, which is
    enforced.  For each element (u, u₊) with expression e: the support of
    the reified word's matrix must equal u₊ exactly, and every entry where
    u claims 1 must be at least p_min^(2^d) with d the depth of e counting
    every concatenation and iterate as one level.
    """
    if find_leak_witness(closure) is not None:
        raise ValidationError("precondition violation: leak witness present")
    p_min = automaton.min_transition_probability
    targets: list[tuple[ExtendedLimitWord, SharpExpression]]
    if expressions is None:
        targets = [
            (element, closure.provenance[element])
            for element in closure.elements
        ]
    else:
        by_expression = {
            closure.provenance[element]: element for element in closure.elements
        }
        targets = []
        for expression in expressions:
            if expression not in by_expression:
                raise ValidationError(
                    "membership violation: expression not in closure provenance"
                )
            targets.append((by_expression[expression], expression))
    memo: dict = {}
    dim = len(automaton.states)
    reports = []
    for element, expression in targets:
        matrix = expression_matrix(automaton, expression, n, memo)
        support_rows = []
        for s in range(dim):
            bits = 0
            for t in range(dim):
                if matrix[s][t]:
                    bits |= 1 << t
            support_rows.append(bits)
        support_exact = tuple(support_rows) == element.support.rows
        depth = _expression_depth(expression)
        exponent = 2**depth
        entries = []
        for s in range(dim):
            for t in range(dim):
                if (s, t) not in element.word:
                    continue
                measured = matrix[s][t]
                ok = _at_least_power(measured, p_min, exponent, exponent_cap)
                entries.append(
                    LowerBoundEntry(s=s, t=t, measured=measured, ok=ok)
                )
        reports.append(
            LowerBoundReport(
                element=element,
                expression=expression,
                n=n,
                depth=depth,
                support_exact=support_exact,
                entries=tuple(entries),
            )
        )
    return reports
