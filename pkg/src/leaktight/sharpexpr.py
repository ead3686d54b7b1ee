"""Expressions over letters with concatenation and the iterate operator.

Each node carries the limit word it evaluates to, so building an expression
and evaluating it are the same act; the iterate constructor enforces the
idempotency precondition exactly like `LimitWord.iterate`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Union

from .errors import ValidationError
from .limitword import LimitWord, letter_abstraction

if TYPE_CHECKING:  # pragma: no cover
    from .automaton import Automaton

__all__ = [
    "SharpExpression",
    "Epsilon",
    "Letter",
    "Concat",
    "Iterate",
    "epsilon_expr",
    "letter_expr",
    "concat_expr",
    "iterate_expr",
    "parse_expression",
]


@dataclass(frozen=True)
class Epsilon:
    """The empty word; evaluates to the identity."""

    word: LimitWord

    @property
    def height(self) -> int:
        return 0

    @property
    def depth(self) -> int:
        return 0

    def render(self) -> str:
        return "ε"


@dataclass(frozen=True)
class Letter:
    """A single alphabet letter."""

    name: str
    word: LimitWord

    @property
    def height(self) -> int:
        return 0

    @property
    def depth(self) -> int:
        return 0

    def render(self) -> str:
        return self.name


@dataclass(frozen=True)
class Concat:
    """Sequential composition of two expressions."""

    left: "SharpExpression"
    right: "SharpExpression"
    word: LimitWord

    @property
    def height(self) -> int:
        return max(self.left.height, self.right.height)

    @property
    def depth(self) -> int:
        return 1 + max(self.left.depth, self.right.depth)

    def render(self) -> str:
        return f"{self.left.render()} {self.right.render()}"


@dataclass(frozen=True)
class Iterate:
    """The iterate of an idempotent expression."""

    child: "SharpExpression"
    word: LimitWord

    @property
    def height(self) -> int:
        return 1 + self.child.height

    @property
    def depth(self) -> int:
        return 1 + self.child.depth

    def render(self) -> str:
        return f"({self.child.render()})#"


SharpExpression = Union[Epsilon, Letter, Concat, Iterate]


def epsilon_expr(dim: int) -> Epsilon:
    return Epsilon(word=LimitWord.identity(dim))


def letter_expr(automaton: "Automaton", name: str) -> Letter:
    return Letter(name=name, word=letter_abstraction(automaton, name))


def concat_expr(left: SharpExpression, right: SharpExpression) -> Concat:
    return Concat(left=left, right=right, word=left.word.concat(right.word))


def iterate_expr(child: SharpExpression) -> Iterate:
    if not child.word.is_idempotent():
        raise ValidationError(
            "precondition violation: iterate of a non-idempotent expression"
        )
    return Iterate(child=child, word=child.word.iterate())


def _tokenize(text: str) -> list[tuple[int, str]]:
    tokens: list[tuple[int, str]] = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "(":
            tokens.append((i, "("))
            i += 1
            continue
        if c == ")":
            if text[i : i + 2] != ")#":
                raise ValidationError(
                    f"expression syntax error at offset {i}: ')' must be followed by '#'"
                )
            tokens.append((i, ")#"))
            i += 2
            continue
        if c == "#":
            raise ValidationError(
                f"expression syntax error at offset {i}: '#' outside ')#'"
            )
        j = i
        while j < len(text) and text[j] not in "()#" and not text[j].isspace():
            j += 1
        tokens.append((i, text[i:j]))
        i = j
    return tokens


def parse_expression(text: str, automaton: "Automaton") -> SharpExpression:
    """Parse `a b (c)#`-style text into an expression over the automaton's letters.

    Whitespace-separated atoms concatenate left to right; `( … )#` applies the
    iterate operator to the bracketed expression; `ε` is the empty word.
    """
    tokens = _tokenize(text)
    pos = 0

    def parse_sequence(stop_at_close: bool) -> SharpExpression:
        nonlocal pos
        parts: list[SharpExpression] = []
        while pos < len(tokens):
            offset, token = tokens[pos]
            if token == ")#":
                break
            if token == "(":
                pos += 1
                inner = parse_sequence(stop_at_close=True)
                if pos >= len(tokens) or tokens[pos][1] != ")#":
                    raise ValidationError(
                        f"expression syntax error at offset {offset}: unclosed '('"
                    )
                pos += 1
                parts.append(iterate_expr(inner))
                continue
            pos += 1
            if token == "ε":
                parts.append(epsilon_expr(len(automaton.states)))
                continue
            if token not in automaton.letter_index:
                raise ValidationError(
                    f"expression syntax error at offset {offset}: "
                    f"unknown letter {token!r}"
                )
            parts.append(letter_expr(automaton, token))
        if not parts:
            if stop_at_close and pos < len(tokens):
                raise ValidationError(
                    f"expression syntax error at offset {tokens[pos][0]}: empty group"
                )
            raise ValidationError("expression syntax error: empty expression")
        expr = parts[0]
        for part in parts[1:]:
            expr = concat_expr(expr, part)
        return expr

    expr = parse_sequence(stop_at_close=False)
    if pos < len(tokens):
        raise ValidationError(
            f"expression syntax error at offset {tokens[pos][0]}: unmatched ')#'"
        )
    return expr
