"""Object language: AST, parser, printer and a seeded random generator.

Concrete grammar::

    expr := sum
    sum  := atom { "+" atom }
    atom := INT | "any" "(" INT "," INT ")"
          | "ifnz" expr "{" expr "}" "else" "{" expr "}"
          | "(" expr ")"
    INT  := ["-"] DIGIT+
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import ParseError

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class Num:
    n: int


@dataclass(frozen=True)
class Plus:
    e1: Expr
    e2: Expr


@dataclass(frozen=True)
class Ifnz:
    e1: Expr
    e2: Expr
    e3: Expr


@dataclass(frozen=True)
class Any:
    """Nondeterministic literal ranging over ``lo..hi`` inclusive."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"any({self.lo},{self.hi}): empty range")


Expr = Union[Num, Plus, Ifnz, Any]


def children(e: Expr) -> tuple[Expr, ...]:
    if isinstance(e, Plus):
        return (e.e1, e.e2)
    if isinstance(e, Ifnz):
        return (e.e1, e.e2, e.e3)
    return ()


def depth(e: Expr) -> int:
    return 1 + max((depth(c) for c in children(e)), default=0)


def size(e: Expr) -> int:
    return 1 + sum(size(c) for c in children(e))


def walk(e: Expr) -> Iterator[Expr]:
    """Pre-order traversal."""
    yield e
    for c in children(e):
        yield from walk(c)


def any_nodes(e: Expr) -> list[Any]:
    """Every ``Any`` occurrence in pre-order; equal nodes are listed once per occurrence."""
    return [n for n in walk(e) if isinstance(n, Any)]


def is_deterministic(e: Expr) -> bool:
    return not any_nodes(e)


# -- printing ---------------------------------------------------------------


def render(e: Expr) -> str:
    if isinstance(e, Num):
        return str(e.n)
    if isinstance(e, Any):
        return f"any({e.lo},{e.hi})"
    if isinstance(e, Plus):
        right = render(e.e2)
        if isinstance(e.e2, Plus):
            right = f"({right})"
        return f"{render(e.e1)}+{right}"
    if isinstance(e, Ifnz):
        return f"ifnz {render(e.e1)} {{ {render(e.e2)} }} else {{ {render(e.e3)} }}"
    raise TypeError(f"not an expression: {e!r}")


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<int>-?[0-9]+)
  | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[+(),{}])
    """,
    re.VERBOSE,
)
_KEYWORDS = {"ifnz", "else", "any"}


@dataclass(frozen=True)
class _Token:
    kind: str  # "int", "kw", punctuation character, or "eof"
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind == "ws":
            newlines = chunk.count("\n")
            if newlines:
                line += newlines
                line_start = pos + chunk.rindex("\n") + 1
        elif kind == "word":
            if chunk not in _KEYWORDS:
                raise ParseError(f"unknown word {chunk!r}", line, col)
            tokens.append(_Token("kw", chunk, line, col))
        elif kind == "punct":
            tokens.append(_Token(chunk, chunk, line, col))
        else:
            tokens.append(_Token("int", chunk, line, col))
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


_ATOM_START = frozenset({"INT", "any", "ifnz", "("})


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def fail(self, expected, message=None) -> ParseError:
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        return ParseError(message or f"unexpected {found}", t.line, t.column, frozenset(expected))

    def expect(self, kind: str, text: str | None = None) -> _Token:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            raise self.fail({text or kind})
        self.i += 1
        return t

    def integer(self) -> int:
        t = self.tok
        if t.kind != "int":
            raise self.fail({"INT"})
        n = int(t.text)
        if not INT64_MIN <= n <= INT64_MAX:
            raise ParseError(f"integer literal {t.text} outside the signed 64-bit range", t.line, t.column)
        self.i += 1
        return n

    def expr(self) -> Expr:
        e = self.atom()
        while self.tok.kind == "+":
            self.i += 1
            e = Plus(e, self.atom())
        return e

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "int":
            return Num(self.integer())
        if t.kind == "(":
            self.i += 1
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "kw" and t.text == "any":
            self.i += 1
            self.expect("(")
            lo = self.integer()
            self.expect(",")
            hi = self.integer()
            self.expect(")")
            if lo > hi:
                raise ParseError(f"any({lo},{hi}) has lo > hi", t.line, t.column)
            return Any(lo, hi)
        if t.kind == "kw" and t.text == "ifnz":
            self.i += 1
            guard = self.expr()
            self.expect("{")
            then = self.expr()
            self.expect("}")
            self.expect("kw", "else")
            self.expect("{")
            other = self.expr()
            self.expect("}")
            return Ifnz(guard, then, other)
        raise self.fail(_ATOM_START)


def parse(text: str) -> Expr:
    """Parse ``text`` into an expression, raising :class:`ParseError` on malformed input."""
    p = _Parser(text)
    try:
        e = p.expr()
    except RecursionError:
        raise ParseError("expression nested too deeply", p.tok.line, p.tok.column) from None
    if p.tok.kind != "eof":
        raise p.fail({"+", "end of input"})
    return e


# -- generation -------------------------------------------------------------

LITERAL_RANGE = (-16, 16)
MAX_ANY_WIDTH = 8

# Relative weights below the root; the root is a Plus or Ifnz whenever
# max_depth > 1, and depth-1 positions are always leaves.
_WEIGHTS = {"num": 40, "any": 8, "plus": 28, "ifnz": 24}


def generate(seed: int, max_depth: int, allow_any: bool) -> Expr:
    """Deterministic pseudo-random expression of depth at most ``max_depth``."""
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    rng = random.Random(seed)
    kinds = [k for k in _WEIGHTS if allow_any or k != "any"]
    weights = [_WEIGHTS[k] for k in kinds]
    leaves = [k for k in kinds if k in ("num", "any")]
    leaf_weights = [_WEIGHTS[k] for k in leaves]
    nodes = ["plus", "ifnz"]
    node_weights = [_WEIGHTS[k] for k in nodes]

    def gen(budget: int, root: bool = False) -> Expr:
        if budget == 1:
            kind = rng.choices(leaves, leaf_weights)[0]
        elif root:
            kind = rng.choices(nodes, node_weights)[0]
        else:
            kind = rng.choices(kinds, weights)[0]
        if kind == "num":
            return Num(rng.randint(*LITERAL_RANGE))
        if kind == "any":
            lo = rng.randint(*LITERAL_RANGE)
            return Any(lo, lo + rng.randrange(MAX_ANY_WIDTH))
        if kind == "plus":
            return Plus(gen(budget - 1), gen(budget - 1))
        return Ifnz(gen(budget - 1), gen(budget - 1), gen(budget - 1))

    return gen(max_depth, root=True)
