"""Formulas over the signature {&, |, ->, ~, #}.

``~`` is the paracomplete negation and ``#`` the undeterminedness operator.
Formulas are immutable trees; equality is syntactic identity.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "Formula", "Var", "Neg", "Undet", "And", "Or", "Imp",
    "FormulaSet", "ParseError",
    "parse", "render", "substitute", "subformulas", "variables", "depth",
]


class Formula:
    __slots__ = ("_h",)

    def _cached_hash(self) -> int:
        # trees are hashed constantly (closures, caches, sets); children cache
        # their own hash, so this is O(1) per node after the first call
        try:
            return self._h
        except AttributeError:
            h = hash((type(self).__name__, *(getattr(self, f) for f in self.__dataclass_fields__)))
            object.__setattr__(self, "_h", h)
            return h

    def __str__(self) -> str:
        return render(self)

    # operator sugar; `>>` is implication but binds tighter than & and |,
    # so parenthesize when mixing.
    def __invert__(self) -> "Neg":
        return Neg(self)

    def __and__(self, other: "Formula") -> "And":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Or":
        return Or(self, other)

    def __rshift__(self, other: "Formula") -> "Imp":
        return Imp(self, other)


@dataclass(frozen=True, slots=True, repr=False)
class Var(Formula):
    name: str

    def __repr__(self) -> str:
        return f"Var({self.name!r})"


@dataclass(frozen=True, slots=True, repr=False)
class Neg(Formula):
    child: Formula

    def __repr__(self) -> str:
        return f"Neg({self.child!r})"


@dataclass(frozen=True, slots=True, repr=False)
class Undet(Formula):
    child: Formula

    def __repr__(self) -> str:
        return f"Undet({self.child!r})"


@dataclass(frozen=True, slots=True, repr=False)
class And(Formula):
    left: Formula
    right: Formula

    def __repr__(self) -> str:
        return f"And({self.left!r}, {self.right!r})"


@dataclass(frozen=True, slots=True, repr=False)
class Or(Formula):
    left: Formula
    right: Formula

    def __repr__(self) -> str:
        return f"Or({self.left!r}, {self.right!r})"


@dataclass(frozen=True, slots=True, repr=False)
class Imp(Formula):
    left: Formula
    right: Formula

    def __repr__(self) -> str:
        return f"Imp({self.left!r}, {self.right!r})"


UNARY = (Neg, Undet)
BINARY = (And, Or, Imp)

for _cls in (Var, *UNARY, *BINARY):
    _cls.__hash__ = Formula._cached_hash


class FormulaSet:
    """Insertion-ordered, duplicate-free collection of formulas."""

    __slots__ = ("_items", "_index")

    def __init__(self, items: Iterable[Formula] = ()):
        index: dict[Formula, int] = {}
        for f in items:
            if f not in index:
                index[f] = len(index)
        self._index = index
        self._items = tuple(index)

    def __iter__(self) -> Iterator[Formula]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __getitem__(self, i: int) -> Formula:
        return self._items[i]

    def __contains__(self, f: object) -> bool:
        return f in self._index

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FormulaSet):
            return self._items == other._items
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        return "FormulaSet([" + ", ".join(render(f) for f in self._items) + "])"

    def index(self, f: Formula) -> int:
        return self._index[f]

    def union(self, other: Iterable[Formula]) -> "FormulaSet":
        return FormulaSet((*self._items, *other))

    def without(self, f: Formula) -> "FormulaSet":
        return FormulaSet(g for g in self._items if g != f)


# ---------------------------------------------------------------- parsing

class ParseError(ValueError):
    """Syntax error carrying the byte offset and the set of acceptable tokens."""

    def __init__(self, message: str, offset: int, expected: Iterable[str] = ()):
        self.offset = offset
        self.expected = frozenset(expected)
        exp = ", ".join(sorted(self.expected))
        super().__init__(f"{message} at offset {offset}" + (f" (expected one of: {exp})" if exp else ""))


_TOKEN_RE = re.compile(r"\s*(?:(->)|([~#&|()])|([A-Za-z][A-Za-z0-9_]*)|(//[^\n]*))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Return (kind, value, byte_offset) triples, ending with an 'eof' token."""
    tokens = []
    pos = 0
    n = len(text)
    while True:
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            # trailing whitespace or an illegal character
            rest = text[pos:]
            stripped = rest.lstrip()
            if not stripped:
                break
            bad = pos + (len(rest) - len(stripped))
            raise ParseError(f"unexpected character {stripped[0]!r}",
                             len(text[:bad].encode()),
                             {"identifier", "~", "#", "("})
        pos = m.end()
        arrow, punct, ident, comment = m.groups()
        start = len(text[:m.start(m.lastindex)].encode())
        if comment is not None:
            continue
        if arrow:
            tokens.append(("->", arrow, start))
        elif punct:
            tokens.append((punct, punct, start))
        else:
            tokens.append(("ident", ident, start))
        if pos >= n:
            break
    tokens.append(("eof", "", len(text.encode())))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected: Iterable[str]) -> ParseError:
        kind, value, off = self.peek()
        what = "end of input" if kind == "eof" else repr(value)
        return ParseError(f"unexpected {what}", off, expected)

    def formula(self) -> Formula:
        return self.imp()

    def imp(self) -> Formula:
        left = self.or_()
        if self.peek()[0] == "->":
            self.advance()
            return Imp(left, self.imp())
        return left

    def or_(self) -> Formula:
        left = self.and_()
        while self.peek()[0] == "|":
            self.advance()
            left = Or(left, self.and_())
        return left

    def and_(self) -> Formula:
        left = self.unary()
        while self.peek()[0] == "&":
            self.advance()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        kind, value, _ = self.peek()
        if kind == "~":
            self.advance()
            return Neg(self.unary())
        if kind == "#":
            self.advance()
            return Undet(self.unary())
        if kind == "ident":
            self.advance()
            return Var(value)
        if kind == "(":
            self.advance()
            inner = self.formula()
            if self.peek()[0] != ")":
                raise self.fail({")", "&", "|", "->"})
            self.advance()
            return inner
        raise self.fail({"identifier", "~", "#", "("})


def parse(text: str) -> Formula:
    """Parse concrete syntax into a formula.

    ``~`` and ``#`` bind tightest, then ``&``, ``|`` and ``->``. The binary
    ``&`` and ``|`` associate to the left, ``->`` to the right.

    >>> parse("p | ~p | #p")
    Or(Or(Var('p'), Neg(Var('p'))), Undet(Var('p')))
    """
    p = _Parser(text)
    f = p.formula()
    if p.peek()[0] != "eof":
        raise p.fail({"&", "|", "->", "end of input"})
    return f


# ---------------------------------------------------------------- printing

_PREC = {Imp: 1, Or: 2, And: 3, Neg: 4, Undet: 4, Var: 5}
_SYMBOL = {Imp: "->", Or: "|", And: "&", Neg: "~", Undet: "#"}


def render(f: Formula) -> str:
    """Print with the minimum number of parentheses needed to re-parse."""
    return _render(f, 0)


def _render(f: Formula, ctx: int) -> str:
    kind = type(f)
    prec = _PREC[kind]
    if kind is Var:
        return f.name
    if kind in UNARY:
        s = _SYMBOL[kind] + _render(f.child, 4)
    elif kind is Imp:
        s = f"{_render(f.left, 2)} -> {_render(f.right, 1)}"
    else:
        # left-associative: right operand must bind strictly tighter
        s = f"{_render(f.left, prec)} {_SYMBOL[kind]} {_render(f.right, prec + 1)}"
    return f"({s})" if prec < ctx else s


# ---------------------------------------------------------------- structure

def substitute(f: Formula, binding: Mapping[str, Formula]) -> Formula:
    """Replace variables homomorphically; unbound variables stay put."""
    kind = type(f)
    if kind is Var:
        return binding.get(f.name, f)
    if kind in UNARY:
        return kind(substitute(f.child, binding))
    return kind(substitute(f.left, binding), substitute(f.right, binding))


def _postorder(f: Formula) -> Iterator[Formula]:
    if isinstance(f, UNARY):
        yield from _postorder(f.child)
    elif isinstance(f, BINARY):
        yield from _postorder(f.left)
        yield from _postorder(f.right)
    yield f


def subformulas(f: Formula) -> FormulaSet:
    """All subtrees of ``f`` (children before parents), deduplicated."""
    return FormulaSet(_postorder(f))


def variables(f: Formula | Iterable[Formula]) -> list[str]:
    """Sorted variable names occurring in a formula or collection of formulas."""
    fs = [f] if isinstance(f, Formula) else list(f)
    names = {g.name for h in fs for g in _postorder(h) if type(g) is Var}
    return sorted(names)


def depth(f: Formula) -> int:
    if type(f) is Var:
        return 0
    if isinstance(f, UNARY):
        return 1 + depth(f.child)
    return 1 + max(depth(f.left), depth(f.right))


FormulaLike = Union[Formula, str]


def as_formula(f: FormulaLike) -> Formula:
    return parse(f) if isinstance(f, str) else f
