"""Text formats for proofs, distributions, probability tables and spaces.

All formats are line oriented and accept ``//`` comments.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional

from .formula import Formula, FormulaSet, ParseError, parse, render
from .probability import ProbAssignment, WorldDistribution
from .proof import MP, Axiom, Derivation, Line, Premise
from .semantics import DecisionClosure, World
from .spaces import ParacompleteProbSpace, SigmaPAlgebra

__all__ = [
    "FileFormatError",
    "parse_proof", "dump_proof",
    "parse_distribution", "dump_distribution",
    "parse_constraints", "dump_constraints",
    "parse_space", "SpaceFile",
]


class FileFormatError(ValueError):
    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("//", 1)[0].strip()
        if line:
            yield n, line


def _formula(text: str, lineno: int) -> Formula:
    try:
        return parse(text)
    except ParseError as e:
        raise FileFormatError(lineno, str(e)) from e


def _rational(text: str, lineno: int) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise FileFormatError(lineno, f"bad rational {text.strip()!r}") from None


# ---------------------------------------------------------------- proofs

_PROOF_LINE = re.compile(r"^(\d+)\s*:\s*(.+?)\s*;\s*(.+)$")


def parse_proof(text: str) -> Derivation:
    premises: list[Formula] = []
    lines: list[Line] = []
    for n, line in _lines(text):
        if line.startswith("premise ") or line.startswith("premise\t"):
            premises.append(_formula(line[len("premise"):], n))
            continue
        m = _PROOF_LINE.match(line)
        if not m:
            raise FileFormatError(n, "expected 'premise <formula>' or '<n>: <formula> ; <justification>'")
        idx, body, just = int(m.group(1)), m.group(2), m.group(3).split()
        f = _formula(body, n)
        if len(just) == 1 and re.fullmatch(r"ax\d+", just[0]):
            j = Axiom(int(just[0][2:]))
        elif just == ["prem"]:
            j = Premise()
        elif len(just) == 3 and just[0] == "mp" and just[1].isdigit() and just[2].isdigit():
            j = MP(int(just[1]), int(just[2]))
        else:
            raise FileFormatError(n, f"bad justification {' '.join(just)!r}")
        lines.append(Line(idx, f, j))
    if not lines:
        raise FileFormatError(0, "no derivation lines")
    return Derivation(FormulaSet(premises), lines)


def dump_proof(d: Derivation) -> str:
    return str(d)


# ---------------------------------------------------------------- distributions

_WORLD_LINE = re.compile(r"^world\s*\{(.*)\}\s*weight\s+(\S+)$")


def _formula_list(text: str, lineno: int) -> list[Formula]:
    return [_formula(part, lineno) for part in text.split(",") if part.strip()]


def parse_distribution(text: str) -> WorldDistribution:
    closure: Optional[DecisionClosure] = None
    weights: dict[World, Fraction] = {}
    for n, line in _lines(text):
        if line.startswith("closure:"):
            if closure is not None:
                raise FileFormatError(n, "duplicate closure line")
            closure = DecisionClosure(_formula_list(line[len("closure:"):], n))
            continue
        m = _WORLD_LINE.match(line)
        if not m:
            raise FileFormatError(n, "expected 'world { atom=bit, ... } weight p/q'")
        if closure is None:
            raise FileFormatError(n, "world before closure line")
        assignment: dict[Formula, int] = {}
        for part in m.group(1).split(","):
            if not part.strip():
                continue
            lhs, sep, rhs = part.rpartition("=")
            if not sep or rhs.strip() not in ("0", "1"):
                raise FileFormatError(n, f"bad atom assignment {part.strip()!r}")
            assignment[_formula(lhs, n)] = int(rhs)
        missing = [render(a) for a in closure.atoms if a not in assignment]
        extra = [render(a) for a in assignment if not closure.has_atom(a)]
        if missing or extra:
            raise FileFormatError(n, f"world atoms mismatch (missing {missing}, unknown {extra})")
        w = World(closure, tuple(assignment[a] for a in closure.atoms))
        if not w.satisfies_constraints():
            raise FileFormatError(n, f"assignment violates the valuation constraints: {w}")
        weights[w] = weights.get(w, Fraction(0)) + _rational(m.group(2), n)
    if closure is None:
        raise FileFormatError(0, "missing closure line")
    try:
        return WorldDistribution(closure, weights)
    except ValueError as e:
        raise FileFormatError(0, str(e)) from e


def dump_distribution(d: WorldDistribution) -> str:
    out = ["closure: " + ", ".join(render(f) for f in d.closure.base)]
    for w, v in d.weights.items():
        atoms = ", ".join(f"{render(a)}={b}" for a, b in zip(w.closure.atoms, w.bits))
        out.append(f"world {{ {atoms} }} weight {v}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- probability tables

_CONSTRAINT_LINE = re.compile(r"^P\((.*)\)\s*=\s*(\S+)$")


def parse_constraints(text: str) -> tuple[ProbAssignment, FormulaSet]:
    """``P(<formula>) = <p/q>`` lines plus an optional ``universe: f, g`` line."""
    table = ProbAssignment()
    universe: list[Formula] = []
    for n, line in _lines(text):
        if line.startswith("universe:"):
            universe += _formula_list(line[len("universe:"):], n)
            continue
        m = _CONSTRAINT_LINE.match(line)
        if not m:
            raise FileFormatError(n, "expected 'P(<formula>) = <p/q>'")
        f = _formula(m.group(1), n)
        v = _rational(m.group(2), n)
        if f in table and table[f] != v:
            raise FileFormatError(n, f"conflicting values for {render(f)}")
        try:
            table[f] = v
        except ValueError as e:
            raise FileFormatError(n, str(e)) from e
    return table, FormulaSet(universe)


def dump_constraints(t: ProbAssignment) -> str:
    return "".join(f"P({render(f)}) = {v}\n" for f, v in t.items())


# ---------------------------------------------------------------- spaces

class SpaceFile:
    """Parsed space file: an algebra, plus ``pi``/``mu`` when present."""

    def __init__(self, algebra: SigmaPAlgebra, names: dict[str, frozenset],
                 pi: Optional[frozenset], measure: dict[frozenset, Fraction]):
        self.algebra = algebra
        self.names = names
        self.pi = pi
        self.measure = measure

    @property
    def is_space(self) -> bool:
        return self.pi is not None or bool(self.measure)

    def space(self) -> ParacompleteProbSpace:
        pi = self.pi if self.pi is not None else self.algebra.omega
        return ParacompleteProbSpace(self.algebra, pi, self.measure)


_SET_LIT = re.compile(r"^\{(.*)\}$")


def parse_space(text: str) -> SpaceFile:
    omega: Optional[frozenset] = None
    names: dict[str, frozenset] = {}
    circ: dict[frozenset, frozenset] = {}
    diamond: dict[frozenset, frozenset] = {}
    pi: Optional[frozenset] = None
    mu: dict[frozenset, Fraction] = {}

    def set_value(text: str, n: int) -> frozenset:
        text = text.strip()
        m = _SET_LIT.match(text)
        if m:
            return frozenset(x for x in re.split(r"[\s,]+", m.group(1)) if x)
        if text in names:
            return names[text]
        raise FileFormatError(n, f"expected a set literal or a declared set name, got {text!r}")

    def named(text: str, n: int) -> frozenset:
        text = text.strip()
        if text not in names:
            raise FileFormatError(n, f"undeclared set {text!r}")
        return names[text]

    for n, line in _lines(text):
        if line.startswith("omega:"):
            omega = frozenset(line[len("omega:"):].replace(",", " ").split())
            continue
        head, sep, rhs = line.partition("=")
        if not sep:
            raise FileFormatError(n, "expected '<keyword> ... = <value>'")
        words = head.split()
        if words == ["pi"]:
            pi = set_value(rhs, n)
        elif len(words) == 2 and words[0] == "set":
            names[words[1]] = set_value(rhs, n)
        elif len(words) == 2 and words[0] == "circ":
            circ[named(words[1], n)] = set_value(rhs, n)
        elif len(words) == 2 and words[0] == "diamond":
            diamond[named(words[1], n)] = set_value(rhs, n)
        elif len(words) == 2 and words[0] == "mu":
            mu[named(words[1], n)] = _rational(rhs, n)
        else:
            raise FileFormatError(n, f"unknown declaration {head.strip()!r}")
    if omega is None:
        raise FileFormatError(0, "missing 'omega:' line")
    algebra = SigmaPAlgebra(omega, frozenset(names.values()), circ, diamond)
    return SpaceFile(algebra, names, pi, mu)
