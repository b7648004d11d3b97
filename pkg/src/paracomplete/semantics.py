"""Two-valued non-deterministic semantics decided by finite world enumeration.

Every ``~phi`` and ``#phi`` node of a formula set is an independent 0/1
decision atom, filtered by the two valuation constraints:

* (iv)  phi = 1 forces ~phi = 0;
* (v)   phi = 0 and ~phi = 0 force #phi = 1.

``&``, ``|`` and ``->`` are computed classically from the atoms. A world is a
constraint-satisfying assignment to the atoms of a decision closure.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .formula import (
    And, Formula, FormulaSet, Imp, Neg, Or, Undet, Var, render,
)

__all__ = [
    "DEFAULT_CAP", "CapExceeded", "UnknownAtom",
    "DecisionClosure", "World", "Decision", "TruthTable",
    "decision_closure", "evaluate", "enumerate_worlds", "is_tautology",
    "is_satisfiable", "entails", "truth_table", "extend_world", "world_matrix",
]

DEFAULT_CAP = 1 << 20


class CapExceeded(RuntimeError):
    def __init__(self, n_atoms: int, cap: int):
        self.n_atoms = n_atoms
        self.cap = cap
        super().__init__(f"enumeration cap exceeded: {n_atoms} atoms need 2^{n_atoms} "
                         f"assignments, cap is {cap}")


class UnknownAtom(KeyError):
    def __str__(self) -> str:
        return f"formula {render(self.args[0])} is not a decision atom of this world"


def _is_atom(f: Formula) -> bool:
    return type(f) in (Var, Neg, Undet)


class DecisionClosure:
    """Subformula closure of a formula set, with ``~phi`` added for each ``#phi``.

    ``atoms`` lists the variables (sorted) followed by the ``~``/``#`` nodes in
    node order.
    """

    __slots__ = ("base", "nodes", "atoms", "_atom_index", "_program", "_worlds", "_hash")

    def __init__(self, base: Iterable[Formula]):
        self.base = FormulaSet(base)
        order: dict[Formula, None] = {}

        def visit(f: Formula) -> None:
            if f in order:
                return
            t = type(f)
            if t is Undet:
                visit(f.child)
                visit(Neg(f.child))
            elif t is Neg:
                visit(f.child)
            elif t is not Var:
                visit(f.left)
                visit(f.right)
            order[f] = None

        for f in self.base:
            visit(f)
        self.nodes = FormulaSet(order)
        names = sorted(f.name for f in self.nodes if type(f) is Var)
        self.atoms: tuple[Formula, ...] = tuple(Var(n) for n in names) + tuple(
            f for f in self.nodes if type(f) in (Neg, Undet))
        self._atom_index = {a: i for i, a in enumerate(self.atoms)}
        self._program = None
        self._worlds: list[World] | None = None
        self._hash = hash((self.nodes, self.atoms))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DecisionClosure):
            return NotImplemented
        return self is other or (self._hash == other._hash and self.nodes == other.nodes)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"DecisionClosure({', '.join(render(f) for f in self.base)})"

    def __contains__(self, f: object) -> bool:
        return f in self.nodes

    def atom_index(self, atom: Formula) -> int:
        try:
            return self._atom_index[atom]
        except KeyError:
            raise UnknownAtom(atom) from None

    def has_atom(self, atom: Formula) -> bool:
        return atom in self._atom_index

    def covers(self, f: Formula) -> bool:
        """True when every atom that ``f`` needs is an atom of this closure."""
        if _is_atom(f):
            return f in self._atom_index
        return self.covers(f.left) and self.covers(f.right)

    def program(self):
        if self._program is None:
            idx = {f: i for i, f in enumerate(self.nodes)}
            n = len(self.nodes)
            op = np.zeros(n, dtype=np.int64)
            a = np.zeros(n, dtype=np.int64)
            b = np.zeros(n, dtype=np.int64)
            neg_con, undet_con = [], []
            codes = {And: 1, Or: 2, Imp: 3}
            for i, f in enumerate(self.nodes):
                t = type(f)
                if t in codes:
                    op[i], a[i], b[i] = codes[t], idx[f.left], idx[f.right]
                else:
                    a[i] = self._atom_index[f]
                    if t is Neg:
                        neg_con.append((idx[f.child], i))
                    elif t is Undet:
                        undet_con.append((idx[f.child], idx[Neg(f.child)], i))
            self._program = (
                len(self.atoms), op, a, b,
                np.array(neg_con, dtype=np.int64).reshape(-1, 2),
                np.array(undet_con, dtype=np.int64).reshape(-1, 3),
            )
        return self._program


def decision_closure(fs: Iterable[Formula] | Formula) -> DecisionClosure:
    if isinstance(fs, Formula):
        fs = [fs]
    return DecisionClosure(fs)


@dataclass(frozen=True, eq=True)
class World:
    """An assignment of bits to the atoms of a closure (aligned with ``closure.atoms``)."""

    closure: DecisionClosure
    bits: tuple[int, ...]

    def __getitem__(self, atom: Formula) -> int:
        return self.bits[self.closure.atom_index(atom)]

    @property
    def assignment(self) -> dict[Formula, int]:
        return dict(zip(self.closure.atoms, self.bits))

    def satisfies_constraints(self) -> bool:
        for f in self.closure.nodes:
            if type(f) is Neg and evaluate(self, f.child) and self[f]:
                return False
            if type(f) is Undet and not (evaluate(self, f.child)
                                         or evaluate(self, Neg(f.child)) or self[f]):
                return False
        return True

    def __str__(self) -> str:
        return " ".join(f"{render(a)}={v}" for a, v in zip(self.closure.atoms, self.bits))


def evaluate(w: World, f: Formula) -> int:
    """Value of ``f`` in world ``w``: atoms are read off, connectives are classical."""
    t = type(f)
    if t is Var or t is Neg or t is Undet:
        return w.bits[w.closure.atom_index(f)]
    if t is And:
        return evaluate(w, f.left) & evaluate(w, f.right)
    if t is Or:
        return evaluate(w, f.left) | evaluate(w, f.right)
    return (1 - evaluate(w, f.left)) | evaluate(w, f.right)


def _check_cap(c: DecisionClosure, cap: int) -> None:
    if (1 << len(c.atoms)) > cap:
        raise CapExceeded(len(c.atoms), cap)


def enumerate_masks(c: DecisionClosure, cap: int = DEFAULT_CAP, backend: str | None = None) -> np.ndarray:
    """Bitmasks of the worlds of ``c`` (atom 0 is the most significant bit)."""
    _check_cap(c, cap)
    return _kernels.enumerate_masks(*c.program(), backend=backend)


def enumerate_worlds(c: DecisionClosure, cap: int = DEFAULT_CAP,
                     backend: str | None = None) -> list[World]:
    """All worlds of ``c`` in lexicographic order of atom values, 1 before 0."""
    _check_cap(c, cap)
    if backend is None and c._worlds is not None:
        return c._worlds
    k = len(c.atoms)
    masks = enumerate_masks(c, cap, backend)
    shifts = [k - 1 - i for i in range(k)]
    worlds = [World(c, tuple((int(m) >> s) & 1 for s in shifts)) for m in masks]
    if backend is None:
        c._worlds = worlds
    return worlds


def world_matrix(c: DecisionClosure, cap: int = DEFAULT_CAP, backend: str | None = None) -> np.ndarray:
    """Boolean matrix of node values, one row per world, one column per node."""
    masks = enumerate_masks(c, cap, backend)
    k, op, a, b, _, _ = c.program()
    return _kernels.node_values(masks, k, op, a, b, backend=backend)


@dataclass(frozen=True)
class Decision:
    holds: bool
    countermodel: Optional[World] = None

    def __bool__(self) -> bool:
        return self.holds


def entails(premises: Iterable[Formula], f: Formula, cap: int = DEFAULT_CAP) -> Decision:
    """Does every world making all premises 1 make ``f`` 1?"""
    premises = list(premises)
    c = DecisionClosure([*premises, f])
    masks = enumerate_masks(c, cap)
    k, op, a, b, _, _ = c.program()
    vals = _kernels.node_values(masks, k, op, a, b)
    bad = ~vals[:, c.nodes.index(f)]
    for g in premises:
        bad &= vals[:, c.nodes.index(g)]
    hits = np.flatnonzero(bad)
    if hits.size == 0:
        return Decision(True)
    m = int(masks[hits[0]])
    return Decision(False, World(c, tuple((m >> (k - 1 - i)) & 1 for i in range(k))))


def is_tautology(f: Formula, cap: int = DEFAULT_CAP) -> Decision:
    return entails((), f, cap)


def is_satisfiable(f: Formula, cap: int = DEFAULT_CAP) -> bool:
    return any(evaluate(w, f) for w in enumerate_worlds(DecisionClosure([f]), cap))


def extend_world(w: World, bigger: DecisionClosure) -> World:
    """Extend ``w`` to a closure containing its own.

    New variables and ``~`` atoms get 0, new ``#`` atoms get 1; the result
    always satisfies the world constraints.
    """
    bits = []
    for atom in bigger.atoms:
        if w.closure.has_atom(atom):
            bits.append(w[atom])
        else:
            bits.append(1 if type(atom) is Undet else 0)
    return World(bigger, tuple(bits))


@dataclass
class TruthTable:
    closure: DecisionClosure
    columns: list[Formula]
    rows: list[tuple[int, ...]]

    def column(self, f: Formula) -> list[int]:
        j = self.columns.index(f)
        return [r[j] for r in self.rows]

    def project(self, fs: Sequence[Formula]) -> list[tuple[int, ...]]:
        js = [self.columns.index(f) for f in fs]
        return [tuple(r[j] for j in js) for r in self.rows]

    def render(self) -> str:
        heads = [render(f) for f in self.columns]
        widths = [max(len(h), 1) for h in heads]
        lines = [" | ".join(h.center(wd) for h, wd in zip(heads, widths))]
        lines.append("-+-".join("-" * wd for wd in widths))
        for r in self.rows:
            lines.append(" | ".join(str(v).center(wd) for v, wd in zip(r, widths)))
        return "\n".join(lines)


def truth_table(fs: Sequence[Formula], cap: int = DEFAULT_CAP) -> TruthTable:
    """Rows are the worlds of the joint closure; columns the atoms, then ``fs``."""
    c = DecisionClosure(fs)
    columns = list(c.atoms) + [f for f in FormulaSet(fs) if not c.has_atom(f)]
    rows = [tuple(evaluate(w, f) for f in columns) for w in enumerate_worlds(c, cap)]
    return TruthTable(c, columns, rows)
