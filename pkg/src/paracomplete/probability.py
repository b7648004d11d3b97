"""Paracomplete probability over world distributions, in exact rationals.

A :class:`WorldDistribution` puts nonnegative rational weight on the worlds of
a decision closure; the probability of a formula is the weight of the worlds
where it evaluates to 1. Point masses are exactly the two-valued probability
functions, i.e. the worlds themselves.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import lcm
from typing import Iterable, Mapping, Optional

import numpy as np

from . import simplex
from .formula import (
    And, Formula, FormulaLike, FormulaSet, Neg, Or, Undet, Var, as_formula, render,
)
from .semantics import (
    DEFAULT_CAP, CapExceeded, DecisionClosure, World, entails, enumerate_worlds, evaluate,
    world_matrix,
)

__all__ = [
    "ClosureMismatch", "ZeroCondition", "HypothesisViolated",
    "WorldDistribution", "ProbAssignment", "TotalProbability", "BayesReport",
    "Violation", "Coherence",
    "prob", "conditional", "total_probability", "bayes", "audit_axioms",
    "coherence", "p_entails", "induced_assignment",
]


class ClosureMismatch(ValueError):
    pass


class ZeroCondition(ZeroDivisionError):
    def __init__(self, given: Formula):
        self.given = given
        super().__init__(f"conditioning formula {render(given)} has probability 0")


class HypothesisViolated(ValueError):
    def __init__(self, term: Formula):
        self.term = term
        super().__init__(f"hypothesis violated: P({render(term)}) = 0")


def _frac(v) -> Fraction:
    if type(v) is Fraction:
        return v
    if isinstance(v, float):
        raise TypeError("probabilities must be exact; got a float")
    return Fraction(v)


class WorldDistribution:
    """Exact probability weights over the worlds of one closure."""

    __slots__ = ("closure", "weights", "_bits", "_num", "_den")

    def __init__(self, closure: DecisionClosure, weights: Mapping[World, object]):
        ws: dict[World, Fraction] = {}
        for w, v in weights.items():
            if w.closure != closure:
                raise ClosureMismatch("world belongs to a different closure")
            if not w.satisfies_constraints():
                raise ValueError(f"not a world: {w}")
            v = _frac(v)
            if v < 0:
                raise ValueError(f"negative weight {v} on {w}")
            if v:
                ws[w] = ws.get(w, Fraction(0)) + v
        total = sum(ws.values(), Fraction(0))
        if total != 1:
            raise ValueError(f"weights sum to {total}, not 1")
        self.closure = closure
        self.weights = ws
        # vectorized view of the support: one row of atom bits per world and
        # integer numerators over a common denominator, so sums stay exact
        self._den = lcm(*(v.denominator for v in ws.values()))
        self._num = np.array([v.numerator * (self._den // v.denominator) for v in ws.values()],
                             dtype=object)
        self._bits = np.array([w.bits for w in ws], dtype=np.bool_).reshape(len(ws), len(closure.atoms))

    def truth(self, f: Formula) -> np.ndarray:
        """Boolean vector: the value of ``f`` at each support world, in ``weights`` order."""
        t = type(f)
        if t is Var or t is Neg or t is Undet:
            return self._bits[:, self.closure.atom_index(f)]
        if t is And:
            return self.truth(f.left) & self.truth(f.right)
        if t is Or:
            return self.truth(f.left) | self.truth(f.right)
        return ~self.truth(f.left) | self.truth(f.right)

    @classmethod
    def uniform(cls, closure: DecisionClosure, cap: int = DEFAULT_CAP) -> "WorldDistribution":
        worlds = enumerate_worlds(closure, cap)
        return cls(closure, {w: Fraction(1, len(worlds)) for w in worlds})

    @classmethod
    def point_mass(cls, world: World) -> "WorldDistribution":
        return cls(world.closure, {world: 1})

    @property
    def support(self) -> list[World]:
        return list(self.weights)

    def __repr__(self) -> str:
        body = ", ".join(f"[{w}]: {v}" for w, v in self.weights.items())
        return f"WorldDistribution({body})"


def prob(d: WorldDistribution, f: FormulaLike) -> Fraction:
    f = as_formula(f)
    if not d.closure.covers(f):
        raise ClosureMismatch(f"{render(f)} is not evaluable over {d.closure!r}")
    return Fraction(int(d._num[d.truth(f)].sum()), d._den)


def conditional(d: WorldDistribution, target: FormulaLike, given: FormulaLike) -> Fraction:
    """P(target | given) = P(target & given) / P(given)."""
    target, given = as_formula(target), as_formula(given)
    pg = prob(d, given)
    if pg == 0:
        raise ZeroCondition(given)
    return prob(d, And(target, given)) / pg


# ---------------------------------------------------------------- total probability

def _overlap(alpha: Formula) -> Formula:
    """(a | ~a) & #a"""
    return And(Or(alpha, Neg(alpha)), Undet(alpha))


@dataclass(frozen=True)
class TotalProbability:
    p_beta: Fraction
    p_beta_and_alpha: Fraction
    p_beta_and_neg_alpha: Fraction
    p_beta_and_undet_alpha: Fraction
    p_beta_and_overlap: Fraction  # P(b & (a | ~a) & #a)

    @property
    def rhs(self) -> Fraction:
        return (self.p_beta_and_alpha + self.p_beta_and_neg_alpha
                + self.p_beta_and_undet_alpha - self.p_beta_and_overlap)

    @property
    def identity_holds(self) -> bool:
        return self.p_beta == self.rhs


def total_probability(d: WorldDistribution, alpha: FormulaLike, beta: FormulaLike) -> TotalProbability:
    a, b = as_formula(alpha), as_formula(beta)
    return TotalProbability(
        prob(d, b),
        prob(d, And(b, a)),
        prob(d, And(b, Neg(a))),
        prob(d, And(b, Undet(a))),
        prob(d, And(And(b, Or(a, Neg(a))), Undet(a))),
    )


# ---------------------------------------------------------------- Bayes

@dataclass(frozen=True)
class BayesReport:
    posterior: Fraction
    numerator: Fraction
    denominator: Fraction
    K: Fraction
    terms: tuple[Fraction, Fraction, Fraction]
    direct: Fraction  # P(alpha | beta) computed from the definition

    @property
    def matches_direct(self) -> bool:
        return self.posterior == self.direct


def bayes(d: WorldDistribution, alpha: FormulaLike, beta: FormulaLike,
          allow_degenerate: bool = False) -> BayesReport:
    """Posterior P(alpha | beta) through the paracomplete Bayes rule.

    The rule needs P(a), P(~a), P((a | ~a) & #a) and P(b) all nonzero. With
    ``allow_degenerate`` a zero prior among the first three is accepted and
    its conditional-times-prior term is taken as 0, which recovers classical
    Bayes when there is no undetermined mass.
    """
    a, b = as_formula(alpha), as_formula(beta)
    overlap = _overlap(a)
    priors = {a: prob(d, a), Neg(a): prob(d, Neg(a)), overlap: prob(d, overlap)}
    for term, p in priors.items():
        if p == 0 and not allow_degenerate:
            raise HypothesisViolated(term)
    if prob(d, b) == 0:
        raise HypothesisViolated(b)

    def weighted(cond: Formula) -> Fraction:
        p = prob(d, cond)
        return conditional(d, b, cond) * p if p else Fraction(0)

    terms = (weighted(a), weighted(Neg(a)), weighted(Undet(a)))
    K = weighted(overlap)
    numerator = terms[0]
    denominator = sum(terms, Fraction(0)) - K
    return BayesReport(numerator / denominator, numerator, denominator, K, terms,
                       conditional(d, a, b))


# ---------------------------------------------------------------- finite tables

class ProbAssignment(dict):
    """Finite table formula -> rational in [0, 1]."""

    def __init__(self, entries: Mapping[FormulaLike, object] | Iterable = ()):
        super().__init__()
        items = entries.items() if isinstance(entries, Mapping) else entries
        for f, v in items:
            self[f] = v

    def __setitem__(self, f: FormulaLike, v) -> None:
        v = _frac(v)
        if not 0 <= v.numerator <= v.denominator:
            raise ValueError(f"probability {v} outside [0, 1]")
        super().__setitem__(as_formula(f), v)

    def __repr__(self) -> str:
        return "ProbAssignment({" + ", ".join(f"{render(f)!r}: {v}" for f, v in self.items()) + "})"


@dataclass(frozen=True)
class Violation:
    """One failed condition; ``values`` are the table entries involved."""

    kind: str  # tautologicity | antitautologicity | comparison | additivity
    formulas: tuple[Formula, ...]
    values: tuple[Fraction, ...]

    @property
    def detail(self) -> str:
        f, v = [render(x) for x in self.formulas], self.values
        if self.kind == "tautologicity":
            return f"P({f[0]}) = {v[0]}, expected 1"
        if self.kind == "antitautologicity":
            return f"P({f[0]}) = {v[0]}, expected 0"
        if self.kind == "comparison":
            return f"{f[0]} entails {f[1]} but P({f[0]}) = {v[0]} > {v[1]}"
        return (f"P({f[0]} | {f[1]}) = {v[2]} but P({f[0]}) + P({f[1]}) - "
                f"P({f[0]} & {f[1]}) = {v[0] + v[1] - v[3]}")

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


@lru_cache(maxsize=65536)
def _entails1(psi: Formula, phi: Formula, cap: int) -> bool:
    return entails((psi,), phi, cap).holds


@lru_cache(maxsize=65536)
def _tautology(phi: Formula, cap: int) -> bool:
    return entails((), phi, cap).holds


@lru_cache(maxsize=65536)
def _unsatisfiable(phi: Formula, cap: int) -> bool:
    c = DecisionClosure([phi])
    return not any(evaluate(w, phi) for w in enumerate_worlds(c, cap))


@lru_cache(maxsize=1024)
def _additivity_triples(keys: tuple[Formula, ...]) -> tuple:
    """(x | y, x, y, x & y) for every disjunction whose three companions are keys."""
    present = set(keys)
    out = []
    for disj in keys:
        if type(disj) is Or:
            conj = And(disj.left, disj.right)
            if disj.left in present and disj.right in present and conj in present:
                out.append((disj, disj.left, disj.right, conj))
    return tuple(out)


@lru_cache(maxsize=1024)
def _joint_relations(keys: tuple[Formula, ...], cap: int):
    """Validity, unsatisfiability and pairwise entailment among ``keys`` from one
    world matrix, or None when their joint closure is over the cap.

    Worlds of a larger closure restrict onto worlds of a smaller one and every
    world extends, so deciding over the joint closure agrees with deciding
    each question over its own closure.
    """
    c = DecisionClosure(keys)
    try:
        vals = world_matrix(c, cap)
    except CapExceeded:
        return None
    cols = vals[:, [c.nodes.index(f) for f in keys]]
    valid = cols.all(axis=0)
    unsat = ~cols.any(axis=0)
    # entailed[i, j]: no world has keys[i] = 1 and keys[j] = 0
    entailed = (cols.T.astype(np.int64) @ (~cols).astype(np.int64)) == 0
    pairs = [(i, j) for i, j in permutations(range(len(keys)), 2) if entailed[i, j]]
    return valid.tolist(), unsat.tolist(), pairs


def audit_axioms(t: Mapping[Formula, Fraction], cap: int = DEFAULT_CAP) -> list[Violation]:
    """Check a finite table against the four probability-function conditions.

    Only conditions whose formulas all appear in the table are checked.
    """
    t = t if isinstance(t, ProbAssignment) else ProbAssignment(t)
    keys = tuple(t)
    vs = list(t.values())
    rel = _joint_relations(keys, cap)
    if rel is None:
        # decide each question on its own closure, and only when the values
        # could make it matter
        valid = [v != 1 and _tautology(f, cap) for f, v in t.items()]
        unsat = [v != 0 and _unsatisfiable(f, cap) for f, v in t.items()]
        pairs = [(i, j) for i, j in permutations(range(len(keys)), 2)
                 if vs[i] > vs[j] and _entails1(keys[i], keys[j], cap)]
    else:
        valid, unsat, pairs = rel
    out: list[Violation] = []
    for i, (phi, v) in enumerate(t.items()):
        if v != 1 and valid[i]:
            out.append(Violation("tautologicity", (phi,), (v,)))
        if v != 0 and unsat[i]:
            out.append(Violation("antitautologicity", (phi,), (v,)))
    for i, j in pairs:
        if vs[i] > vs[j]:
            out.append(Violation("comparison", (keys[i], keys[j]), (vs[i], vs[j])))
    for disj, x, y, conj in _additivity_triples(keys):
        if t[disj] != t[x] + t[y] - t[conj]:
            out.append(Violation("additivity", (x, y), (t[x], t[y], t[disj], t[conj])))
    return out


def induced_assignment(d: WorldDistribution, fs: Iterable[Formula]) -> ProbAssignment:
    return ProbAssignment({f: prob(d, f) for f in fs})


# ---------------------------------------------------------------- coherence

@dataclass(frozen=True)
class Coherence:
    feasible: bool
    witness: Optional[WorldDistribution] = None

    def __bool__(self) -> bool:
        return self.feasible


def coherence(constraints: Mapping[Formula, object], universe: Iterable[Formula] = (),
              cap: int = DEFAULT_CAP) -> Coherence:
    """Is there a world distribution matching every entry of ``constraints``?

    Decided exactly by linear feasibility over the world weights of the joint
    closure of ``universe`` and the constrained formulas.
    """
    t = constraints if isinstance(constraints, ProbAssignment) else ProbAssignment(constraints)
    closure = DecisionClosure(FormulaSet(universe).union(t))
    worlds = enumerate_worlds(closure, cap)
    A = [[1] * len(worlds)]
    b: list[Fraction] = [Fraction(1)]
    for f, v in t.items():
        A.append([evaluate(w, f) for w in worlds])
        b.append(v)
    x = simplex.feasible_point(A, b)
    if x is None:
        return Coherence(False)
    witness = WorldDistribution(closure, {w: xi for w, xi in zip(worlds, x) if xi})
    for f, v in t.items():
        if prob(witness, f) != v:  # pragma: no cover - would be a simplex bug
            raise AssertionError(f"witness fails P({render(f)}) = {v}")
    return Coherence(True, witness)


def p_entails(premises: Iterable[Formula], f: Formula, cap: int = DEFAULT_CAP) -> bool:
    """Probabilistic consequence: every distribution giving all premises 1 gives ``f`` 1.

    Computed by maximizing the mass on worlds where ``f`` fails, subject to
    P(premise) = 1, over the joint closure. Worlds that agree on every premise
    and on ``f`` have identical LP columns, so they are merged first.
    """
    premises = FormulaSet(premises)
    closure = DecisionClosure(premises.union([f]))
    vals = world_matrix(closure, cap)
    cols = [closure.nodes.index(g) for g in premises] + [closure.nodes.index(f)]
    patterns = np.unique(vals[:, cols].astype(np.int64), axis=0)
    A = [[1] * len(patterns)] + [[int(pt[i]) for pt in patterns] for i in range(len(premises))]
    b = [1] * len(A)
    c = [1 - int(pt[-1]) for pt in patterns]
    res = simplex.solve(A, b, c, maximize=True)
    if res.status == "infeasible":
        return True
    return res.value == 0
