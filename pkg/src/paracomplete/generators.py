"""Seeded random generators for formulas, derivations and distributions."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .formula import And, Formula, FormulaSet, Imp, Neg, Or, Undet, Var, depth
from .probability import WorldDistribution
from .proof import MP, Axiom, Derivation, Line, Premise, instance
from .semantics import DEFAULT_CAP, DecisionClosure, enumerate_worlds

VARS = ("p", "q", "r")


def random_formula(rng: random.Random, max_depth: int = 3,
                   variables: Sequence[str] = VARS) -> Formula:
    if max_depth <= 0 or rng.random() < 0.3:
        return Var(rng.choice(variables))
    kind = rng.choice((Neg, Undet, And, Or, Imp))
    if kind in (Neg, Undet):
        return kind(random_formula(rng, max_depth - 1, variables))
    return kind(random_formula(rng, max_depth - 1, variables),
                random_formula(rng, max_depth - 1, variables))


def random_axiom(rng: random.Random, pool: Sequence[Formula], max_depth: int,
                 variables: Sequence[str]) -> tuple[int, Formula]:
    def pick() -> Formula:
        if pool and rng.random() < 0.5:
            return rng.choice(pool)
        return random_formula(rng, max_depth, variables)

    k = rng.randint(1, 11)
    return k, instance(k, pick(), pick(), pick())


def _forward(phi: Formula, psi: Formula, rng: random.Random) -> tuple[int, Formula]:
    """An axiom instance whose antecedent is ``phi``."""
    options = [
        (1, Imp(phi, Imp(psi, phi))),
        (3, Imp(phi, Imp(psi, And(phi, psi)))),
        (6, Imp(phi, Or(phi, psi))),
        (7, Imp(phi, Or(psi, phi))),
        (10, Imp(phi, Imp(Neg(phi), psi))),
    ]
    if type(phi) is And:
        options += [(4, Imp(phi, phi.left)), (5, Imp(phi, phi.right))]
    if type(phi) is Imp:
        a, b = phi.left, phi.right
        options += [
            (2, Imp(phi, Imp(Imp(a, Imp(b, psi)), Imp(a, psi)))),
            (8, Imp(phi, Imp(Imp(psi, b), Imp(Or(a, psi), b)))),
        ]
    return rng.choice(options)


def random_derivation(rng: random.Random, premises: Sequence[Formula] = (),
                      steps: int = 8, max_depth: int = 2,
                      variables: Sequence[str] = VARS, max_line_depth: int = 7) -> Derivation:
    """A derivation that is valid by construction.

    Mixes premise lines, random axiom instances, axiom instances built on an
    existing line, and modus ponens.
    """
    premises = FormulaSet(premises)
    lines: list[Line] = []
    present: dict[Formula, int] = {}

    def add(f: Formula, just) -> int:
        n = len(lines) + 1
        lines.append(Line(n, f, just))
        present.setdefault(f, n)
        return n

    def mp_candidates():
        out = []
        for f, j in present.items():
            if type(f) is Imp and f.left in present and f.right not in present:
                out.append((present[f.left], j, f.right))
        return out

    while len(lines) < steps:
        roll = rng.random()
        pool = [ln.formula for ln in lines] + list(premises)
        if premises and (roll < 0.2 or not lines):
            add(rng.choice(list(premises)), Premise())
        elif roll < 0.4 or not lines:
            k, f = random_axiom(rng, pool, max_depth, variables)
            if depth(f) <= max_line_depth:
                add(f, Axiom(k))
        elif roll < 0.7:
            phi = rng.choice([ln.formula for ln in lines])
            psi = rng.choice(pool) if rng.random() < 0.5 else random_formula(rng, max_depth, variables)
            k, f = _forward(phi, psi, rng)
            if depth(f) <= max_line_depth:
                i = present[phi]
                j = add(f, Axiom(k))
                add(f.right, MP(i, j))
        else:
            cands = mp_candidates()
            if cands:
                i, j, g = rng.choice(cands)
                add(g, MP(i, j))
    # finish on a modus ponens when one is available
    cands = mp_candidates()
    if cands and rng.random() < 0.7:
        i, j, g = rng.choice(cands)
        add(g, MP(i, j))
    return Derivation(premises, lines)


def random_distribution(closure: DecisionClosure, rng: random.Random,
                        max_weight: int = 9, sparsity: float = 0.3,
                        cap: int = DEFAULT_CAP) -> WorldDistribution:
    """Random rational weights; some worlds get weight 0."""
    worlds = enumerate_worlds(closure, cap)
    raw = [0 if rng.random() < sparsity else rng.randint(1, max_weight) for _ in worlds]
    if not any(raw):
        raw[rng.randrange(len(raw))] = 1
    total = sum(raw)
    return WorldDistribution(closure, {w: Fraction(x, total) for w, x in zip(worlds, raw) if x})
