"""Finite sigma_p-algebras and paracomplete probability spaces.

A sigma_p-algebra drops complement closure and carries two operations instead:
``circ`` (written postfix, A-circ) with A-circ disjoint from A, and
``diamond`` with diamond(A) & A^c == A^c - A-circ. Everything here is finite
and checked exhaustively.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Hashable, Iterable, Mapping

__all__ = [
    "MAX_OMEGA", "SizeCapExceeded", "NotSigmaAlgebra", "InvalidMeasure",
    "SigmaPAlgebra", "ParacompleteProbSpace", "Report", "Violation",
    "validate_sigma_p", "is_sigma_algebra", "validate_space", "classical_space",
    "power_set", "sigma_algebras",
]

MAX_OMEGA = 16


class SizeCapExceeded(ValueError):
    pass


class NotSigmaAlgebra(ValueError):
    pass


class InvalidMeasure(ValueError):
    pass


def _fmt(s: Iterable) -> str:
    return "{" + " ".join(str(x) for x in sorted(s, key=str)) + "}"


@dataclass(frozen=True)
class Violation:
    clause: str
    witness: tuple
    detail: str = ""

    def __str__(self) -> str:
        sets = ", ".join(_fmt(w) if isinstance(w, frozenset) else str(w) for w in self.witness)
        return f"{self.clause}: {self.detail} [{sets}]" if self.detail else f"{self.clause}: [{sets}]"


@dataclass
class Report:
    violations: list[Violation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid

    def clauses(self) -> set[str]:
        return {v.clause for v in self.violations}

    def __str__(self) -> str:
        if self.valid:
            return "VALID"
        return "INVALID\n" + "\n".join(str(v) for v in self.violations)


@dataclass
class SigmaPAlgebra:
    omega: frozenset
    sigma: frozenset  # of frozensets
    circ: dict = field(default_factory=dict)  # A -> A-circ
    diamond: dict = field(default_factory=dict)

    def __post_init__(self):
        self.omega = frozenset(self.omega)
        self.sigma = frozenset(frozenset(s) for s in self.sigma)
        self.circ = {frozenset(k): frozenset(v) for k, v in self.circ.items()}
        self.diamond = {frozenset(k): frozenset(v) for k, v in self.diamond.items()}


@dataclass
class ParacompleteProbSpace:
    algebra: SigmaPAlgebra
    pi: frozenset
    measure: dict  # frozenset -> Fraction

    def __post_init__(self):
        self.pi = frozenset(self.pi)
        self.measure = {frozenset(k): Fraction(v) for k, v in self.measure.items()}


def _check_size(omega: frozenset) -> None:
    if len(omega) > MAX_OMEGA:
        raise SizeCapExceeded(f"|omega| = {len(omega)} exceeds {MAX_OMEGA}")


def _lattice_violations(omega: frozenset, sigma: frozenset) -> list[Violation]:
    out = []
    if not omega:
        out.append(Violation("(i)", (), "omega must be nonempty"))
    for s in sigma:
        if not s <= omega:
            out.append(Violation("subset", (s,), "event is not a subset of omega"))
    if frozenset() not in sigma:
        out.append(Violation("(i)", (frozenset(),), "empty set missing"))
    if omega not in sigma:
        out.append(Violation("(i)", (omega,), "omega missing"))
    ordered = sorted(sigma, key=lambda s: (len(s), sorted(map(str, s))))
    for a, b in combinations(ordered, 2):
        if a & b not in sigma:
            out.append(Violation("(ii)", (a, b), "intersection not in sigma"))
        # in the finite case closure under arbitrary unions reduces to pairs
        if a | b not in sigma:
            out.append(Violation("(iii)", (a, b), "union not in sigma"))
    return out


def validate_sigma_p(a: SigmaPAlgebra) -> Report:
    _check_size(a.omega)
    out = _lattice_violations(a.omega, a.sigma)
    for A in sorted(a.sigma, key=lambda s: (len(s), sorted(map(str, s)))):
        comp = a.omega - A
        c = a.circ.get(A)
        d = a.diamond.get(A)
        if c is None or c not in a.sigma:
            out.append(Violation("(iv)", (A,), "circ undefined or not in sigma"))
        elif c & A:
            out.append(Violation("(iv)(a)", (A,), "A-circ meets A"))
        if d is None or d not in a.sigma:
            out.append(Violation("(iv)", (A,), "diamond undefined or not in sigma"))
        elif c is not None and (d & comp) != (comp - c):
            out.append(Violation("(iv)(b)", (A,), "diamond(A) & A^c != A^c - A-circ"))
    return Report(out)


def is_sigma_algebra(a: SigmaPAlgebra | tuple) -> bool:
    omega, sigma = (a.omega, a.sigma) if isinstance(a, SigmaPAlgebra) else a
    omega = frozenset(omega)
    sigma = frozenset(frozenset(s) for s in sigma)
    _check_size(omega)
    if _lattice_violations(omega, sigma):
        return False
    return all(omega - s in sigma for s in sigma)


def _disjoint_families(sets: list[frozenset]):
    """Pairwise-disjoint families of two or more nonempty sets."""
    sets = [s for s in sets if s]

    def grow(start: int, used: frozenset, chosen: list):
        for i in range(start, len(sets)):
            s = sets[i]
            if not s & used:
                chosen.append(s)
                if len(chosen) >= 2:
                    yield list(chosen)
                yield from grow(i + 1, used | s, chosen)
                chosen.pop()

    yield from grow(0, frozenset(), [])


def _measure_violations(sigma: frozenset, omega: frozenset, mu: Mapping) -> list[Violation]:
    out = []
    for A in sigma:
        if A not in mu:
            out.append(Violation("measure", (A,), "measure undefined"))
        elif not 0 <= mu[A] <= 1:
            out.append(Violation("measure", (A,), f"value {mu[A]} outside [0, 1]"))
    if out:
        return out
    if mu[omega] != 1:
        out.append(Violation("normalization", (omega,), f"P(omega) = {mu[omega]}"))
    if frozenset() in mu and mu[frozenset()] != 0:
        out.append(Violation("normalization", (frozenset(),), f"P(empty) = {mu[frozenset()]}"))
    ordered = sorted(sigma, key=lambda s: (len(s), sorted(map(str, s))))
    union_closed = all(a | b in sigma for a, b in combinations(ordered, 2))
    if union_closed:
        # partial unions stay in sigma, so pairs imply every finite family
        families = ([a, b] for a, b in combinations(ordered, 2) if a and b and not a & b)
    else:
        families = _disjoint_families(ordered)
    for fam in families:
        u = frozenset().union(*fam)
        if u in sigma:
            total = sum((mu[s] for s in fam), Fraction(0))
            if mu[u] != total:
                out.append(Violation("additivity", tuple(fam),
                                     f"P(union) = {mu[u]} but the parts sum to {total}"))
    return out


def validate_space(s: ParacompleteProbSpace) -> Report:
    rep = validate_sigma_p(s.algebra)
    out = list(rep.violations)
    if s.pi not in s.algebra.sigma:
        out.append(Violation("pi", (s.pi,), "determined outcomes not in sigma"))
    if frozenset() in s.algebra.sigma and s.algebra.omega in s.algebra.sigma:
        out += _measure_violations(s.algebra.sigma, s.algebra.omega, s.measure)
    return Report(out)


def classical_space(omega: Iterable[Hashable], sigma: Iterable[Iterable], measure: Mapping) -> ParacompleteProbSpace:
    """Embed a classical probability space: pi = omega, diamond A = A, A-circ = A^c."""
    omega = frozenset(omega)
    sigma = frozenset(frozenset(s) for s in sigma)
    if not is_sigma_algebra((omega, sigma)):
        raise NotSigmaAlgebra("sigma is not a sigma-algebra on omega")
    mu = {frozenset(k): Fraction(v) for k, v in measure.items()}
    bad = _measure_violations(sigma, omega, mu)
    if bad:
        raise InvalidMeasure("; ".join(str(v) for v in bad))
    alg = SigmaPAlgebra(omega, sigma,
                        circ={A: omega - A for A in sigma},
                        diamond={A: A for A in sigma})
    return ParacompleteProbSpace(alg, omega, mu)


# ---------------------------------------------------------------- enumeration helpers

def power_set(omega: Iterable) -> frozenset:
    items = sorted(omega, key=str)
    return frozenset(frozenset(c) for r in range(len(items) + 1) for c in combinations(items, r))


def _partitions(items: list):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first, *part[i]]] + part[i + 1:]
        yield [[first], *part]


def sigma_algebras(omega: Iterable) -> Iterable[tuple[list[frozenset], frozenset]]:
    """Every sigma-algebra on a finite set, as (atoms, sigma)."""
    items = sorted(omega, key=str)
    for part in _partitions(items):
        blocks = [frozenset(b) for b in part]
        sigma = frozenset(frozenset().union(*c) for r in range(len(blocks) + 1)
                          for c in combinations(blocks, r))
        yield blocks, sigma
