"""Hilbert calculus: axiom matching, derivation checking, deduction transform."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .formula import (
    UNARY, And, Formula, FormulaSet, Imp, Neg, Or, Undet, Var,
    render,
)

__all__ = [
    "AXIOMS", "AxiomSchema", "Axiom", "Premise", "MP", "Line", "Derivation",
    "Verdict", "InvalidDerivation",
    "match_axiom", "instantiates", "instance", "check_derivation",
    "deduction_transform", "identity_derivation",
]

_A, _B, _C = Var("alpha"), Var("beta"), Var("gamma")


@dataclass(frozen=True)
class AxiomSchema:
    index: int
    patterns: tuple[Formula, ...]
    name: str = ""


# Metavariables are the pattern leaves alpha, beta, gamma.
AXIOMS: tuple[AxiomSchema, ...] = (
    AxiomSchema(1, (Imp(_A, Imp(_B, _A)),)),
    AxiomSchema(2, (Imp(Imp(_A, _B), Imp(Imp(_A, Imp(_B, _C)), Imp(_A, _C))),)),
    AxiomSchema(3, (Imp(_A, Imp(_B, And(_A, _B))),)),
    AxiomSchema(4, (Imp(And(_A, _B), _A),)),
    AxiomSchema(5, (Imp(And(_A, _B), _B),)),
    AxiomSchema(6, (Imp(_A, Or(_A, _B)),)),
    AxiomSchema(7, (Imp(_B, Or(_A, _B)),)),
    AxiomSchema(8, (Imp(Imp(_A, _C), Imp(Imp(_B, _C), Imp(Or(_A, _B), _C))),)),
    AxiomSchema(9, (Or(_A, Imp(_A, _B)),)),
    AxiomSchema(10, (Imp(_A, Imp(Neg(_A), _B)),), "explosion"),
    # both bracketings of the three-way disjunction are accepted
    AxiomSchema(11, (Or(Or(_A, Neg(_A)), Undet(_A)),
                     Or(_A, Or(Neg(_A), Undet(_A)))), "included middle"),
)


def _match(pattern: Formula, f: Formula, binding: dict[str, Formula]) -> bool:
    if type(pattern) is Var:
        bound = binding.get(pattern.name)
        if bound is None:
            binding[pattern.name] = f
            return True
        return bound == f
    if type(pattern) is not type(f):
        return False
    if isinstance(pattern, UNARY):
        return _match(pattern.child, f.child, binding)
    return _match(pattern.left, f.left, binding) and _match(pattern.right, f.right, binding)


def instantiates(f: Formula, k: int) -> Optional[dict[str, Formula]]:
    """Binding under which ``f`` is an instance of schema ``k``, or None."""
    for pattern in AXIOMS[k - 1].patterns:
        binding: dict[str, Formula] = {}
        if _match(pattern, f, binding):
            return binding
    return None


def match_axiom(f: Formula) -> Optional[tuple[int, dict[str, Formula]]]:
    """Lowest-index axiom schema that ``f`` instantiates, with its binding."""
    for schema in AXIOMS:
        binding = instantiates(f, schema.index)
        if binding is not None:
            return schema.index, binding
    return None


def instance(k: int, alpha: Formula, beta: Formula | None = None,
             gamma: Formula | None = None) -> Formula:
    """Instantiate schema ``k`` (first bracketing) with the given formulas."""
    from .formula import substitute
    binding = {"alpha": alpha}
    if beta is not None:
        binding["beta"] = beta
    if gamma is not None:
        binding["gamma"] = gamma
    return substitute(AXIOMS[k - 1].patterns[0], binding)


# ---------------------------------------------------------------- derivations

@dataclass(frozen=True)
class Axiom:
    k: int

    def __str__(self) -> str:
        return f"ax{self.k}"


@dataclass(frozen=True)
class Premise:
    def __str__(self) -> str:
        return "prem"


@dataclass(frozen=True)
class MP:
    """Modus ponens from lines ``i`` (antecedent) and ``j`` (implication)."""
    i: int
    j: int

    def __str__(self) -> str:
        return f"mp {self.i} {self.j}"


Justification = Union[Axiom, Premise, MP]


@dataclass(frozen=True)
class Line:
    index: int
    formula: Formula
    justification: Justification


@dataclass
class Derivation:
    premises: FormulaSet
    lines: list[Line] = field(default_factory=list)

    @property
    def conclusion(self) -> Formula:
        return self.lines[-1].formula

    def __str__(self) -> str:
        out = [f"premise {render(p)}" for p in self.premises]
        out += [f"{ln.index}: {render(ln.formula)} ; {ln.justification}" for ln in self.lines]
        return "\n".join(out) + "\n"


@dataclass(frozen=True)
class Verdict:
    valid: bool
    line: Optional[int] = None
    reason: Optional[str] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.valid

    def __str__(self) -> str:
        if self.valid:
            return "VALID"
        return f"INVALID line {self.line}: {self.reason}" + (f" ({self.detail})" if self.detail else "")


class InvalidDerivation(ValueError):
    def __init__(self, verdict: Verdict):
        self.verdict = verdict
        super().__init__(str(verdict))


def check_derivation(d: Derivation) -> Verdict:
    """Check every line; report the first failure.

    An MP line citing ``i j`` is accepted when either cited line is the
    implication from the other to this line.
    """
    if not d.lines:
        return Verdict(False, 0, "bad-reference", "empty derivation")
    seen: dict[int, Formula] = {}
    prev = 0
    for ln in d.lines:
        if ln.index <= prev:
            return Verdict(False, ln.index, "bad-reference", "line indices must increase")
        prev = ln.index
        just = ln.justification
        f = ln.formula
        if isinstance(just, Axiom):
            if not 1 <= just.k <= len(AXIOMS) or instantiates(f, just.k) is None:
                return Verdict(False, ln.index, "not-an-axiom", f"not an instance of axiom {just.k}")
        elif isinstance(just, Premise):
            if f not in d.premises:
                return Verdict(False, ln.index, "not-a-premise")
        elif isinstance(just, MP):
            if just.i not in seen or just.j not in seen:
                return Verdict(False, ln.index, "bad-reference", f"mp {just.i} {just.j}")
            a, b = seen[just.i], seen[just.j]
            if b != Imp(a, f) and a != Imp(b, f):
                return Verdict(False, ln.index, "mp-shape-mismatch")
        else:
            return Verdict(False, ln.index, "bad-reference", "unknown justification")
        seen[ln.index] = f
    return Verdict(True)


# ---------------------------------------------------------------- deduction theorem

class _Builder:
    def __init__(self, premises: Iterable[Formula]):
        self.premises = FormulaSet(premises)
        self.lines: list[Line] = []

    def add(self, f: Formula, just: Justification) -> int:
        n = len(self.lines) + 1
        self.lines.append(Line(n, f, just))
        return n

    def derivation(self) -> Derivation:
        return Derivation(self.premises, self.lines)


def _identity(b: _Builder, a: Formula) -> int:
    """Append a proof of a -> a using axioms 1, 2; return its line number."""
    aa = Imp(a, a)
    l1 = b.add(Imp(a, Imp(aa, a)), Axiom(1))
    l2 = b.add(Imp(Imp(a, aa), Imp(Imp(a, Imp(aa, a)), aa)), Axiom(2))
    l3 = b.add(Imp(a, aa), Axiom(1))
    l4 = b.add(Imp(Imp(a, Imp(aa, a)), aa), MP(l3, l2))
    return b.add(aa, MP(l1, l4))


def identity_derivation(a: Formula) -> Derivation:
    b = _Builder(())
    _identity(b, a)
    return b.derivation()


def deduction_transform(d: Derivation, hypothesis: Formula) -> Derivation:
    """Turn a derivation of B from G + {A} into one of A -> B from G.

    Each line phi becomes a short block concluding A -> phi: the identity
    proof when phi is A, axiom 1 + MP for axioms and other premises, and
    axiom 2 + two MPs for modus ponens lines. The output has at most five
    lines per input line.
    """
    verdict = check_derivation(d)
    if not verdict:
        raise InvalidDerivation(verdict)
    if hypothesis not in d.premises:
        raise ValueError(f"hypothesis {render(hypothesis)} is not a premise")
    a = hypothesis
    b = _Builder(d.premises.without(a))
    where: dict[int, int] = {}  # input line -> output line concluding a -> phi
    formulas: dict[int, Formula] = {}
    for ln in d.lines:
        phi, just = ln.formula, ln.justification
        formulas[ln.index] = phi
        if phi == a:
            where[ln.index] = _identity(b, a)
        elif isinstance(just, MP):
            x, y = formulas[just.i], formulas[just.j]
            if y == Imp(x, phi):
                ante, imp = just.i, just.j
            else:
                ante, imp = just.j, just.i
            psi = formulas[ante]
            ax2 = b.add(Imp(Imp(a, psi), Imp(Imp(a, Imp(psi, phi)), Imp(a, phi))), Axiom(2))
            step = b.add(Imp(Imp(a, Imp(psi, phi)), Imp(a, phi)), MP(where[ante], ax2))
            where[ln.index] = b.add(Imp(a, phi), MP(where[imp], step))
        else:
            src = b.add(phi, just)
            ax1 = b.add(Imp(phi, Imp(a, phi)), Axiom(1))
            where[ln.index] = b.add(Imp(a, phi), MP(src, ax1))
    return b.derivation()
