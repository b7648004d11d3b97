"""Paracomplete logic with an undeterminedness operator, and its probabilities.

Parsing and printing, a Hilbert proof checker, an exact decision procedure
for the non-deterministic two-valued semantics, an exact-rational
probability engine over world distributions, and finite sigma_p-algebras.
"""
from .formula import (
    And, Formula, FormulaSet, Imp, Neg, Or, ParseError, Undet, Var,
    parse, render, subformulas, substitute,
)
from .probability import (
    BayesReport, ProbAssignment, WorldDistribution, audit_axioms, bayes,
    coherence, conditional, p_entails, prob, total_probability,
)
from .proof import (
    Axiom, Derivation, Line, MP, Premise, check_derivation, deduction_transform,
    match_axiom,
)
from .semantics import (
    CapExceeded, DecisionClosure, World, decision_closure, entails,
    enumerate_worlds, evaluate, is_tautology, truth_table,
)
from .spaces import (
    ParacompleteProbSpace, SigmaPAlgebra, classical_space, is_sigma_algebra,
    validate_sigma_p, validate_space,
)

__version__ = "0.1.0"
