import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from paracomplete.formula import And, Neg, Or, Undet, Var, parse
from paracomplete.generators import random_distribution
from paracomplete.probability import (
    ClosureMismatch, HypothesisViolated, ProbAssignment, WorldDistribution,
    ZeroCondition, audit_axioms, bayes, coherence, conditional, induced_assignment,
    p_entails, prob, total_probability,
)
from paracomplete.semantics import DecisionClosure, entails, enumerate_worlds, evaluate

from conftest import oracle_worlds, small_formulas

P = parse
p, q = Var("p"), Var("q")


@pytest.fixture
def uniform5():
    return WorldDistribution.uniform(DecisionClosure([P("#p")]))


@pytest.fixture
def uniform10():
    return WorldDistribution.uniform(DecisionClosure([P("#a"), P("b")]))


def oracle_prob(d, f):
    """Probability via the brute-force enumerator, matched to d's worlds by assignment."""
    atoms, worlds, val = oracle_worlds(list(d.closure.base) + [f])
    total = F(0)
    for w, weight in d.weights.items():
        a = w.assignment
        match = [v for v in worlds if all(v[x] == a[x] for x in a)]
        assert len(match) >= 1
        total += weight * val(match[0], f)
    return total


# ---------------------------------------------------------------- prob, conditional

def test_uniform5_marginals(uniform5):
    assert len(uniform5.support) == 5
    assert [prob(uniform5, x) for x in ("p", "~p", "#p")] == [F(2, 5), F(2, 5), F(3, 5)]
    assert prob(uniform5, "p & ~p") == 0
    assert prob(uniform5, "p | ~p | #p") == 1


def test_uniform5_conditional(uniform5):
    assert conditional(uniform5, "p", "p | ~p") == F(1, 2)
    assert conditional(uniform5, "p", "p") == 1
    with pytest.raises(ZeroCondition):
        conditional(uniform5, "p & ~p", "p & ~p")


def test_conditional_on_contradiction_needs_covered_formula():
    d = WorldDistribution.uniform(DecisionClosure([P("q"), P("p & ~p")]))
    with pytest.raises(ZeroCondition):
        conditional(d, "q", "p & ~p")


def test_point_mass_is_a_valuation():
    c = DecisionClosure([P("#p | q"), P("~~p")])
    for w in enumerate_worlds(c):
        d = WorldDistribution.point_mass(w)
        for f in c.nodes:
            assert prob(d, f) == evaluate(w, f)


def test_closure_mismatch(uniform5):
    with pytest.raises(ClosureMismatch):
        prob(uniform5, "q")
    with pytest.raises(ClosureMismatch):
        prob(uniform5, "~~p")


def test_distribution_validation():
    c = DecisionClosure([P("p")])
    w1, w0 = enumerate_worlds(c)
    with pytest.raises(ValueError):
        WorldDistribution(c, {w1: F(1, 2)})
    with pytest.raises(ValueError):
        WorldDistribution(c, {w1: F(3, 2), w0: F(-1, 2)})
    with pytest.raises(TypeError):
        WorldDistribution(c, {w1: 0.5, w0: 0.5})
    other = DecisionClosure([P("q")])
    with pytest.raises(ClosureMismatch):
        WorldDistribution(c, {enumerate_worlds(other)[0]: 1})


@settings(max_examples=60, deadline=None)
@given(st.lists(small_formulas(), min_size=1, max_size=2), small_formulas(), st.integers(0, 10**6))
def test_prob_matches_brute_force(base, f, seed):
    c = DecisionClosure([*base, f])
    d = random_distribution(c, random.Random(seed))
    assert prob(d, f) == oracle_prob(d, f)


# ---------------------------------------------------------------- laws on random distributions

def rand_dist(seed, fs):
    return random_distribution(DecisionClosure(fs), random.Random(seed))


@settings(max_examples=80, deadline=None)
@given(small_formulas(), st.integers(0, 10**6))
def test_single_formula_laws(a, seed):
    d = rand_dist(seed, [Or(Or(a, Neg(a)), Undet(a))])
    assert prob(d, And(a, Neg(a))) == 0
    assert prob(d, Or(a, Neg(a))) == prob(d, a) + prob(d, Neg(a))
    assert prob(d, Or(Or(a, Neg(a)), Undet(a))) == 1


@settings(max_examples=60, deadline=None)
@given(small_formulas(), small_formulas(), small_formulas(), st.integers(0, 10**6))
def test_distribution_identities(phi, psi, theta, seed):
    e1 = (And(Or(psi, theta), phi), Or(And(phi, psi), And(phi, theta)))
    e2 = (And(phi, psi), And(psi, phi))
    e3 = (And(And(phi, psi), And(phi, theta)), And(And(phi, psi), theta))
    d = rand_dist(seed, [*e1, *e2, *e3])
    for left, right in (e1, e2, e3):
        assert prob(d, left) == prob(d, right)


@settings(max_examples=60, deadline=None)
@given(small_formulas(), small_formulas(), st.integers(0, 10**6))
def test_equivalents_get_equal_probability(phi, psi, seed):
    d = rand_dist(seed, [phi, psi])
    if entails([phi], psi) and entails([psi], phi):
        assert prob(d, phi) == prob(d, psi)


@settings(max_examples=60, deadline=None)
@given(st.lists(small_formulas(), min_size=1, max_size=3), small_formulas(), st.integers(0, 10**6))
def test_certainty_is_preserved_by_entailment(premises, beta, seed):
    c = DecisionClosure([*premises, beta])
    rng = random.Random(seed)
    good = [w for w in enumerate_worlds(c) if all(evaluate(w, g) for g in premises)]
    if not good:
        return
    picked = rng.sample(good, rng.randint(1, len(good)))
    d = WorldDistribution(c, {w: F(1, len(picked)) for w in picked})
    assert all(prob(d, g) == 1 for g in premises)
    if entails(premises, beta):
        assert prob(d, beta) == 1


@settings(max_examples=40, deadline=None)
@given(st.lists(small_formulas(), min_size=2, max_size=4), st.integers(0, 10**6))
def test_induced_tables_audit_clean(fs, seed):
    window = list(fs) + [Or(fs[0], fs[1]), And(fs[0], fs[1])]
    d = rand_dist(seed, window)
    assert audit_axioms(induced_assignment(d, window)) == []


# ---------------------------------------------------------------- total probability

def test_total_probability_uniform5(uniform5):
    t = total_probability(uniform5, "p", "p")
    assert (t.p_beta, t.p_beta_and_alpha, t.p_beta_and_neg_alpha,
            t.p_beta_and_undet_alpha, t.p_beta_and_overlap) == \
        (F(2, 5), F(2, 5), 0, F(1, 5), F(1, 5))
    assert t.identity_holds


@settings(max_examples=60, deadline=None)
@given(small_formulas(), small_formulas(), st.integers(0, 10**6))
def test_total_probability_identity(a, b, seed):
    d = rand_dist(seed, [And(b, And(Or(a, Neg(a)), Undet(a)))])
    assert total_probability(d, a, b).identity_holds


def test_total_probability_without_undetermined_mass():
    c = DecisionClosure([P("#p & q")])
    ws = [w for w in enumerate_worlds(c) if w[P("#p")] == 0]
    d = WorldDistribution(c, {w: F(1, len(ws)) for w in ws})
    t = total_probability(d, "p", "q")
    assert t.p_beta_and_undet_alpha == 0 and t.p_beta_and_overlap == 0
    assert t.p_beta == t.p_beta_and_alpha + t.p_beta_and_neg_alpha


def test_total_probability_point_mass():
    c = DecisionClosure([P("#p & q")])
    for w in enumerate_worlds(c):
        t = total_probability(WorldDistribution.point_mass(w), "p", "q")
        assert t.identity_holds
        assert {t.p_beta, t.p_beta_and_alpha, t.p_beta_and_overlap} <= {0, 1}


# ---------------------------------------------------------------- bayes

def test_bayes_uniform10(uniform10):
    a, b = P("a"), P("b")
    assert [prob(uniform10, x) for x in ("a", "~a", "#a", "(a | ~a) & #a")] == \
        [F(2, 5), F(2, 5), F(3, 5), F(2, 5)]
    for cond in ("a", "~a", "#a", "(a | ~a) & #a"):
        assert conditional(uniform10, b, cond) == F(1, 2)
    r = bayes(uniform10, a, b)
    assert r.K == F(1, 5)
    assert r.denominator == F(1, 2)
    assert r.posterior == F(2, 5) == conditional(uniform10, a, b)
    assert r.terms == (F(1, 5), F(1, 5), F(3, 10))
    assert r.denominator == sum(r.terms) - r.K
    assert r.matches_direct


def test_bayes_degenerate_is_classical():
    c = DecisionClosure([P("#a"), P("b")])
    ws = [w for w in enumerate_worlds(c) if w[P("#a")] == 0]
    d = WorldDistribution(c, {w: F(1, len(ws)) for w in ws})
    with pytest.raises(HypothesisViolated):
        bayes(d, "a", "b")
    r = bayes(d, "a", "b", allow_degenerate=True)
    assert r.K == 0 and r.terms[2] == 0
    pa, pna = prob(d, "a"), prob(d, "~a")
    classical = conditional(d, "b", "a") * pa / (conditional(d, "b", "a") * pa
                                                  + conditional(d, "b", "~a") * pna)
    assert r.posterior == classical == conditional(d, "a", "b")


def test_bayes_names_zero_negation():
    c = DecisionClosure([P("#a"), P("b")])
    ws = [w for w in enumerate_worlds(c) if w[P("~a")] == 0]
    d = WorldDistribution(c, {w: F(1, len(ws)) for w in ws})
    with pytest.raises(HypothesisViolated) as e:
        bayes(d, "a", "b")
    assert e.value.term == P("~a")


@settings(max_examples=80, deadline=None)
@given(small_formulas(), small_formulas(), st.integers(0, 10**6))
def test_bayes_agrees_with_definition(a, b, seed):
    d = rand_dist(seed, [Or(Or(a, Neg(a)), Undet(a)), b, And(a, b)])
    try:
        r = bayes(d, a, b)
    except HypothesisViolated:
        return
    assert r.posterior == prob(d, And(a, b)) / prob(d, b)


# ---------------------------------------------------------------- audit

def test_audit_examples():
    assert audit_axioms({P("p | ~p | #p"): 1}) == []
    v = audit_axioms({P("p & ~p"): F(1, 2)})
    assert [x.kind for x in v] == ["antitautologicity"]
    v = audit_axioms({P("p"): F(3, 4), P("p | q"): F(1, 2)})
    assert [x.kind for x in v] == ["comparison"]
    assert v[0].formulas == (P("p"), P("p | q"))


def test_audit_tautologicity_and_additivity():
    v = audit_axioms({P("p | ~p | #p"): F(1, 2)})
    assert [x.kind for x in v] == ["tautologicity"]
    v = audit_axioms({P("p"): F(1, 2), P("q"): F(1, 2), P("p | q"): F(1, 2), P("p & q"): F(1, 4)})
    assert "additivity" in {x.kind for x in v}


def naive_audit_kinds(t):
    """Each condition decided on its own closure, straight from the definitions."""
    kinds = []
    for f, v in t.items():
        if v != 1 and entails([], f).holds:
            kinds.append(("tautologicity", (f,)))
        if v != 0 and not any(evaluate(w, f) for w in enumerate_worlds(DecisionClosure([f]))):
            kinds.append(("antitautologicity", (f,)))
    for x in t:
        for y in t:
            if x != y and t[x] > t[y] and entails([x], y).holds:
                kinds.append(("comparison", (x, y)))
    return sorted(kinds, key=str)


grid = st.sampled_from([F(0), F(1, 4), F(1, 2), F(3, 4), F(1)])


@settings(max_examples=120, deadline=None)
@given(st.dictionaries(small_formulas(), grid, min_size=1, max_size=5))
def test_audit_matches_pairwise_oracle(table):
    got = [(v.kind, v.formulas) for v in audit_axioms(table) if v.kind != "additivity"]
    assert sorted(got, key=str) == naive_audit_kinds(table)


def test_audit_falls_back_when_joint_closure_is_over_cap():
    # the joint closure has 12 atoms, every single check needs at most 9
    t = {P("#a"): F(1, 2), P("#b"): F(1, 2), P("#c"): F(1, 2), P("#d"): F(1, 2),
         P("#a & #b"): F(3, 4)}
    v = audit_axioms(t, cap=1 << 9)
    assert [(x.kind, x.formulas) for x in v] == [
        ("comparison", (P("#a & #b"), P("#a"))), ("comparison", (P("#a & #b"), P("#b")))]
    assert [x.formulas for x in audit_axioms(t)] == [x.formulas for x in v]


def test_prob_assignment_validates():
    with pytest.raises(ValueError):
        ProbAssignment({"p": F(3, 2)})
    with pytest.raises(TypeError):
        ProbAssignment({"p": 0.5})
    assert ProbAssignment({"p": "1/3"})[p] == F(1, 3)


# ---------------------------------------------------------------- coherence

def test_coherence_three_halves():
    t = {P("p"): F(1, 2), P("~p"): F(1, 2), P("#p"): F(1, 2)}
    r = coherence(t)
    assert r.feasible
    for f, v in t.items():
        assert prob(r.witness, f) == v
    assert audit_axioms(induced_assignment(r.witness, t)) == []


def test_coherence_contradiction():
    assert not coherence({P("p"): 1, P("~p"): 1})


def test_coherence_half_lem():
    r = coherence({P("p | ~p"): F(1, 2)})
    assert r and prob(r.witness, "p | ~p") == F(1, 2)


def test_coherence_universe_extends_closure():
    r = coherence({P("p"): F(1, 2)}, universe=[P("#p")])
    assert P("#p") in r.witness.closure.nodes


def test_coherence_brute_force_small_grid():
    # oracle: search rational mixtures of point masses with denominator 2
    c = DecisionClosure([P("#p")])
    ws = enumerate_worlds(c)
    reachable = set()
    for i in range(len(ws)):
        for j in range(i, len(ws)):
            d = WorldDistribution(c, {ws[i]: F(1, 2), ws[j]: F(1, 2)}) if i != j else \
                WorldDistribution.point_mass(ws[i])
            reachable.add(tuple(prob(d, x) for x in ("p", "~p", "#p")))
    halves = [F(0), F(1, 2), F(1)]
    for a in halves:
        for b in halves:
            for u in halves:
                got = bool(coherence({P("p"): a, P("~p"): b, P("#p"): u}))
                if (a, b, u) in reachable:
                    assert got


# ---------------------------------------------------------------- p_entails

@pytest.mark.parametrize("premises, f, expected", [
    (["p"], "p | q", True),
    (["#p"], "p | ~p", False),
    (["p", "~p"], "q", True),
    ([], "p | ~p | #p", True),
    ([], "p | ~p", False),
])
def test_p_entails(premises, f, expected):
    assert p_entails([P(x) for x in premises], P(f)) is expected


@settings(max_examples=80, deadline=None)
@given(st.lists(small_formulas(), max_size=2), small_formulas())
def test_p_entails_agrees_with_entails(premises, f):
    assert p_entails(premises, f) == entails(premises, f).holds
