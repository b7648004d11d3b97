from __future__ import annotations

import itertools
from pathlib import Path

import pytest
from hypothesis import strategies as st

from paracomplete.formula import And, Formula, Imp, Neg, Or, Undet, Var

DATA = Path(__file__).parent / "data"

variables = st.sampled_from(["p", "q", "r", "s1", "x_2"]).map(Var)


def formulas(max_leaves: int = 12) -> st.SearchStrategy[Formula]:
    return st.recursive(
        variables,
        lambda kids: st.one_of(
            kids.map(Neg), kids.map(Undet),
            st.tuples(kids, kids).map(lambda t: And(*t)),
            st.tuples(kids, kids).map(lambda t: Or(*t)),
            st.tuples(kids, kids).map(lambda t: Imp(*t)),
        ),
        max_leaves=max_leaves,
    )


def small_formulas() -> st.SearchStrategy[Formula]:
    """Over p, q only, shallow enough to keep closures small."""
    leaves = st.sampled_from(["p", "q"]).map(Var)
    return st.recursive(
        leaves,
        lambda kids: st.one_of(
            kids.map(Neg), kids.map(Undet),
            st.tuples(kids, kids).map(lambda t: And(*t)),
            st.tuples(kids, kids).map(lambda t: Or(*t)),
            st.tuples(kids, kids).map(lambda t: Imp(*t)),
        ),
        max_leaves=4,
    )


# ---------------------------------------------------------------- brute-force oracle

def oracle_worlds(fs):
    """Independent enumeration: itertools.product over atoms, constraints checked
    straight from the valuation conditions. Returns (atoms, list of dicts)."""
    nodes: list[Formula] = []

    def visit(f):
        if isinstance(f, (Neg, Undet)):
            visit(f.child)
            if isinstance(f, Undet):
                visit(Neg(f.child))
        elif isinstance(f, (And, Or, Imp)):
            visit(f.left)
            visit(f.right)
        if f not in nodes:
            nodes.append(f)

    for f in fs:
        visit(f)
    atoms = sorted({f for f in nodes if isinstance(f, Var)}, key=lambda v: v.name)
    atoms += [f for f in nodes if isinstance(f, (Neg, Undet))]

    def val(v, f):
        if f in v:
            return v[f]
        if isinstance(f, And):
            return val(v, f.left) and val(v, f.right)
        if isinstance(f, Or):
            return val(v, f.left) or val(v, f.right)
        return (not val(v, f.left)) or val(v, f.right)

    out = []
    for bits in itertools.product((1, 0), repeat=len(atoms)):
        v = dict(zip(atoms, bits))
        ok = True
        for f in nodes:
            if isinstance(f, Neg) and val(v, f.child) and v[f]:
                ok = False
            if isinstance(f, Undet) and not val(v, f.child) and not v[Neg(f.child)] and not v[f]:
                ok = False
        if ok:
            out.append(v)
    return atoms, out, (lambda v, f: int(bool(val(v, f))))


@pytest.fixture
def data_dir() -> Path:
    return DATA


# ---------------------------------------------------------------- acceptance report

_ACCEPTANCE: dict[str, str] = {}
_NOTES: dict[str, list[str]] = {}


@pytest.fixture
def note(request):
    """Attach a detail line to the acceptance summary for the running test."""
    lines = _NOTES.setdefault(request.node.name, [])
    return lines.append


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE.items():
        tag = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{tag}  {name}")
        for line in _NOTES.get(name, []):
            terminalreporter.write_line(f"        {line}")
