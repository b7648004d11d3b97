import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from paracomplete import _kernels
from paracomplete.formula import And, Var, parse
from paracomplete.semantics import DecisionClosure, enumerate_masks, world_matrix

from conftest import small_formulas

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")


@needs_numba
@settings(max_examples=80, deadline=None)
@given(st.lists(small_formulas(), min_size=1, max_size=3))
def test_backends_agree(fs):
    c = DecisionClosure(fs)
    a = enumerate_masks(c, backend="numpy")
    b = enumerate_masks(c, backend="numba")
    assert np.array_equal(a, b)
    assert np.array_equal(world_matrix(c, backend="numpy"), world_matrix(c, backend="numba"))


def test_masks_descend():
    c = DecisionClosure([parse("#p & ~q")])
    m = enumerate_masks(c, backend="numpy")
    assert list(m) == sorted(m, reverse=True)


def test_chunk_boundary():
    # 18 atoms crosses several numpy chunks; every free assignment survives
    f = Var("x0")
    for i in range(1, 18):
        f = And(f, Var(f"x{i}"))
    c = DecisionClosure([f])
    m = enumerate_masks(c, backend="numpy")
    assert len(m) == 1 << 18
    assert m[0] == (1 << 18) - 1 and m[-1] == 0


def test_env_flag_selects_numpy(monkeypatch):
    monkeypatch.setenv("PARACOMPLETE_NUMBA", "0")
    assert not _kernels.use_numba()
    monkeypatch.setenv("PARACOMPLETE_NUMBA", "1")
    assert _kernels.use_numba() == _kernels.HAVE_NUMBA


def test_default_backend_follows_flag(monkeypatch):
    calls = []
    real = _kernels.enumerate_masks_numpy
    monkeypatch.setattr(_kernels, "enumerate_masks_numpy", lambda *a: calls.append(1) or real(*a))
    monkeypatch.setenv("PARACOMPLETE_NUMBA", "0")
    enumerate_masks(DecisionClosure([parse("#p")]))
    assert calls


@needs_numba
@pytest.mark.parametrize("text", [
    "#(p & ~q) | ~~#r -> #~p",
    "(#a | ~b) & (#c -> ~~d) & #~(a | c)",
    "#x0 & #x1 & #x2 & #x3 & #x4",  # 3125 worlds, past the initial output buffer
])
def test_backtracking_matches_full_scan(text):
    c = DecisionClosure([parse(text)])
    fast = enumerate_masks(c, backend="numba")
    assert np.array_equal(fast, enumerate_masks(c, backend="numpy"))
    assert np.all(np.diff(fast) < 0)
