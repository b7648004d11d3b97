"""World-enumeration kernels.

A decision closure is compiled to a flat program over its nodes (children
before parents):

    op[n] == 0   node n is atom a[n]
    op[n] == 1   and(a[n], b[n])
    op[n] == 2   or(a[n], b[n])
    op[n] == 3   imp(a[n], b[n])

plus two constraint tables:

    neg_con[r]   = (child, neg)           forbid child = 1 and neg = 1
    undet_con[r] = (child, neg, undet)    forbid all three = 0

Assignments are bitmasks with atom 0 in the most significant bit, and worlds
are listed in descending mask order (lexicographic, 1 before 0). The numpy
path filters every mask in chunks; the numba path backtracks over atoms and
skips any prefix that already breaks a constraint.

Set ``PARACOMPLETE_NUMBA=0`` to force the pure-numpy path.
"""
from __future__ import annotations

import os

import numpy as np

_CHUNK = 1 << 16


def _numba_requested() -> bool:
    return os.environ.get("PARACOMPLETE_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")


# ---------------------------------------------------------------- numpy path

def _node_values_np(masks, k, op, a, b):
    vals = np.empty((op.shape[0], masks.shape[0]), dtype=np.bool_)
    for n in range(op.shape[0]):
        o = op[n]
        if o == 0:
            vals[n] = (masks >> (k - 1 - a[n])) & 1
        elif o == 1:
            np.logical_and(vals[a[n]], vals[b[n]], out=vals[n])
        elif o == 2:
            np.logical_or(vals[a[n]], vals[b[n]], out=vals[n])
        else:
            np.logical_or(~vals[a[n]], vals[b[n]], out=vals[n])
    return vals


def enumerate_masks_numpy(k, op, a, b, neg_con, undet_con):
    total = 1 << k
    found = []
    for hi in range(total, 0, -_CHUNK):
        lo = max(hi - _CHUNK, 0)
        masks = np.arange(hi - 1, lo - 1, -1, dtype=np.int64)
        vals = _node_values_np(masks, k, op, a, b)
        ok = np.ones(masks.shape[0], dtype=np.bool_)
        for c, ng in neg_con:
            ok &= ~(vals[c] & vals[ng])
        for c, ng, u in undet_con:
            ok &= vals[c] | vals[ng] | vals[u]
        found.append(masks[ok])
    if not found:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(found)


def node_values_numpy(masks, k, op, a, b):
    """Boolean matrix (world, node)."""
    return np.ascontiguousarray(_node_values_np(masks, k, op, a, b).T)


# ---------------------------------------------------------------- numba path
# Kernels live at module level so numba's on-disk cache can find them again.

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is optional at runtime
    HAVE_NUMBA = False

if HAVE_NUMBA:
    @njit(cache=True, nogil=True)
    def _eval_into(m, k, op, a, b, scratch):
        for n in range(op.shape[0]):
            o = op[n]
            if o == 0:
                scratch[n] = (m >> (k - 1 - a[n])) & 1
            elif o == 1:
                scratch[n] = scratch[a[n]] & scratch[b[n]]
            elif o == 2:
                scratch[n] = scratch[a[n]] | scratch[b[n]]
            else:
                scratch[n] = (1 - scratch[a[n]]) | scratch[b[n]]

    @njit(cache=True, nogil=True)
    def _eval_range(lo, hi, bits, k, op, a, b, v):
        for n in range(lo, hi):
            o = op[n]
            if o == 0:
                v[n] = bits[a[n]]
            elif o == 1:
                v[n] = v[a[n]] & v[b[n]]
            elif o == 2:
                v[n] = v[a[n]] | v[b[n]]
            else:
                v[n] = (1 - v[a[n]]) | v[b[n]]

    @njit(cache=True, nogil=True)
    def enumerate_masks_numba(k, op, a, b, neg_con, undet_con):
        # Depth-first over atoms, 1 before 0, so leaves come out in descending
        # mask order. Variables are the leading atoms; every later atom is a
        # ~/# node whose constraint only reads nodes that precede it, so the
        # constraint is checked as soon as the atom is set and a failing
        # prefix prunes its whole subtree.
        n_nodes = op.shape[0]
        nv = k - neg_con.shape[0] - undet_con.shape[0]
        node_of = np.zeros(k, dtype=np.int64)
        for n in range(n_nodes):
            if op[n] == 0:
                node_of[a[n]] = n
        kind = np.zeros(n_nodes, dtype=np.int8)
        c1 = np.zeros(n_nodes, dtype=np.int64)
        c2 = np.zeros(n_nodes, dtype=np.int64)
        for r in range(neg_con.shape[0]):
            kind[neg_con[r, 1]] = 1
            c1[neg_con[r, 1]] = neg_con[r, 0]
        for r in range(undet_con.shape[0]):
            kind[undet_con[r, 2]] = 2
            c1[undet_con[r, 2]] = undet_con[r, 0]
            c2[undet_con[r, 2]] = undet_con[r, 1]

        bits = np.zeros(k, dtype=np.uint8)
        v = np.zeros(n_nodes, dtype=np.uint8)
        state = np.zeros(k + 1, dtype=np.int8)
        out = np.empty(1024, dtype=np.int64)
        count = 0
        d = 0
        while d >= 0:
            if d == k:
                m = np.int64(0)
                for i in range(k):
                    m = (m << 1) | bits[i]
                if count == out.shape[0]:
                    grown = np.empty(2 * count, dtype=np.int64)
                    grown[:count] = out
                    out = grown
                out[count] = m
                count += 1
                d -= 1
                continue
            s = state[d]
            if s == 2:
                state[d] = 0
                d -= 1
                continue
            if s == 0 and d >= nv:
                lo = node_of[d - 1] + 1 if d > nv else 0
                _eval_range(lo, node_of[d], bits, k, op, a, b, v)
            val = 1 - s
            state[d] = s + 1
            bits[d] = val
            if d >= nv:
                n = node_of[d]
                v[n] = val
                t = kind[n]
                if t == 1 and val == 1 and v[c1[n]] == 1:
                    continue
                if t == 2 and (val | v[c1[n]] | v[c2[n]]) == 0:
                    continue
            d += 1
            state[d] = 0
        return out[:count].copy()

    @njit(cache=True, nogil=True)
    def node_values_numba(masks, k, op, a, b):
        vals = np.empty((masks.shape[0], op.shape[0]), dtype=np.bool_)
        scratch = np.zeros(op.shape[0], dtype=np.uint8)
        for w in range(masks.shape[0]):
            _eval_into(masks[w], k, op, a, b, scratch)
            for n in range(op.shape[0]):
                vals[w, n] = scratch[n] == 1
        return vals


def use_numba() -> bool:
    return HAVE_NUMBA and _numba_requested()


def enumerate_masks(k, op, a, b, neg_con, undet_con, *, backend: str | None = None):
    backend = backend or ("numba" if use_numba() else "numpy")
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is not installed")
        return enumerate_masks_numba(np.int64(k), op, a, b, neg_con, undet_con)
    return enumerate_masks_numpy(k, op, a, b, neg_con, undet_con)


def node_values(masks, k, op, a, b, *, backend: str | None = None):
    backend = backend or ("numba" if use_numba() else "numpy")
    if backend == "numba":
        return node_values_numba(masks, np.int64(k), op, a, b)
    return node_values_numpy(masks, k, op, a, b)
