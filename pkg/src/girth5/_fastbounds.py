"""Compiled branch-and-bound kernel for the exact edge-count oracle.

Mirrors the reference recursion in bounds.py exactly: same column-major
slot order, same include-first branching, same contiguous-touch symmetry
cut, and the same two prunes (undecided slots, stale legal count), so
both engines visit the same node sequence and return identical node
counts.  Only handles girth threshold 5 on at most 64 vertices, the
range where uint64 adjacency rows apply.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

    def njit(*a, **k):
        def wrap(f):
            return f

        return wrap


def available() -> bool:
    return _HAVE_NUMBA


U1 = np.uint64(1)


@njit(cache=True)
def _ball3(rows, s):
    # vertices within distance 3 of s, via two rounds of neighbor expansion
    seen = rows[s] | (U1 << np.uint64(s))
    frontier = rows[s]
    for _ in range(2):
        nxt = np.uint64(0)
        for x in range(64):
            if (frontier >> np.uint64(x)) & U1:
                nxt |= rows[x]
        frontier = nxt & ~seen
        if frontier == np.uint64(0):
            break
        seen |= frontier
    return seen


@njit(cache=True)
def _legal_remaining(idx, total, pair_u, pair_v, rows, ball, ball_ok):
    for i in range(64):
        ball_ok[i] = False
    count = 0
    for j in range(idx, total):
        u = pair_u[j]
        v = pair_v[j]
        if not ball_ok[u]:
            ball[u] = _ball3(rows, u)
            ball_ok[u] = True
        if not (ball[u] >> np.uint64(v)) & U1:
            count += 1
    return count


@njit(cache=True)
def _kernel(n, total, budget, pair_u, pair_v, init_best, init_rows, best_rows):
    rows = np.zeros(64, dtype=np.uint64)
    ball = np.zeros(64, dtype=np.uint64)
    ball_ok = np.zeros(64, dtype=np.bool_)

    best = init_best
    for i in range(64):
        best_rows[i] = init_rows[i]

    cap = total + 2
    s_idx = np.zeros(cap, dtype=np.int64)
    s_m = np.zeros(cap, dtype=np.int64)
    s_maxt = np.zeros(cap, dtype=np.int64)
    s_lr = np.zeros(cap, dtype=np.int64)
    s_stage = np.zeros(cap, dtype=np.int64)
    s_inc = np.zeros(cap, dtype=np.int64)

    sp = 0
    s_idx[0] = 0
    s_m[0] = 0
    s_maxt[0] = 0
    s_lr[0] = total
    s_stage[0] = 0
    s_inc[0] = -1
    sp = 1

    nodes = np.int64(0)
    exhausted = np.int64(0)

    while sp > 0:
        top = sp - 1
        stage = s_stage[top]
        idx = s_idx[top]
        m = s_m[top]
        maxt = s_maxt[top]
        lr = s_lr[top]

        if stage == 0:
            nodes += 1
            if nodes > budget:
                exhausted = 1
                break
            if m > best:
                best = m
                for i in range(n):
                    best_rows[i] = rows[i]
            if idx == total:
                sp -= 1
                continue
            room = total - idx
            if lr < room:
                room = lr
            if m + room <= best:
                sp -= 1
                continue
            u = pair_u[idx]
            v = pair_v[idx]
            s_stage[top] = 1
            s_inc[top] = -1
            if v <= maxt + 1:
                b = _ball3(rows, u)
                if not (b >> np.uint64(v)) & U1:
                    rows[u] |= U1 << np.uint64(v)
                    rows[v] |= U1 << np.uint64(u)
                    s_inc[top] = idx
                    child_maxt = maxt
                    if v > child_maxt:
                        child_maxt = v
                    child_lr = _legal_remaining(
                        idx + 1, total, pair_u, pair_v, rows, ball, ball_ok
                    )
                    s_idx[sp] = idx + 1
                    s_m[sp] = m + 1
                    s_maxt[sp] = child_maxt
                    s_lr[sp] = child_lr
                    s_stage[sp] = 0
                    s_inc[sp] = -1
                    sp += 1
        elif stage == 1:
            inc = s_inc[top]
            if inc >= 0:
                u = pair_u[inc]
                v = pair_v[inc]
                rows[u] &= ~(U1 << np.uint64(v))
                rows[v] &= ~(U1 << np.uint64(u))
            s_stage[top] = 2
            s_idx[sp] = idx + 1
            s_m[sp] = m
            s_maxt[sp] = maxt
            s_lr[sp] = lr
            s_stage[sp] = 0
            s_inc[sp] = -1
            sp += 1
        else:
            sp -= 1

    return best, nodes, exhausted


def run(n, pairs, budget, init_best, init_rows_list):
    """Returns (best_size, nodes, exact, best_rows as python ints)."""
    total = len(pairs)
    pair_u = np.array([p[0] for p in pairs], dtype=np.int64)
    pair_v = np.array([p[1] for p in pairs], dtype=np.int64)
    init_rows = np.zeros(64, dtype=np.uint64)
    for i, r in enumerate(init_rows_list):
        init_rows[i] = np.uint64(r)
    best_rows = np.zeros(64, dtype=np.uint64)
    best, nodes, exhausted = _kernel(
        np.int64(n),
        np.int64(total),
        np.int64(budget),
        pair_u,
        pair_v,
        np.int64(init_best),
        init_rows,
        best_rows,
    )
    rows_out = [int(best_rows[i]) for i in range(n)]
    return int(best), int(nodes), not bool(exhausted), rows_out
