"""Accelerated local-search kernel (optional, needs numba).

Same loop semantics as search._run_reference for graphs of order <= 64 and
girth threshold 5, operating on uint64 adjacency bitmasks.  The RNG is
numba's Mersenne Twister seeded per run, so results are deterministic per
(seed graph, params, rng_seed) but form a different stream than the
reference engine.  Falls back cleanly: available() is False when numba is
not importable, and callers route to the reference engine.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


def available() -> bool:
    return _HAVE_NUMBA


U0 = np.uint64(0)
U1 = np.uint64(1)
FULL = np.uint64(0xFFFFFFFFFFFFFFFF)
_NEVER = -(1 << 60)
_MAX_RECORDS = 300


@njit(cache=True)
def _ball3(rows, nbr, deg, s):
    """Vertices within distance 3 of s, as a bitmask (s included)."""
    acc = rows[s] | (U1 << np.uint64(s))
    for i in range(deg[s]):
        w = nbr[s, i]
        acc |= rows[w]
        for j in range(deg[w]):
            acc |= rows[nbr[w, j]]
    return acc


@njit(cache=True)
def _kernel(n, rows, total_iters, window, k_max, p, rng_seed, out_rows, out_sizes):
    np.random.seed(rng_seed)
    nbr = np.zeros((64, 64), np.int64)
    deg = np.zeros(64, np.int64)
    for u in range(n):
        for v in range(n):
            if (rows[u] >> np.uint64(v)) & U1:
                nbr[u, deg[u]] = v
                deg[u] += 1
    edge_a = np.zeros(2080, np.int64)
    edge_b = np.zeros(2080, np.int64)
    edge_pos = np.full(4096, -1, np.int64)
    m = 0
    for u in range(n):
        for v in range(u + 1, n):
            if (rows[u] >> np.uint64(v)) & U1:
                edge_a[m] = u
                edge_b[m] = v
                edge_pos[(u << 6) | v] = m
                m += 1
    legal_a = np.zeros(2080, np.int64)
    legal_b = np.zeros(2080, np.int64)
    legal_pos = np.full(4096, -1, np.int64)
    nlegal = 0
    for u in range(n):
        ball = _ball3(rows, nbr, deg, u)
        for v in range(u + 1, n):
            if not (ball >> np.uint64(v)) & U1:
                legal_a[nlegal] = u
                legal_b[nlegal] = v
                legal_pos[(u << 6) | v] = nlegal
                nlegal += 1
    ledger = np.full(4096, _NEVER, np.int64)
    elig = np.zeros(2080, np.int64)
    ring_u = np.zeros(64, np.int64)
    ring_v = np.zeros(64, np.int64)
    best = m
    nrec = 0
    it = 0
    c = m if m > 0 else 1
    while it < total_iters and c > 0:
        # fill to edge-maximality
        while nlegal > 0:
            if np.random.random() < p:
                bestsum = -1
                ties = 0
                for i in range(nlegal):
                    d = deg[legal_a[i]] + deg[legal_b[i]]
                    if d > bestsum:
                        bestsum = d
                        ties = 1
                    elif d == bestsum:
                        ties += 1
                pick = np.random.randint(0, ties)
                sel = -1
                for i in range(nlegal):
                    if deg[legal_a[i]] + deg[legal_b[i]] == bestsum:
                        if pick == 0:
                            sel = i
                            break
                        pick -= 1
                u = legal_a[sel]
                v = legal_b[sel]
            else:
                sel = np.random.randint(0, nlegal)
                u = legal_a[sel]
                v = legal_b[sel]
            # pre-add rings of radius 2 around u and v
            b0u = U1 << np.uint64(u)
            b0v = U1 << np.uint64(v)
            r1u = rows[u]
            r1v = rows[v]
            acc = U0
            for i in range(deg[u]):
                acc |= rows[nbr[u, i]]
            r2u = acc & (FULL ^ r1u) & (FULL ^ b0u)
            acc = U0
            for i in range(deg[v]):
                acc |= rows[nbr[v, i]]
            r2v = acc & (FULL ^ r1v) & (FULL ^ b0v)
            cum1u = b0u | r1u
            cum2u = cum1u | r2u
            cum1v = b0v | r1v
            cum2v = cum1v | r2v
            # kill every legal pair now within distance 3, descending scan
            i = nlegal - 1
            while i >= 0:
                s = legal_a[i]
                t = legal_b[i]
                bs = U1 << np.uint64(s)
                bt = U1 << np.uint64(t)
                kill = False
                if (bs & b0u) != U0 and (bt & cum2v) != U0:
                    kill = True
                elif (bt & b0u) != U0 and (bs & cum2v) != U0:
                    kill = True
                elif (bs & r1u) != U0 and (bt & cum1v) != U0:
                    kill = True
                elif (bt & r1u) != U0 and (bs & cum1v) != U0:
                    kill = True
                elif (bs & r2u) != U0 and (bt & b0v) != U0:
                    kill = True
                elif (bt & r2u) != U0 and (bs & b0v) != U0:
                    kill = True
                if kill:
                    legal_pos[(s << 6) | t] = -1
                    nlegal -= 1
                    if i != nlegal:
                        ls = legal_a[nlegal]
                        lt = legal_b[nlegal]
                        legal_a[i] = ls
                        legal_b[i] = lt
                        legal_pos[(ls << 6) | lt] = i
                i -= 1
            # mutate
            rows[u] |= b0v
            rows[v] |= b0u
            nbr[u, deg[u]] = v
            deg[u] += 1
            nbr[v, deg[v]] = u
            deg[v] += 1
            edge_a[m] = u
            edge_b[m] = v
            edge_pos[(u << 6) | v] = m
            m += 1
        if m > best:
            best = m
            if nrec < _MAX_RECORDS:
                for x in range(n):
                    out_rows[nrec, x] = rows[x]
                out_sizes[nrec] = m
                nrec += 1
        # eligible edges: not deleted within the recency window
        c = 0
        for ei in range(m):
            if it - ledger[(edge_a[ei] << 6) | edge_b[ei]] > window:
                elig[c] = ei
                c += 1
        if c >= 1:
            k = np.random.randint(1, k_max + 1)
            kk = k if k < c else c
            for j in range(kk):
                r = j + np.random.randint(0, c - j)
                tmp = elig[j]
                elig[j] = elig[r]
                elig[r] = tmp
            # indices into the edge arrays shift as edges are removed, so
            # resolve the chosen pairs first
            for j in range(kk):
                ei = elig[j]
                elig[j] = (edge_a[ei] << 6) | edge_b[ei]
            for j in range(kk):
                pid = elig[j]
                u = pid >> 6
                v = pid & 63
                ledger[pid] = it
                b0u = U1 << np.uint64(u)
                b0v = U1 << np.uint64(v)
                # pre-delete rings
                r1u = rows[u]
                r1v = rows[v]
                acc = U0
                for i in range(deg[u]):
                    acc |= rows[nbr[u, i]]
                r2u = acc & (FULL ^ r1u) & (FULL ^ b0u)
                acc = U0
                for i in range(deg[v]):
                    acc |= rows[nbr[v, i]]
                r2v = acc & (FULL ^ r1v) & (FULL ^ b0v)
                nu = 0
                for x in range(n):
                    if (r2u >> np.uint64(x)) & U1:
                        ring_u[nu] = x
                        nu += 1
                nv = 0
                for x in range(n):
                    if (r2v >> np.uint64(x)) & U1:
                        ring_v[nv] = x
                        nv += 1
                # mutate: drop the edge everywhere
                rows[u] &= FULL ^ b0v
                rows[v] &= FULL ^ b0u
                for i in range(deg[u]):
                    if nbr[u, i] == v:
                        deg[u] -= 1
                        nbr[u, i] = nbr[u, deg[u]]
                        break
                for i in range(deg[v]):
                    if nbr[v, i] == u:
                        deg[v] -= 1
                        nbr[v, i] = nbr[v, deg[v]]
                        break
                ei = edge_pos[pid]
                edge_pos[pid] = -1
                m -= 1
                if ei != m:
                    la = edge_a[m]
                    lb = edge_b[m]
                    edge_a[ei] = la
                    edge_b[ei] = lb
                    edge_pos[(la << 6) | lb] = ei
                # revive pairs whose only short path used the edge:
                # ring(s,u) + ring(t,v) <= 2 in the pre-delete graph
                cum1u = b0u | r1u
                cum2u = cum1u | r2u
                cum1v = b0v | r1v
                cum2v = cum1v | r2v
                for side in range(2):
                    for a in range(3):
                        if side == 0:
                            allowed = cum2v if a == 0 else (cum1v if a == 1 else b0v)
                        else:
                            allowed = cum2u if a == 0 else (cum1u if a == 1 else b0u)
                        # enumerate layer-a vertices around this side's pivot
                        if side == 0:
                            if a == 0:
                                s_first = u
                                s_count = 1
                            elif a == 1:
                                s_first = -1
                                s_count = deg[u]
                            else:
                                s_first = -2
                                s_count = nu
                        else:
                            if a == 0:
                                s_first = v
                                s_count = 1
                            elif a == 1:
                                s_first = -1
                                s_count = deg[v]
                            else:
                                s_first = -2
                                s_count = nv
                        for si in range(s_count):
                            if s_first >= 0:
                                s = s_first
                            elif s_first == -1:
                                s = nbr[u, si] if side == 0 else nbr[v, si]
                            else:
                                s = ring_u[si] if side == 0 else ring_v[si]
                            cand = allowed & (FULL ^ rows[s]) & (
                                FULL ^ (U1 << np.uint64(s))
                            )
                            if cand == U0:
                                continue
                            ball = FULL
                            have_ball = False
                            for t in range(n):
                                if not (cand >> np.uint64(t)) & U1:
                                    continue
                                lo = s if s < t else t
                                hi = t if s < t else s
                                pid2 = (lo << 6) | hi
                                if legal_pos[pid2] >= 0:
                                    continue
                                if not have_ball:
                                    ball = _ball3(rows, nbr, deg, s)
                                    have_ball = True
                                if (ball >> np.uint64(t)) & U1:
                                    continue
                                legal_a[nlegal] = lo
                                legal_b[nlegal] = hi
                                legal_pos[pid2] = nlegal
                                nlegal += 1
        it += 1
    return nrec, it, best


def run(seed: Graph, params, rng_seed):
    """Run the kernel and wrap its records as a SearchResult."""
    from .search import SearchResult

    n = seed.n
    rows = np.zeros(64, np.uint64)
    for u in range(n):
        acc = 0
        for v in seed.adj[u]:
            acc |= 1 << v
        rows[u] = acc
    out_rows = np.zeros((_MAX_RECORDS, 64), np.uint64)
    out_sizes = np.zeros(_MAX_RECORDS, np.int64)
    nrec, iterations, best = _kernel(
        n,
        rows,
        params.total_num_iters,
        params.num_iters_too_recent,
        params.k_max,
        float(params.p),
        rng_seed % (1 << 32),
        out_rows,
        out_sizes,
    )
    graphs = [seed.copy()]
    for r in range(nrec):
        edges = []
        for u in range(n):
            row = int(out_rows[r, u])
            for v in range(u + 1, n):
                if (row >> v) & 1:
                    edges.append((u, v))
        graphs.append(Graph(n, edges))
    return SearchResult(
        graphs=graphs, iterations_run=int(iterations), best_size=int(best)
    )
