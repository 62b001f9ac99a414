"""Hill-climbing local search for maximum-size graphs of bounded girth.

One search run alternates two phases on a working graph:

  fill    While any legal edge exists, draw a uniform variate; with
          probability p add a legal edge of maximum degree sum (ties broken
          uniformly), otherwise add a legal edge chosen uniformly.  New
          record sizes are snapshotted.
  perturb Count the current edges that were not deleted within the last
          `num_iters_too_recent` iterations; if any exist, draw k uniform in
          1..k_max and delete min(k, count) of them uniformly without
          replacement, recording each deletion in a ledger.

The loop stops when the iteration budget runs out or no edge is old enough
to delete.  The recency window keeps the walk from undoing its own recent
perturbations.  An edgeless seed would make the initial count zero, so the
count is primed with max(1, seed size) to let iteration zero run; from then
on the recomputed value governs.

Iteration indices count completed outer iterations starting at zero.  An
edge deleted at iteration j is eligible again at iteration i only when
i - j > window (strictly).

Determinism: a run is a pure function of (seed graph, params) including
params.rng_seed.  The accelerated engine in _fast (order <= 64, girth
threshold 5) honors the same contract with its own stream; pass
engine="python" to force the reference path.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import (
    Graph,
    GraphError,
    bit_rows,
    enumerate_legal_edges,
    girth_at_least,
    pair,
)


@dataclass
class SearchParams:
    """Knobs of one local_search run; counts must be >= 1, p in [0, 1]."""

    total_num_iters: int
    num_iters_too_recent: int
    k_max: int
    p: float
    rng_seed: int | None = None

    def validate(self):
        if self.total_num_iters < 1:
            raise GraphError(f"total_num_iters must be >= 1, got {self.total_num_iters}")
        if self.num_iters_too_recent < 1:
            raise GraphError(
                f"num_iters_too_recent must be >= 1, got {self.num_iters_too_recent}"
            )
        if self.k_max < 1:
            raise GraphError(f"k_max must be >= 1, got {self.k_max}")
        if not 0.0 <= self.p <= 1.0:
            raise GraphError(f"p must be in [0, 1], got {self.p}")


@dataclass
class DeletionLedger:
    """Last deletion iteration per edge pair."""

    last_deleted: dict = field(default_factory=dict)

    def record(self, e, iteration):
        self.last_deleted[e] = iteration

    def is_eligible(self, e, current_iter, window) -> bool:
        last = self.last_deleted.get(e)
        return last is None or current_iter - last > window


@dataclass
class SearchResult:
    """graphs[0] is the seed; sizes strictly increase along the list."""

    graphs: list
    iterations_run: int
    best_size: int


def eligible_deletions(g: Graph, ledger: DeletionLedger, current_iter, window):
    """Current edges old enough to delete, lexicographic order."""
    return [e for e in g.edges() if ledger.is_eligible(e, current_iter, window)]


class LegalEdgeTracker:
    """Exact incremental view of the legal non-edges of a graph.

    Mutations must go through add/delete so the cached set stays exact; the
    update cost is local (rings of radius threshold-3 around the touched
    endpoints) instead of a full re-enumeration.  Equivalence with
    enumerate_legal_edges is property-tested.
    """

    def __init__(self, g: Graph):
        self.g = g
        self.radius = max(0, g.min_girth - 3)
        self.ball = g.min_girth - 2
        self.rows = bit_rows(g)
        self.legal = enumerate_legal_edges(g)
        self.pos = {e: i for i, e in enumerate(self.legal)}

    def _rings(self, v):
        """Exact BFS layers 0..radius around v as bitmasks, then cumulative."""
        rows = self.rows
        layers = [1 << v]
        seen = 1 << v
        frontier = [v]
        for _ in range(self.radius):
            acc = 0
            for x in frontier:
                acc |= rows[x]
            acc &= ~seen
            layers.append(acc)
            seen |= acc
            frontier = _bits(acc)
        cum = []
        run = 0
        for mask in layers:
            run |= mask
            cum.append(run)
        return layers, cum

    def _ball_mask(self, s):
        """Vertices within distance min_girth - 2 of s (s included)."""
        rows = self.rows
        seen = 1 << s
        frontier = [s]
        for _ in range(self.ball):
            acc = 0
            for x in frontier:
                acc |= rows[x]
            acc &= ~seen
            if not acc:
                break
            seen |= acc
            frontier = _bits(acc)
        return seen

    def _drop_legal(self, e):
        i = self.pos.pop(e)
        last = self.legal.pop()
        if i < len(self.legal):
            self.legal[i] = last
            self.pos[last] = i

    def add(self, u, v):
        """Insert the legal pair {u, v} and prune pairs it makes illegal."""
        e = pair(u, v)
        if e not in self.pos:
            raise GraphError(f"pair {e} is not legal")
        u, v = e
        ru_layers, ru_cum = self._rings(u)
        rv_layers, rv_cum = self._rings(v)
        radius = self.radius
        # a legal pair (s, t) dies iff some path of length <= threshold-2
        # through the new edge appears: dist(s,u) + dist(t,v) <= radius
        # in the pre-add graph, or the swapped orientation.
        for i in range(len(self.legal) - 1, -1, -1):
            s, t = self.legal[i]
            kill = False
            for a in range(radius + 1):
                la, ca = ru_layers[a], rv_cum[radius - a]
                if ((la >> s) & 1 and (ca >> t) & 1) or (
                    (la >> t) & 1 and (ca >> s) & 1
                ):
                    kill = True
                    break
            if kill:
                self._drop_legal(self.legal[i])
        self.g._add_unchecked(u, v)
        self.rows[u] |= 1 << v
        self.rows[v] |= 1 << u

    def delete(self, u, v):
        """Remove edge {u, v} and discover pairs that become legal."""
        e = pair(u, v)
        u, v = e
        ru_layers, _ = self._rings(u)
        rv_layers, _ = self._rings(v)
        self.g.remove_edge(u, v)
        self.rows[u] &= ~(1 << v)
        self.rows[v] &= ~(1 << u)
        radius = self.radius
        rows = self.rows
        # candidates for revival sat on a vanished short path: within the
        # pre-delete rings with ring(s,u) + ring(t,v) <= radius (either way)
        rv_cum = []
        run = 0
        for mask in rv_layers:
            run |= mask
            rv_cum.append(run)
        ru_cum = []
        run = 0
        for mask in ru_layers:
            run |= mask
            ru_cum.append(run)
        for side in range(2):
            s_layers = ru_layers if side == 0 else rv_layers
            t_cum = rv_cum if side == 0 else ru_cum
            for a in range(radius + 1):
                allowed = t_cum[radius - a]
                for s in _bits(s_layers[a]):
                    cand = allowed & ~rows[s] & ~(1 << s)
                    if not cand:
                        continue
                    ball = None
                    for t in _bits(cand):
                        et = pair(s, t)
                        if et in self.pos:
                            continue
                        if ball is None:
                            ball = self._ball_mask(s)
                        if (ball >> t) & 1:
                            continue
                        self.pos[et] = len(self.legal)
                        self.legal.append(et)

    def max_degree_sum_pairs(self):
        deg = self.g.deg
        best = -1
        ties = []
        for s, t in self.legal:
            d = deg[s] + deg[t]
            if d > best:
                best = d
                ties = [(s, t)]
            elif d == best:
                ties.append((s, t))
        return ties


def _bits(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def local_search(seed: Graph, params: SearchParams, engine="auto", trace=None):
    """Run the search from a seed graph; returns a SearchResult.

    engine: "python" for the reference implementation, "fast" for the
    numba engine (order <= 64, girth threshold 5, no trace), "auto" to pick
    fast when usable.  trace, when a list, receives ("add", pair, degsum,
    best_degsum, n_legal) and ("delete", pair, iteration) events from the
    reference engine.
    """
    params.validate()
    if engine not in ("auto", "python", "fast"):
        raise GraphError(f"unknown engine {engine!r}")
    if not girth_at_least(seed, seed.min_girth):
        raise GraphError(f"seed graph violates girth >= {seed.min_girth}")
    rng_seed = params.rng_seed
    if rng_seed is None:
        rng_seed = random.SystemRandom().randrange(1 << 63)
    use_fast = False
    if engine in ("auto", "fast"):
        try:
            from . import _fast
        except ImportError:
            _fast = None
        usable = (
            _fast is not None
            and _fast.available()
            and seed.min_girth == 5
            and seed.n <= 64
            and trace is None
        )
        if engine == "fast" and not usable:
            raise GraphError(
                "fast engine requires numba, order <= 64, girth threshold 5, "
                "and no trace"
            )
        use_fast = usable
    if use_fast:
        return _fast.run(seed, params, rng_seed)
    return _run_reference(seed, params, rng_seed, trace)


def _run_reference(seed, params, rng_seed, trace):
    rng = random.Random(rng_seed)
    g = seed.copy()
    tracker = LegalEdgeTracker(g)
    graphs = [seed.copy()]
    best = g.edge_count
    ledger = DeletionLedger()
    window = params.num_iters_too_recent
    iteration = 0
    c = max(1, g.edge_count)
    while iteration < params.total_num_iters and c > 0:
        legal = tracker.legal
        while legal:
            roll = rng.random()
            if roll < params.p:
                ties = tracker.max_degree_sum_pairs()
                e = ties[rng.randrange(len(ties))]
            else:
                e = legal[rng.randrange(len(legal))]
            if trace is not None:
                deg = g.deg
                best_sum = max(deg[s] + deg[t] for s, t in legal)
                trace.append(
                    ("add", e, deg[e[0]] + deg[e[1]], best_sum, len(legal))
                )
            tracker.add(*e)
        if g.edge_count > best:
            best = g.edge_count
            graphs.append(g.copy())
        eligible = eligible_deletions(g, ledger, iteration, window)
        c = len(eligible)
        if c >= 1:
            k = rng.randint(1, params.k_max)
            for e in rng.sample(eligible, min(k, c)):
                tracker.delete(*e)
                ledger.record(e, iteration)
                if trace is not None:
                    trace.append(("delete", e, iteration))
        iteration += 1
    return SearchResult(graphs=graphs, iterations_run=iteration, best_size=best)
