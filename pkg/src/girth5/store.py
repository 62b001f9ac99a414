"""Per-order archives of the best graphs found so far.

The store keeps, for each vertex count, up to a fixed number of distinct
graphs keyed by canonical form, so isomorphic rediscoveries collapse to
one entry.  Ranking everywhere is size descending with the canonical key
as the tie-break, which keeps snapshots, seeding, and eviction
deterministic.
"""

from __future__ import annotations

import os

from .canon import canonical_form
from .graph import Graph, GraphError, girth_at_least
from .graph6 import ParseError, decode_graph6, encode_graph6

DEFAULT_CAPACITY = 500


class BestStore:
    """Capacity-bounded best-graph archive, one bucket per order."""

    def __init__(self, capacity: int = DEFAULT_CAPACITY, min_girth: int = 5):
        if capacity < 1:
            raise GraphError(f"capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self.min_girth = min_girth
        self._buckets = {}  # order -> {canonical key: Graph (canonical form)}

    def orders(self):
        return sorted(n for n, b in self._buckets.items() if b)

    def count(self, n: int) -> int:
        return len(self._buckets.get(n, ()))

    def best_size(self, n: int):
        bucket = self._buckets.get(n)
        if not bucket:
            return None
        return max(g.edge_count for g in bucket.values())

    def insert(self, g: Graph) -> bool:
        """Add a graph; returns True iff it remains in the store.

        Duplicates (up to isomorphism) are dropped.  Over capacity, the
        smallest entry goes, ties broken by dropping the largest
        canonical key.
        """
        if not girth_at_least(g, self.min_girth):
            raise GraphError(
                f"store only accepts graphs of girth >= {self.min_girth}"
            )
        canon = canonical_form(g)
        key = encode_graph6(canon)
        bucket = self._buckets.setdefault(g.n, {})
        if key in bucket:
            return False
        bucket[key] = canon
        if len(bucket) > self.capacity:
            victim = min(bucket.items(), key=lambda kv: (kv[1].edge_count, _neg(kv[0])))
            del bucket[victim[0]]
            return victim[0] != key
        return True

    def top_ell(self, n: int, ell: int):
        """The ell best graphs of order n, size desc then key asc."""
        if ell < 1:
            raise GraphError(f"ell must be >= 1, got {ell}")
        bucket = self._buckets.get(n)
        if not bucket:
            return []
        ranked = sorted(bucket.items(), key=lambda kv: (-kv[1].edge_count, kv[0]))
        return [g.copy() for _, g in ranked[:ell]]

    def entries(self, n: int):
        bucket = self._buckets.get(n, {})
        return sorted(bucket.items(), key=lambda kv: (-kv[1].edge_count, kv[0]))


class _neg:
    """Inverts comparison order so max-key loses a min() tie."""

    __slots__ = ("val",)

    def __init__(self, val):
        self.val = val

    def __lt__(self, other):
        return self.val > other.val


def load_seed_store(
    seed_dir,
    n_low: int,
    n_high: int,
    capacity: int = DEFAULT_CAPACITY,
    min_girth: int = 5,
):
    """Build the initial store for a run over orders n_low..n_high.

    With no usable directory the store starts from one edgeless graph per
    order.  Seed files are one graph6 line each; orders outside
    [n_low-1, n_high+1] are skipped with a warning, while undecodable
    lines and girth violations are hard errors naming the file and line.
    Returns (store, warnings).
    """
    store = BestStore(capacity=capacity, min_girth=min_girth)
    warnings = []
    paths = []
    if seed_dir is not None and os.path.isdir(seed_dir):
        paths = sorted(
            os.path.join(seed_dir, name)
            for name in os.listdir(seed_dir)
            if name.endswith(".g6")
        )
    if not paths:
        for n in range(n_low, n_high + 1):
            store.insert(Graph(n, min_girth=min_girth))
        return store, warnings

    loaded = 0
    for path in paths:
        with open(path, "rb") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line:
                    continue
                try:
                    g = decode_graph6(line)
                except ParseError as exc:
                    raise GraphError(f"{path}:{lineno}: {exc}") from exc
                if not girth_at_least(g, min_girth):
                    raise GraphError(
                        f"{path}:{lineno}: graph has girth < {min_girth}"
                    )
                if not (n_low - 1 <= g.n <= n_high + 1):
                    warnings.append(
                        f"{path}:{lineno}: order {g.n} outside usable window "
                        f"[{n_low - 1}, {n_high + 1}], skipped"
                    )
                    continue
                g.min_girth = min_girth
                store.insert(g)
                loaded += 1
    if loaded == 0:
        raise GraphError(
            f"seed directory {seed_dir} contains files but no usable graphs"
        )
    return store, warnings


def save_store_snapshot(store: BestStore, out_dir, tag: str):
    """Write best_n{order}_{tag}.g6 per non-empty order; returns paths."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for n in store.orders():
        path = os.path.join(out_dir, f"best_n{n}_{tag}.g6")
        with open(path, "wb") as fh:
            for key, _ in store.entries(n):
                fh.write(key)
                fh.write(b"\n")
        paths.append(path)
    return paths
