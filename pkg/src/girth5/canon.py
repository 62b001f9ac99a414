"""Canonical labeling and isomorphism testing.

canonical_form relabels a graph so that isomorphic graphs map to identical
labeled graphs.  The scheme is iterated color refinement (degrees as the
initial coloring, neighbor-color multisets as the refinement signature)
followed by backtracking individualization on the smallest non-singleton
cell.  Each discrete partition yields a candidate labeling; the candidate
whose upper-triangle adjacency bit string is lexicographically smallest
wins.  Automorphisms discovered when two candidates produce the same bit
string prune sibling branches through their orbits, which keeps symmetric
inputs (complete search trees would otherwise visit every automorphism)
tractable.

are_isomorphic is an independent decision procedure used to cross-check
the canonical form: plain backtracking over color-compatible bijections.
"""

from __future__ import annotations

from .graph import Graph, bit_rows

_MAX_GENERATORS = 512
_MAX_LEAF_CACHE = 256


def _refine(adj, colors):
    """Iterate neighbor-color-multiset splitting to a stable partition.

    Colors are renumbered 0..k-1 by sorted signature at every round, so the
    result depends only on the isomorphism type and the initial coloring.
    """
    n = len(adj)
    ncol = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            row = sorted(colors[w] for w in adj[v])
            sigs.append((colors[v], tuple(row)))
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [ranking[s] for s in sigs]
        if len(ranking) == ncol:
            return colors
        ncol = len(ranking)


def _cells(colors):
    out = {}
    for v, c in enumerate(colors):
        out.setdefault(c, []).append(v)
    return out


class _Canonizer:
    def __init__(self, g: Graph):
        self.n = g.n
        self.adj = g.adj
        self.rows = bit_rows(g)
        self.best_val = None
        self.best_perm = None
        self.generators = []
        self._gen_seen = set()
        self.leaf_cache = {}

    def run(self):
        colors = _refine(self.adj, list(map(len, self.adj)))
        self._descend(colors, ())
        return self.best_perm

    def _leaf_value(self, perm):
        rows = self.rows
        val = 0
        for j in range(1, self.n):
            rj = rows[perm[j]]
            for i in range(j):
                val = (val << 1) | ((rj >> perm[i]) & 1)
        return val

    def _record_leaf(self, colors):
        perm = [0] * self.n
        for v, c in enumerate(colors):
            perm[c] = v
        val = self._leaf_value(perm)
        if self.best_val is None or val < self.best_val:
            self.best_val = val
            self.best_perm = perm
        prev = self.leaf_cache.get(val)
        if prev is None:
            if len(self.leaf_cache) < _MAX_LEAF_CACHE:
                self.leaf_cache[val] = perm
        elif prev != perm and len(self.generators) < _MAX_GENERATORS:
            auto = [0] * self.n
            for i in range(self.n):
                auto[prev[i]] = perm[i]
            key = tuple(auto)
            if key not in self._gen_seen:
                self._gen_seen.add(key)
                self.generators.append(auto)

    def _orbits_fixing(self, prefix):
        """Union-find orbits under generators that fix the prefix pointwise."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gen in self.generators:
            ok = True
            for x in prefix:
                if gen[x] != x:
                    ok = False
                    break
            if not ok:
                continue
            for v in range(self.n):
                a, b = find(v), find(gen[v])
                if a != b:
                    parent[a] = b
        return find

    def _descend(self, colors, prefix):
        cells = _cells(colors)
        target = None
        for c in sorted(cells):
            size = len(cells[c])
            if size > 1 and (target is None or size < len(cells[target])):
                target = c
        if target is None:
            self._record_leaf(colors)
            return
        members = cells[target]
        rows = self.rows
        done = []
        for v in members:
            if done:
                # a twin of an expanded sibling: the transposition is an
                # automorphism, so the subtree repeats
                rv = rows[v]
                rcv = rv | (1 << v)
                if any(
                    rows[w] == rv or (rows[w] | (1 << w)) == rcv for w in done
                ):
                    done.append(v)
                    continue
                if self.generators:
                    find = self._orbits_fixing(prefix)
                    root = find(v)
                    if any(find(w) == root for w in done):
                        done.append(v)
                        continue
            branched = [2 * c for c in colors]
            branched[v] += 1
            self._descend(_refine(self.adj, branched), prefix + (v,))
            done.append(v)


def canonical_form(g: Graph) -> Graph:
    """A canonically labeled copy: isomorphic inputs give equal outputs."""
    if g.n == 1:
        return g.copy()
    perm = _Canonizer(g).run()
    pos = [0] * g.n
    for i, v in enumerate(perm):
        pos[v] = i
    edges = [(pos[u], pos[v]) for u, v in g.edges()]
    return Graph(g.n, edges, min_girth=g.min_girth)


def canonical_key(g: Graph) -> bytes:
    """Stable bytes identifying the isomorphism class (graph6 of the form)."""
    from .graph6 import encode_graph6

    return encode_graph6(canonical_form(g))


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Exact isomorphism decision, independent of canonical_form.

    Backtracking over bijections constrained to refined color classes with
    adjacency consistency checked against the partial map.  Exponential in
    the worst case; meant for validation at small orders.
    """
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return False
    if sorted(g1.deg) != sorted(g2.deg):
        return False
    n = g1.n
    c1 = _refine(g1.adj, list(map(len, g1.adj)))
    c2 = _refine(g2.adj, list(map(len, g2.adj)))
    # class ids are comparable because _refine numbers them by sorted signature
    cells1, cells2 = _cells(c1), _cells(c2)
    if sorted((c, len(vs)) for c, vs in cells1.items()) != sorted(
        (c, len(vs)) for c, vs in cells2.items()
    ):
        return False
    rows1, rows2 = bit_rows(g1), bit_rows(g2)
    # map vertices of g1 in order of ascending class size (most constrained first)
    order = sorted(range(n), key=lambda v: (len(cells1[c1[v]]), c1[v], v))
    mapped1 = []
    image = [-1] * n
    used2 = [False] * n

    def extend(k):
        if k == n:
            return True
        v = order[k]
        for u in cells2[c1[v]]:
            if used2[u]:
                continue
            ok = True
            for w in mapped1:
                if ((rows1[v] >> w) & 1) != ((rows2[u] >> image[w]) & 1):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = u
            used2[u] = True
            mapped1.append(v)
            if extend(k + 1):
                return True
            mapped1.pop()
            used2[u] = False
            image[v] = -1
        return False

    return extend(0)
