"""Simple undirected graphs with girth-aware edge editing.

The central object is a fixed-order simple graph whose mutators refuse any
edge addition that would create a cycle shorter than the graph's girth
threshold (default 5, i.e. no triangles and no 4-cycles).  A non-edge {u, v}
may be added exactly when dist(u, v) >= threshold - 1, because the shortest
new cycle through a fresh edge has length dist(u, v) + 1.

Construction from an arbitrary edge list is permitted and performs no girth
validation; the threshold only governs editing and legality queries.  Callers
that need a validated graph (seed loading, witness checks) call
girth_at_least explicitly.
"""

from __future__ import annotations

from collections import deque

MAX_ORDER = 4096
DEFAULT_MIN_GIRTH = 5


class GraphError(ValueError):
    """Contract violation on a graph operation."""


def pair(u: int, v: int) -> tuple[int, int]:
    """Normalize an unordered vertex pair to (min, max)."""
    if u == v:
        raise GraphError(f"loops are not allowed: ({u}, {v})")
    return (u, v) if u < v else (v, u)


class Graph:
    """Undirected simple graph on vertices 0..n-1.

    Attributes:
        n: order, fixed for the lifetime of the object.
        adj: per-vertex sorted neighbor lists.
        deg: per-vertex degrees, kept consistent with adj.
        edge_count: number of edges.
        min_girth: girth threshold enforced by add_edge.
    """

    __slots__ = ("n", "adj", "deg", "edge_count", "min_girth")

    def __init__(self, n, edges=(), min_girth=DEFAULT_MIN_GIRTH):
        if not 1 <= n <= MAX_ORDER:
            raise GraphError(f"order must be in 1..{MAX_ORDER}, got {n}")
        if min_girth < 3:
            raise GraphError(f"girth threshold must be >= 3, got {min_girth}")
        self.n = n
        self.min_girth = min_girth
        self.adj = [[] for _ in range(n)]
        self.deg = [0] * n
        self.edge_count = 0
        seen = set()
        for u, v in edges:
            u, v = pair(u, v)
            if not (0 <= u and v < n):
                raise GraphError(f"vertex out of range in edge ({u}, {v})")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            self.adj[u].append(v)
            self.adj[v].append(u)
        for row in self.adj:
            row.sort()
        self.deg = [len(row) for row in self.adj]
        self.edge_count = len(seen)

    def copy(self) -> "Graph":
        g = Graph.__new__(Graph)
        g.n = self.n
        g.min_girth = self.min_girth
        g.adj = [row[:] for row in self.adj]
        g.deg = self.deg[:]
        g.edge_count = self.edge_count
        return g

    def has_edge(self, u, v) -> bool:
        u, v = pair(u, v)
        if not (0 <= u and v < self.n):
            return False
        # adjacency lists are short; linear scan beats bisect at these sizes
        return v in self.adj[u]

    def edges(self):
        """All edges as sorted (u, v) pairs, lexicographic order."""
        out = []
        for u in range(self.n):
            for v in self.adj[u]:
                if v > u:
                    out.append((u, v))
        return out

    def add_edge(self, u, v):
        """Insert {u, v}; raises GraphError unless the edge is legal."""
        if not is_legal_edge(self, u, v):
            raise GraphError(
                f"illegal edge ({u}, {v}): already present, out of range, "
                f"or endpoints closer than distance {self.min_girth - 1}"
            )
        self._add_unchecked(u, v)

    def _add_unchecked(self, u, v):
        u, v = pair(u, v)
        insort(self.adj[u], v)
        insort(self.adj[v], u)
        self.deg[u] += 1
        self.deg[v] += 1
        self.edge_count += 1

    def remove_edge(self, u, v):
        u, v = pair(u, v)
        if not (0 <= u and v < self.n) or v not in self.adj[u]:
            raise GraphError(f"cannot remove absent edge ({u}, {v})")
        self.adj[u].remove(v)
        self.adj[v].remove(u)
        self.deg[u] -= 1
        self.deg[v] -= 1
        self.edge_count -= 1

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count})"


def insort(row, x):
    lo, hi = 0, len(row)
    while lo < hi:
        mid = (lo + hi) // 2
        if row[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    row.insert(lo, x)


def distance_at_most(g: Graph, u: int, v: int, d: int) -> bool:
    """True iff dist(u, v) <= d.  Truncated BFS, O(edges within depth d)."""
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise GraphError(f"vertex out of range: ({u}, {v})")
    if u == v:
        return True
    if d <= 0:
        return False
    dist = {u: 0}
    queue = deque((u,))
    adj = g.adj
    while queue:
        x = queue.popleft()
        dx = dist[x]
        if dx >= d:
            break
        for y in adj[x]:
            if y not in dist:
                if y == v:
                    return True
                dist[y] = dx + 1
                queue.append(y)
    return False


def is_legal_edge(g: Graph, u: int, v: int) -> bool:
    """True iff adding {u, v} keeps girth >= g.min_girth.

    Legal means: distinct in-range endpoints, not already an edge, and
    dist(u, v) >= min_girth - 1 so the shortest created cycle has length
    at least min_girth.
    """
    if u == v or not (0 <= u < g.n and 0 <= v < g.n):
        return False
    if v in g.adj[u]:
        return False
    return not distance_at_most(g, u, v, g.min_girth - 2)


def bit_rows(g: Graph) -> list:
    """Adjacency as per-vertex bitmask ints (bit v of rows[u] = edge uv)."""
    rows = [0] * g.n
    for u in range(g.n):
        acc = 0
        for v in g.adj[u]:
            acc |= 1 << v
        rows[u] = acc
    return rows


def enumerate_legal_edges(g: Graph) -> list:
    """All legal non-edges as sorted pairs, lexicographic order.

    Walks a ball of radius min_girth - 2 around each vertex and takes the
    complement, so the cost is O(n * ball) rather than O(n^2) BFS calls.
    """
    n = g.n
    radius = g.min_girth - 2
    rows = bit_rows(g)
    full = (1 << n) - 1
    out = []
    for u in range(n):
        ball = 1 << u
        frontier = [u]
        for _ in range(radius):
            nxt = 0
            for x in frontier:
                nxt |= rows[x]
            nxt &= ~ball
            if not nxt:
                break
            ball |= nxt
            frontier = _bits(nxt)
        cand = full & ~ball & ~((1 << (u + 1)) - 1)
        for v in _bits(cand):
            out.append((u, v))
    return out


def max_degree_sum_legal_edges(g: Graph) -> list:
    """The legal pairs maximizing deg(u) + deg(v); empty if none are legal."""
    best = -1
    ties = []
    deg = g.deg
    for u, v in enumerate_legal_edges(g):
        s = deg[u] + deg[v]
        if s > best:
            best = s
            ties = [(u, v)]
        elif s == best:
            ties.append((u, v))
    return ties


def _bits(mask: int) -> list:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def girth(g: Graph):
    """Length of a shortest cycle, or None if the graph is acyclic.

    BFS from every root; for a non-tree edge (x, y) seen from root r the
    walk r..x, xy, y..r contains a cycle of length at most
    dist(x) + dist(y) + 1, and the bound is attained for roots on a
    shortest cycle.  O(n * m).
    """
    best = None
    n = g.n
    adj = g.adj
    for r in range(n):
        dist = [-1] * n
        parent = [-1] * n
        dist[r] = 0
        queue = deque((r,))
        while queue:
            x = queue.popleft()
            dx = dist[x]
            if best is not None and 2 * dx >= best - 1:
                continue
            for y in adj[x]:
                if dist[y] < 0:
                    dist[y] = dx + 1
                    parent[y] = x
                    queue.append(y)
                elif y != parent[x]:
                    cand = dx + dist[y] + 1
                    if best is None or cand < best:
                        best = cand
        if best == 3:
            break
    return best


def girth_at_least(g: Graph, threshold: int) -> bool:
    """True iff the graph has no cycle shorter than threshold.

    Thresholds up to 5 use common-neighbor counting on bitmask rows: a
    triangle is an edge whose endpoints share a neighbor, a 4-cycle is a
    vertex pair with two common neighbors.  Larger thresholds fall back to
    the exact girth computation.
    """
    if threshold <= 3:
        return True
    if threshold > 5:
        got = girth(g)
        return got is None or got >= threshold
    rows = bit_rows(g)
    n = g.n
    check4 = threshold == 5
    for u in range(n):
        ru = rows[u]
        for v in range(u + 1, n):
            common = ru & rows[v]
            if not common:
                continue
            if (ru >> v) & 1:
                return False
            if check4 and common & (common - 1):
                return False
    return True


def add_isolated_vertex(g: Graph) -> Graph:
    """New graph of order n + 1 with vertex n isolated."""
    if g.n + 1 > MAX_ORDER:
        raise GraphError(f"order cap {MAX_ORDER} exceeded")
    out = Graph.__new__(Graph)
    out.n = g.n + 1
    out.min_girth = g.min_girth
    out.adj = [row[:] for row in g.adj] + [[]]
    out.deg = g.deg + [0]
    out.edge_count = g.edge_count
    return out


def delete_vertex(g: Graph, v: int) -> Graph:
    """New graph with v removed; vertices above v shift down by one."""
    if not 0 <= v < g.n:
        raise GraphError(f"vertex out of range: {v}")
    if g.n == 1:
        raise GraphError("cannot delete the last vertex")
    edges = []
    for u, w in g.edges():
        if u == v or w == v:
            continue
        edges.append((u - (u > v), w - (w > v)))
    return Graph(g.n - 1, edges, min_girth=g.min_girth)
