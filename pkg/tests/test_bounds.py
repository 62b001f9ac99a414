import numpy as np
import pytest

from girth5 import _fastbounds
from girth5.bounds import (
    BoundRecord,
    degree_set_report,
    exact_max_size,
    moore_bound,
    verify_witness,
)
from girth5.graph import Graph, GraphError, girth_at_least

# proven by exhausting the branch and bound (n=11: 194,609,126 nodes,
# n=12: 7,256,533,803 nodes) and cross-checked against full enumeration
# for n <= 7
MAX_SIZE = {1: 0, 2: 1, 3: 2, 4: 3, 5: 5, 6: 6, 7: 8, 8: 10, 9: 12, 10: 15, 11: 16, 12: 18}


def enumerate_max_size(n):
    """Independent check: scan all 2^C(n,2) graphs with numpy masks."""
    pairs = [(u, v) for v in range(1, n) for u in range(v)]
    idx = {e: i for i, e in enumerate(pairs)}
    total = len(pairs)
    masks = np.arange(1 << total, dtype=np.uint32)
    bad = np.zeros(masks.shape, dtype=bool)
    verts = range(n)
    from itertools import combinations, permutations

    for tri in combinations(verts, 3):
        m = 0
        for a, b in combinations(tri, 2):
            m |= 1 << idx[(min(a, b), max(a, b))]
        bad |= (masks & m) == m
    for quad in combinations(verts, 4):
        a, b, c, d = quad
        for mid in ((b, c, d), (c, b, d), (b, d, c)):
            ring = [(a, mid[0]), (mid[0], mid[1]), (mid[1], mid[2]), (mid[2], a)]
            m = 0
            for u, v in ring:
                m |= 1 << idx[(min(u, v), max(u, v))]
            bad |= (masks & m) == m
    good = masks[~bad]
    sizes = np.bitwise_count(good)
    best = int(sizes.max())
    return best, good, sizes, idx


class TestMooreBound:
    def test_anchor_values(self):
        assert moore_bound(3, 5) == 10
        assert moore_bound(7, 5) == 50
        assert moore_bound(57, 5) == 3250

    def test_small_table(self):
        assert moore_bound(2, 3) == 3
        assert moore_bound(3, 4) == 6
        assert moore_bound(3, 6) == 14

    def test_closed_forms(self):
        for k in range(2, 61):
            assert moore_bound(k, 5) == k * k + 1
            assert moore_bound(k, 6) == 2 * (k * k - k + 1)

    def test_validation(self):
        with pytest.raises(GraphError):
            moore_bound(1, 5)
        with pytest.raises(GraphError):
            moore_bound(3, 2)


class TestExactMaxSize:
    def test_known_values_small(self):
        for n in range(1, 11):
            rec = exact_max_size(n)
            assert isinstance(rec, BoundRecord)
            assert rec.exact
            assert rec.size == MAX_SIZE[n], n

    def test_witness_is_valid(self):
        for n in (5, 8, 10):
            rec = exact_max_size(n)
            assert rec.witness.n == n
            assert rec.witness.edge_count == rec.size
            assert girth_at_least(rec.witness, 5)

    def test_matches_enumeration(self):
        for n in range(2, 7):
            best, good, sizes, idx = enumerate_max_size(n)
            rec = exact_max_size(n)
            assert rec.size == best
            mask = 0
            for e in rec.witness.edges():
                mask |= 1 << idx[e]
            at = np.nonzero(good == np.uint32(mask))[0]
            assert at.size == 1
            assert int(sizes[at[0]]) == best

    def test_budget_exhaustion_is_reported(self):
        rec = exact_max_size(12, budget=20000)
        assert not rec.exact
        assert rec.nodes == 20001
        assert girth_at_least(rec.witness, 5)
        assert rec.witness.edge_count == rec.size
        assert rec.size <= MAX_SIZE[12]

    @pytest.mark.skipif(not _fastbounds.available(), reason="numba not installed")
    def test_engines_walk_identical_trees(self):
        for n in range(2, 9):
            a = exact_max_size(n, engine="python")
            b = exact_max_size(n, engine="fast")
            assert (a.size, a.nodes, a.exact) == (b.size, b.nodes, b.exact)

    def test_validation(self):
        with pytest.raises(GraphError):
            exact_max_size(0)
        with pytest.raises(GraphError):
            exact_max_size(5, engine="warp")

    def test_higher_girth_threshold(self):
        # girth >= 6 forbids 5-cycles too: C5 no longer counts
        rec5 = exact_max_size(5, girth_threshold=5, engine="python")
        rec6 = exact_max_size(5, girth_threshold=6, engine="python")
        assert rec5.size == 5
        assert rec6.size == 4


class TestVerifyWitness:
    def test_pass(self):
        g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
        rep = verify_witness(g, 5, 5)
        assert rep.ok and rep.order_ok and rep.size_ok and rep.girth_ok

    def test_each_failure_mode(self):
        g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
        assert not verify_witness(g, 6, 5).order_ok
        assert not verify_witness(g, 5, 4).size_ok
        tri = Graph(3, [(0, 1), (1, 2), (0, 2)])
        rep = verify_witness(tri, 3, 3)
        assert not rep.girth_ok and not rep.ok

    def test_threshold_matters(self):
        c4 = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        assert verify_witness(c4, 4, 4, girth_threshold=4).ok
        assert not verify_witness(c4, 4, 4, girth_threshold=5).ok


class TestDegreeSetReport:
    def test_regular_graph(self):
        c5 = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
        rep = degree_set_report(c5)
        assert rep.order == 5 and rep.size == 5
        assert rep.degree_set == (2,)
        assert rep.girth == 5
        assert not rep.bi_regular

    def test_bi_regular_star_plus(self):
        star = Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
        rep = degree_set_report(star)
        assert rep.degree_set == (1, 4)
        assert rep.bi_regular
        assert rep.girth is None
