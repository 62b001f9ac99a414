import random

import pytest

from girth5.graph import Graph


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One outcome line per acceptance criterion at the end of a run."""
    rows = []
    for outcome in ("passed", "failed", "error", "skipped"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            if rep.when != "call" and outcome != "skipped":
                continue
            rows.append((nodeid.split("::")[-1], outcome.upper()))
    if rows:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, outcome in sorted(set(rows)):
            terminalreporter.write_line(f"{outcome:<8} {name}")


def hoffman_singleton():
    """The 7-regular order-50 girth-5 Moore graph.

    Five pentagons P_h and five pentagrams Q_k on vertices 5h+i and
    25+5k+j; pentagon vertex (h, i) joins pentagram vertex (k, h*k+i
    mod 5).
    """
    edges = []
    for h in range(5):
        for i in range(5):
            edges.append((5 * h + i, 5 * h + (i + 1) % 5))
    for k in range(5):
        for j in range(5):
            edges.append((25 + 5 * k + j, 25 + 5 * k + (j + 2) % 5))
    for h in range(5):
        for i in range(5):
            for k in range(5):
                edges.append((5 * h + i, 25 + 5 * k + (h * k + i) % 5))
    norm = {(min(u, v), max(u, v)) for u, v in edges}
    return Graph(50, sorted(norm))


def random_graph(n, p, rng):
    edges = [
        (u, v) for v in range(1, n) for u in range(v) if rng.random() < p
    ]
    return Graph(n, edges)


def relabel(g, perm):
    edges = [
        (min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in g.edges()
    ]
    return Graph(g.n, sorted(edges), min_girth=g.min_girth)


def random_perm(n, rng):
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
