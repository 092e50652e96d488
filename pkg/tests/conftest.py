import random

from hypothesis import strategies as st

from jdmsample.graph import DirectedGraph


@st.composite
def digraphs(draw, max_nodes=12, min_nodes=0):
    """Simple digraphs on a random subset of small ids."""
    n = draw(st.integers(min_nodes, max_nodes))
    ids = draw(st.lists(st.integers(0, 200), min_size=n, max_size=n, unique=True))
    pairs = [(u, v) for u in ids for v in ids if u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return DirectedGraph(frozenset(ids), frozenset(chosen))


def random_digraph(rng: random.Random, n: int, p: float) -> DirectedGraph:
    edges = {(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p}
    return DirectedGraph(frozenset(range(n)), frozenset(edges))


# one line per acceptance criterion, printed at the end of the session
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
