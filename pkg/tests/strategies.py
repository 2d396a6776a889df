"""Shared hypothesis strategies for random (tree, links) instances."""

from itertools import combinations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from crossing import SetFamily
from graph_core import EdgeSet, GenKind, Tree, generate

PROPERTY_SETTINGS = settings(
    max_examples=150,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


@st.composite
def trees_with_links(draw: st.DrawFn, min_n: int = 3, max_n: int = 10, max_links: int = 8):
    n = draw(st.integers(min_n, max_n))
    T = Tree(generate(GenKind.RANDOM_TREE, {"n": n}, seed=draw(st.integers(0, 2**16))))
    pool = [pair for pair in combinations(range(n), 2) if not T.graph.has_edge(*pair)]
    chosen = draw(st.lists(st.sampled_from(pool), unique=True, max_size=max_links)) if pool else []
    return T, EdgeSet.build(sorted(chosen), tree=T)


@st.composite
def instances_with_pair(draw: st.DrawFn, adjacent_ok: bool = True):
    T, F = draw(trees_with_links())
    pairs = [
        (s, t) for s, t in combinations(range(T.n), 2)
        if adjacent_ok or not T.graph.has_edge(s, t)
    ]
    s, t = draw(st.sampled_from(pairs))
    return T, F, s, t


@st.composite
def symmetric_families(draw: st.DrawFn, min_n: int = 3, max_n: int = 6, max_members: int = 5):
    """Random members closed under complement; usually not crossing."""
    n = draw(st.integers(min_n, max_n))
    full = (1 << n) - 1
    masks = draw(st.lists(st.integers(1, full - 1), min_size=1, max_size=max_members))
    members = set(masks) | {full & ~m for m in masks}
    return SetFamily(n, tuple(sorted(members)))
