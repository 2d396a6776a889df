"""
Spanning-tree samplers and empirical stretch.

Three cheap samplers stand in for a low-stretch tree distribution:
  random_walk_tree  — uniform spanning tree by loop-erased random walks (Wilson)
  perturbed_mst     — MST after multiplying every cost by a factor in [1, 2)
  bfs_random_root   — breadth-first tree from a seeded random root

The stretch of an edge f under tree T is c(T_f) / c(f); σ of an embedding is
the maximum over all edges of the base graph.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional, Union

import networkx as nx

from errors import BadParams, NotConnected, NotSpanning
from graph_core import Graph, Tree, canonical
from utils import derive_rng

logger = logging.getLogger(__name__)


class SamplerMethod(str, Enum):
    RANDOM_WALK_TREE = "random_walk_tree"
    PERTURBED_MST = "perturbed_mst"
    BFS_RANDOM_ROOT = "bfs_random_root"


@dataclass(frozen=True)
class SamplerConfig:
    method: Union[SamplerMethod, str] = SamplerMethod.RANDOM_WALK_TREE
    samples: int = 1
    seed: int = 0

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "method", SamplerMethod(self.method))
        except ValueError:
            raise BadParams(f"unknown sampler method {self.method!r}")
        if self.samples < 1:
            raise BadParams(f"samples must be >= 1, got {self.samples}")

    def as_dict(self) -> dict:
        return {"method": self.method.value, "samples": self.samples, "seed": self.seed}


@dataclass(frozen=True)
class TreeEmbedding:
    base: Graph
    tree: Tree
    per_edge_stretch: tuple[Fraction, ...]   # indexed by base edge id
    sigma_max: Fraction
    sigma_avg: Fraction
    seed: int = 0
    method: Optional[SamplerMethod] = None
    index: int = 0


# ---------------------------------------------------------------------------
# Samplers
# ---------------------------------------------------------------------------

def _wilson_pairs(G: Graph, rng) -> list[tuple[int, int]]:
    adjacency = [G.neighbors(v) for v in range(G.n)]
    root = rng.randrange(G.n)
    in_tree = [False] * G.n
    in_tree[root] = True
    successor: dict[int, int] = {}
    for start in range(G.n):
        # random walk until the tree is hit; overwriting successors erases loops
        u = start
        while not in_tree[u]:
            successor[u] = rng.choice(adjacency[u])
            u = successor[u]
        u = start
        while not in_tree[u]:
            in_tree[u] = True
            u = successor[u]
    return sorted(canonical(v, successor[v]) for v in range(G.n) if v != root)


def _perturbed_mst_pairs(G: Graph, rng) -> list[tuple[int, int]]:
    h = nx.Graph()
    h.add_nodes_from(range(G.n))
    for e in G.edges:
        h.add_edge(e.u, e.v, weight=float(e.cost) * (1.0 + rng.random()))
    return sorted(canonical(u, v) for u, v in nx.minimum_spanning_edges(h, weight="weight", data=False))


def _bfs_pairs(G: Graph, rng) -> list[tuple[int, int]]:
    root = rng.randrange(G.n)
    return sorted(canonical(u, v) for u, v in nx.bfs_edges(G.nx, root))


_SAMPLERS = {
    SamplerMethod.RANDOM_WALK_TREE: _wilson_pairs,
    SamplerMethod.PERTURBED_MST: _perturbed_mst_pairs,
    SamplerMethod.BFS_RANDOM_ROOT: _bfs_pairs,
}


def sample_spanning_tree(G: Graph, config: SamplerConfig, index: int = 0) -> Tree:
    """Spanning tree number `index` of the stream defined by config."""
    if G.n == 0 or not nx.is_connected(G.nx):
        raise NotConnected("spanning trees need a connected graph")
    rng = derive_rng(config.seed, "spanning-tree", config.method.value, index)
    pairs = _SAMPLERS[config.method](G, rng)
    return Tree.from_pairs(G.n, pairs, [G.edge_between(u, v).cost for u, v in pairs])


# ---------------------------------------------------------------------------
# Stretch
# ---------------------------------------------------------------------------

def measure_stretch(
    G: Graph,
    T: Tree,
    *,
    seed: int = 0,
    method: Optional[SamplerMethod] = None,
    index: int = 0,
) -> TreeEmbedding:
    if T.n != G.n or any(not G.has_edge(e.u, e.v) for e in T.edges):
        raise NotSpanning("tree is not a spanning tree of the base graph")

    stretch: list[Fraction] = []
    for f in G.edges:
        if T.graph.has_edge(f.u, f.v):
            stretch.append(Fraction(1))
            continue
        path_cost = sum((G.edge_between(e.u, e.v).cost for e in T.path(f.u, f.v)), Fraction(0))
        if f.cost == 0:
            if path_cost != 0:
                raise BadParams(f"zero-cost edge {f.pair} has unbounded stretch")
            stretch.append(Fraction(1))
        else:
            stretch.append(path_cost / f.cost)

    sigma_max = max(stretch, default=Fraction(1))
    sigma_avg = sum(stretch, Fraction(0)) / len(stretch) if stretch else Fraction(1)
    return TreeEmbedding(G, T, tuple(stretch), sigma_max, sigma_avg, seed, method, index)


def embedding_samples(G: Graph, config: SamplerConfig) -> Iterator[TreeEmbedding]:
    for index in range(config.samples):
        tree = sample_spanning_tree(G, config, index)
        yield measure_stretch(G, tree, seed=config.seed, method=config.method, index=index)


def best_embedding(G: Graph, config: SamplerConfig) -> TreeEmbedding:
    """The sampled tree with the smallest σ; ties go to the lowest index."""
    best: Optional[TreeEmbedding] = None
    for embedding in embedding_samples(G, config):
        if best is None or embedding.sigma_max < best.sigma_max:
            best = embedding
    logger.debug(
        "best of %d %s trees: sigma_max=%s (index %d)",
        config.samples, config.method.value, best.sigma_max, best.index,
    )
    return best
