"""
Crossing set families and the separability graph.

A family lives on the groundset 0..n-1 and stores each member as a bitmask.
Two edges f, g are separable when some member holds both ends of one and no
end of the other. For a symmetric crossing family, an edge set J covers the
family iff the separability graph of (family, J) joins all cores.
"""

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Any, ClassVar, Iterable, Optional, Protocol, Sequence, Union

import networkx as nx

import config
from errors import (
    BadParams,
    CapExceeded,
    Infeasible,
    InvalidPair,
    InvariantViolation,
    NotACactus,
    NotConnected,
    Unsupported,
)
from graph_core import EdgeSet, Graph, Pair, Tree, canonical, is_cactus
from incidence import LinkNode
from reports import Problem, SolutionReport
from steiner import NwstInstance, nwst_exact_small, nwst_greedy

logger = logging.getLogger(__name__)


def _mask(nodes: Iterable[int]) -> int:
    mask = 0
    for v in nodes:
        mask |= 1 << v
    return mask


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _crosses(a: int, b: int, full: int) -> bool:
    return bool(a & b) and bool(a & ~b) and bool(b & ~a) and bool(full & ~(a | b))


def _covered(mask: int, pair: Pair) -> bool:
    """Exactly one end of the edge inside the set."""
    u, v = pair
    return bool(mask >> u & 1) != bool(mask >> v & 1)


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilyFlags:
    crossing: bool
    symmetric: bool
    proper: bool


@dataclass(frozen=True)
class SetFamily:
    n: int
    members: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise BadParams("a set family needs a nonempty groundset")
        full = self.full
        for mask in self.members:
            if mask <= 0 or mask >= full:
                raise BadParams(f"member {mask:#b} is not a nonempty proper subset of 0..{self.n - 1}")
        if len(set(self.members)) != len(self.members):
            raise BadParams("duplicate family member")
        ordered = tuple(sorted(self.members, key=lambda m: (bin(m).count("1"), _bits(m))))
        object.__setattr__(self, "members", ordered)

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        return cls(n, tuple(_mask(s) for s in sets))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, nodes: Iterable[int]) -> bool:
        return _mask(nodes) in self._lookup

    def as_sets(self) -> list[tuple[int, ...]]:
        return [_bits(m) for m in self.members]

    @cached_property
    def _lookup(self) -> frozenset[int]:
        return frozenset(self.members)

    def _crossing_pairs(self) -> Iterable[tuple[int, int]]:
        full = self.full
        for a, b in combinations(self.members, 2):
            if _crosses(a, b, full):
                yield a, b

    @cached_property
    def crossing(self) -> bool:
        return all(a & b in self._lookup and a | b in self._lookup for a, b in self._crossing_pairs())

    @cached_property
    def symmetric(self) -> bool:
        return all(self.full & ~m in self._lookup for m in self.members)

    @cached_property
    def proper(self) -> bool:
        return all(a ^ b not in self._lookup for a, b in self._crossing_pairs())


def validate_family(F: SetFamily) -> FamilyFlags:
    return FamilyFlags(F.crossing, F.symmetric, F.proper)


def cores(F: SetFamily) -> list[frozenset[int]]:
    """Inclusion-minimal members, in family order."""
    minimal = [a for a in F.members if not any(b != a and b & a == b for b in F.members)]
    if F.symmetric and F.crossing:
        for a, b in combinations(minimal, 2):
            if a & b:
                raise InvariantViolation(f"cores {_bits(a)} and {_bits(b)} of a symmetric crossing family overlap")
    return [frozenset(_bits(m)) for m in minimal]


def covers(J: Iterable[Pair], F: SetFamily) -> tuple[bool, Optional[tuple[int, ...]]]:
    """(True, None) when every member is covered, else (False, first uncovered member)."""
    pairs = [canonical(u, v) for u, v in J]
    for mask in F.members:
        if not any(_covered(mask, p) for p in pairs):
            return False, _bits(mask)
    return True, None


# ---------------------------------------------------------------------------
# Oracles
# ---------------------------------------------------------------------------

class FamilyOracle(Protocol):
    n: int

    def uncovered(self, J: Iterable[Pair], s: int, t: int) -> Optional[frozenset[int]]:
        """A member not covered by J holding exactly one of s, t; None if there is none."""
        ...


class ExplicitOracle:
    def __init__(self, family: SetFamily) -> None:
        self.family = family
        self.n = family.n
        self.queries = 0

    def uncovered(self, J: Iterable[Pair], s: int, t: int) -> Optional[frozenset[int]]:
        self.queries += 1
        pairs = list(J)
        for mask in self.family.members:
            if bool(mask >> s & 1) == bool(mask >> t & 1):
                continue
            if not any(_covered(mask, p) for p in pairs):
                return frozenset(_bits(mask))
        return None


def separable(f: Pair, g: Pair, F: Union[SetFamily, FamilyOracle]) -> bool:
    f, g = canonical(*f), canonical(*g)
    if f == g:
        raise InvalidPair(f"separability of {f} with itself")
    if isinstance(F, SetFamily):
        mf, mg = _mask(f), _mask(g)
        for a in F.members:
            if (a & mf == mf and not a & mg) or (a & mg == mg and not a & mf):
                return True
        return False
    # some member uncovered by {f, g} splits an end of f from an end of g
    for s in f:
        for t in g:
            if s != t and F.uncovered([f, g], s, t) is not None:
                return True
    return False


# ---------------------------------------------------------------------------
# Separability graph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoreNode:
    index: int
    rank: ClassVar[int] = 3

    @property
    def label(self) -> str:
        return f"C{self.index}"


@dataclass(frozen=True, eq=False)
class SeparabilityGraph:
    graph: nx.Graph
    cores: tuple[frozenset[int], ...]
    links: EdgeSet

    @property
    def terminals(self) -> frozenset:
        return frozenset(CoreNode(i) for i in range(len(self.cores)))

    def cores_connected(self) -> bool:
        if len(self.cores) <= 1:
            return True
        component = nx.node_connected_component(self.graph, CoreNode(0))
        return all(CoreNode(i) in component for i in range(len(self.cores)))

    def cores_linked(self) -> bool:
        """Every two cores are joined by a path whose inner nodes are all links."""
        if len(self.cores) <= 1:
            return True
        links = self.graph.subgraph(x for x in self.graph.nodes if isinstance(x, LinkNode))
        component = {x: i for i, c in enumerate(nx.connected_components(links)) for x in c}
        reach = [{component[x] for x in self.graph.neighbors(CoreNode(i))} for i in range(len(self.cores))]
        return all(a & b for a, b in combinations(reach, 2))


def _as_links(J: Union[EdgeSet, Iterable[Pair]], n: int) -> EdgeSet:
    return J if isinstance(J, EdgeSet) else EdgeSet.build(J, n=n)


def _separability(
    core_sets: Sequence[frozenset[int]],
    J: EdgeSet,
    F: Union[SetFamily, FamilyOracle],
) -> SeparabilityGraph:
    g = nx.Graph()
    g.add_nodes_from(CoreNode(i) for i in range(len(core_sets)))
    g.add_nodes_from(LinkNode(f.id) for f in J)
    for i, core in enumerate(core_sets):
        mask = _mask(core)
        g.add_edges_from((CoreNode(i), LinkNode(f.id)) for f in J if _covered(mask, f.pair))
    for f, h in combinations(J, 2):
        if not separable(f.pair, h.pair, F):
            g.add_edge(LinkNode(f.id), LinkNode(h.id))
    return SeparabilityGraph(nx.freeze(g), tuple(core_sets), J)


def build_separability_graph(
    F: SetFamily,
    J: Union[EdgeSet, Iterable[Pair]],
    *,
    require_crossing: bool = True,
) -> SeparabilityGraph:
    if not F.symmetric or (require_crossing and not F.crossing):
        raise Unsupported("the separability graph is defined for symmetric crossing families")
    return _separability(cores(F), _as_links(J, F.n), F)


@dataclass(frozen=True)
class CoverCheck:
    agree: bool
    covers: bool
    connected: bool
    witness: Optional[tuple[int, ...]] = None


def check_cover_criterion(F: SetFamily, J: Union[EdgeSet, Iterable[Pair]]) -> CoverCheck:
    J = _as_links(J, F.n)
    covered, witness = covers(J.pairs(), F)
    connected = build_separability_graph(F, J).cores_connected()
    return CoverCheck(covered == connected, covered, connected, witness)


# ---------------------------------------------------------------------------
# Crossing family augmentation
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CrossingInstance:
    family: SetFamily
    candidates: EdgeSet


def solve_crossing_aug(
    F: Union[SetFamily, FamilyOracle],
    E: Union[EdgeSet, Iterable[Pair]],
    *,
    core_sets: Optional[Sequence[Iterable[int]]] = None,
    exact_cap: Optional[int] = None,
    with_oracle: bool = False,
) -> SolutionReport:
    """
    Fewest edges of E covering F: NWST over the separability graph with the
    cores as terminals and unit link weights. An oracle family needs its
    cores passed in `core_sets`.
    """
    started = time.perf_counter()
    explicit = isinstance(F, SetFamily)
    E = _as_links(E, F.n)

    if explicit:
        H = build_separability_graph(F, E)
        if not covers(E.pairs(), F)[0]:
            raise Infeasible("the candidate edges do not cover the family")
    else:
        if core_sets is None:
            raise BadParams("an oracle family needs its cores")
        H = _separability([frozenset(c) for c in core_sets], E, F)
        if not H.cores_connected():
            raise Infeasible("the candidate edges do not cover the family")

    weights = {LinkNode(f.id): Fraction(1) for f in E}
    inst = NwstInstance(H.graph, H.terminals, weights)
    method = "greedy"
    solution = None
    if exact_cap is not None:
        try:
            solution, method = nwst_exact_small(inst, exact_cap), "exact"
        except CapExceeded as e:
            logger.info("exact NWST skipped: %s", e)
    if solution is None:
        solution = nwst_greedy(inst)
    J = E.subset(x.index for x in solution.nodes if isinstance(x, LinkNode))

    if explicit:
        feasible = covers(J.pairs(), F)[0]
    else:
        reps = [min(c) for c in H.cores]
        feasible = all(F.uncovered(J.pairs(), s, t) is None for s, t in combinations(reps, 2))
    if not feasible:
        logger.error("crossaug: separability solution rejected by the cover check (|J|=%d)", len(J))

    size = Fraction(len(J))
    report = SolutionReport(
        problem=Problem.CROSSAUG,
        feasible=feasible,
        links=tuple(J.pairs()),
        edges=tuple(sorted(J.pairs())),
        nodes=tuple(sorted({x for pair in J.pairs() for x in pair})),
        objective=size,
        cost=size,
        lifted_cost=size,
        config={"exact_cap": exact_cap},
        diagnostics={"cores": len(H.cores), "nwst_method": method},
        wall_ms=round((time.perf_counter() - started) * 1000, 3) if config.RECORD_TIMINGS else None,
    )
    logger.info("crossaug: |J|=%d over %d cores via %s NWST", len(J), len(H.cores), method)
    if with_oracle and explicit:
        report = report.with_exact(Fraction(len(exact_min_cover(F, E))))
    return report


def exact_min_cover(F: SetFamily, E: Union[EdgeSet, Iterable[Pair]], cap: int = 22) -> EdgeSet:
    E = _as_links(E, F.n)
    if len(E) > cap:
        raise CapExceeded(f"{len(E)} candidate edges exceed the cover cap {cap}")
    if not covers(E.pairs(), F)[0]:
        raise Infeasible("the candidate edges do not cover the family")
    for size in range(len(E) + 1):
        for subset in combinations(E, size):
            if covers([f.pair for f in subset], F)[0]:
                return E.subset(f.id for f in subset)
    raise InvariantViolation("full candidate set covers but no subset does")


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def _cut_degree(G: Graph, mask: int) -> int:
    return sum(1 for e in G.edges if _covered(mask, e.pair))


def family_generators(kind: str, source: Any, cap: int = 12) -> SetFamily:
    """
    cactus_two_cuts  source=Graph (a cactus): sets crossed by exactly two edges
    min_edge_cuts    source=Graph: sets crossed by λ(G) edges
    tree_cuts        source=Tree: both sides of every tree edge
    explicit         source=(n, member lists)
    """
    if kind == "explicit":
        n, sets = source
        return SetFamily.from_sets(n, sets)

    if kind == "tree_cuts":
        T: Tree = source
        members = set()
        for e in T.edges:
            side = nx.node_connected_component(nx.restricted_view(T.nx, [], [e.pair]), e.u)
            members.add(_mask(side))
            members.add(((1 << T.n) - 1) & ~_mask(side))
        return SetFamily(T.n, tuple(members))

    G: Graph = source
    if kind == "cactus_two_cuts":
        if not is_cactus(G):
            raise NotACactus("2-cut families are generated from cacti only")
    elif kind == "min_edge_cuts":
        if G.n < 2 or not nx.is_connected(G.nx):
            raise NotConnected("minimum cuts need a connected graph on at least 2 nodes")
    else:
        raise BadParams(f"unknown family kind {kind!r}")
    if G.n > cap:
        raise CapExceeded(f"cut enumeration over {G.n} nodes exceeds the cap {cap}")

    full = (1 << G.n) - 1
    degrees = {mask: _cut_degree(G, mask) for mask in range(1, full)}
    wanted = 2 if kind == "cactus_two_cuts" else min(degrees.values())
    return SetFamily(G.n, tuple(mask for mask, d in degrees.items() if d == wanted))

