"""
Experiment suites:
  lemma2          — λ(s,t) ≥ 2 in T ∪ F  vs  (F,V)-incidence s–t path
  lemma3          — κ(s,t) ≥ 2 for non-adjacent s,t  vs  h_reachable
  global          — 2-(edge-)connectivity of T ∪ F  vs  reduced incidence
  theorem6        — cover of a crossing family  vs  cores connected in the
                    separability graph
  structure       — reduced (F,E_T) NWST instances have clique terminal
                    neighbourhoods and ≤ 2 terminal neighbours per link
  lift            — lifted k-subgraph solutions stay within (σ+1)·ĉ(F)
  stretch         — unit cycles have σ = n−1; trees σ = 1; best-of-k monotone
  ratio_bench     — block-tree augmentation against the exact optimum
  cds_bench       — 2-connected dominating subgraph against the exact optimum
  crossaug_bench  — crossing family augmentation against the exact cover

run_suite fans trials out to worker threads (at most BICONN_THREADS at once)
and merges them in trial-index order. Every failing trial is dumped as a
replayable instance file, with the trial's solution report beside it when
the trial ran a solver.
"""

import asyncio
import csv
import io
import logging
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Any, Callable, Mapping, Optional

import config
from crossing import check_cover_criterion, family_generators, solve_crossing_aug
from embedding import SamplerConfig, best_embedding, embedding_samples, measure_stretch
from errors import BadParams, CapExceeded, Infeasible
from graph_core import (
    EdgeSet,
    GenKind,
    Graph,
    Mode,
    Tree,
    dominates,
    generate,
    is_k_connected,
    sample_candidates,
    span_subgraph,
    st_connectivity,
    union_graph,
)
from incidence import (
    IncidenceKind,
    build_incidence,
    h_reachable,
    lemma_equiv_check,
    two_connected_by_incidence,
    two_edge_connected_by_incidence,
)
from instances import bta_document, family_document, graph_document, write_document, write_report
from reports import SolutionReport
from solvers import FamilyMode, exact_oracle, solve_2cds, solve_block_tree_aug, solve_quota_family
from steiner import check_bga_properties
from utils import derive_rng, digest

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("instances", "agreements", "mean_ratio", "max_ratio", "sigma_max_mean", "wall_ms")


@dataclass
class Outcome:
    """One trial. agree=None marks a trial with nothing to check."""

    agree: Optional[bool]
    ratio: Optional[Fraction] = None
    sigma_max: Optional[Fraction] = None
    counterexample: Optional[dict] = None
    report: Optional[SolutionReport] = None


@dataclass
class SuiteResult:
    name: str
    seed: int
    params: dict
    outcomes: list[Outcome] = field(default_factory=list)
    wall_ms: Optional[float] = None
    dumped: list[Path] = field(default_factory=list)
    reports: list[Path] = field(default_factory=list)

    @property
    def checked(self) -> list[Outcome]:
        return [o for o in self.outcomes if o.agree is not None]

    @property
    def instances(self) -> int:
        return len(self.checked)

    @property
    def agreements(self) -> int:
        return sum(1 for o in self.checked if o.agree)

    @property
    def passed(self) -> bool:
        return self.agreements == self.instances

    def summary(self) -> dict[str, str]:
        ratios = [o.ratio for o in self.checked if o.ratio is not None]
        sigmas = [o.sigma_max for o in self.checked if o.sigma_max is not None]

        def fmt(value: Optional[Fraction]) -> str:
            return "" if value is None else f"{float(value):.6f}"

        return {
            "instances": str(self.instances),
            "agreements": str(self.agreements),
            "mean_ratio": fmt(sum(ratios, Fraction(0)) / len(ratios) if ratios else None),
            "max_ratio": fmt(max(ratios) if ratios else None),
            "sigma_max_mean": fmt(sum(sigmas, Fraction(0)) / len(sigmas) if sigmas else None),
            "wall_ms": "" if self.wall_ms is None else f"{self.wall_ms:.3f}",
        }

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerow(self.summary())
        return out.getvalue()


# ---------------------------------------------------------------------------
# Instance drawing
# ---------------------------------------------------------------------------

def _seed(rng: random.Random) -> int:
    return rng.randrange(2**32)


def _tree(rng: random.Random, n: int) -> Tree:
    return Tree(generate(GenKind.RANDOM_TREE, {"n": n}, seed=_seed(rng)))


def _links(rng: random.Random, T: Tree, most: int, max_cost: Optional[int] = None) -> EdgeSet:
    return sample_candidates(T, rng.randint(0, most), _seed(rng), max_cost)


def _connected_graph(rng: random.Random, n: int, p: float = 0.3, max_cost: Optional[int] = None) -> Graph:
    """Random tree plus G(n, p) edges, so the result is always connected."""
    tree = generate(GenKind.RANDOM_TREE, {"n": n}, seed=_seed(rng))
    extra = generate(GenKind.GNP, {"n": n, "p": p}, seed=_seed(rng))
    pairs = sorted(set(tree.pairs()) | set(extra.pairs()))
    costs = [rng.randint(1, max_cost) for _ in pairs] if max_cost else None
    return Graph.build(n, pairs, costs)


def _biconnected_graph(rng: random.Random, n: int, chords: int) -> Graph:
    """Hamiltonian cycle on a shuffled order plus random chords."""
    order = list(range(n))
    rng.shuffle(order)
    pairs = {tuple(sorted((order[i], order[(i + 1) % n]))) for i in range(n)}
    pool = [pair for pair in combinations(range(n), 2) if pair not in pairs]
    pairs |= set(rng.sample(pool, min(chords, len(pool))))
    return Graph.build(n, sorted(pairs))



def _pendant_graph(rng: random.Random, n: int, core: int) -> Graph:
    """A 2-connected core on the first ``core`` nodes; every other node hangs off one core node."""
    pairs = set(_biconnected_graph(rng, core, rng.randint(0, core)).pairs())
    pairs |= {(rng.randrange(core), v) for v in range(core, n)}
    return Graph.build(n, sorted(pairs))


def _augmentable(rng: random.Random, T: Tree, most: int, mode: Mode, attempts: int = 40) -> Optional[EdgeSet]:
    for _ in range(attempts):
        E = sample_candidates(T, most, _seed(rng))
        if is_k_connected(union_graph(T, E), mode):
            return E
    return None


def _size(rng: random.Random, params: Mapping[str, Any], low: int = 3) -> int:
    return rng.randint(low, max(low, params["n_max"]))


# ---------------------------------------------------------------------------
# Equivalence suites
# ---------------------------------------------------------------------------

def _lemma2(rng: random.Random, params: Mapping[str, Any]) -> Outcome:
    T = _tree(rng, _size(rng, params))
    F = _links(rng, T, params["links"])
    s, t = rng.sample(range(T.n), 2)
    check = lemma_equiv_check(T, F, s, t, Mode.EDGE)
    if check.agree:
        return Outcome(True)
    return Outcome(False, counterexample={**bta_document(T, F), "replay": {"s": s, "t": t, "mode": "edge"}})


def _lemma3(rng: random.Random, params: Mapping[str, Any]) -> Outcome:
    T = _tree(rng, _size(rng, params))
    F = _links(rng, T, params["links"])
    pairs = [(s, t) for s, t in combinations(range(T.n), 2) if not T.graph.has_edge(s, t)]
    s, t = rng.choice(pairs)

    # tree-adjacent pairs sit outside the equivalence; record what they do
    e = rng.choice(T.edges)
    kappa = st_connectivity(union_graph(T, F), e.u, e.v, Mode.NODE) >= 2
    reachable = h_reachable(T, F, e.u, e.v)
    if kappa != reachable:
        logger.info("adjacent pair %s: kappa>=2 is %s, h_reachable is %s", e.pair, kappa, reachable)

    check = lemma_equiv_check(T, F, s, t, Mode.NODE)
    if check.agree:
        return Outcome(True)
    return Outcome(False, counterexample={**bta_document(T, F), "replay": {"s": s, "t": t, "mode": "node"}})


def _global(rng: random.Random, params: Mapping[str, Any]) -> Outcome:
    T = _tree(rng, _size(rng, params))
    F = _links(rng, T, params["links"])
    union = union_graph(T, F)
    agree = (
        is_k_connected(union, Mode.NODE) == two_connected_by_incidence(T, F)
        and is_k_connected(union, Mode.EDGE) == two_edge_connected_by_incidence(T, F)
    )
    return Outcome(agree, counterexample=None if agree else {**bta_document(T, F), "replay": {"check": "global"}})


def _theorem6(rng: random.Random, params: Mapping[str, Any]) -> Outcome:
    if rng.random() < 0.5:
        n = rng.randint(3, min(params["n_max"], 10))
        G = generate(GenKind.RANDOM_CACTUS, {"n": n}, seed=_seed(rng))
        family = family_generators("cactus_two_cuts", G)
    else:
        n = rng.randint(3, min(params["n_max"], 8))
        family = family_generators("min_edge_cuts", _connected_graph(rng, n))
    pool = list(combinations(range(family.n), 2))
    J = sorted(rng.sample(pool, rng.randint(0, min(len(pool), params["links"]))))
    check = check_cover_criterion(family, J)
    if check.agree:
        return Outcome(True)
    doc = family_document(family, EdgeSet.build(J, n=family.n))
    return Outcome(False, counterexample={**doc, "replay": {"covers": check.covers, "connected": check.connected}})


def _structure(rng: random.Random, params: Mapping[str, Any]) -> Outcome:
    T = _tree(rng, _size(rng, params))
    F = _links(rng, T, params["links"])
    H = build_incidence(T, F, IncidenceKind.REDUCED_FET)
    agree = check_bga_properties(H.graph, H.terminals)
    return Outcome(agree, counterexample=None if agree else {**bta_document(T, F), "replay": {"check": "structure"}})


def _lift(rng: random.Random, params: Mapping[str, Any]) -> Outcome:
    n = _size(rng, params, 4)
    G = _connected_graph(rng, n, p=0.4, max_cost=params["max_cost"])
    k = rng.randint(3, n)
    sampler = SamplerConfig(samples=params["samples"], seed=_seed(rng))
    report = solve_quota_family(G, k, FamilyMode.K_SUBGRAPH, sampler)
    if not report.feasible or not report.edges:
        return Outcome(None)
    agree = report.diagnostics.get("lift_bound_holds") is True and is_k_connected(span_subgraph(report.edges))
    doc = {**graph_document(G, sampler.seed), "replay": {"k": k, "samples": sampler.samples}}
    return Outcome(agree, sigma_max=report.sigma_max, counterexample=None if agree else doc, report=report)


def _stretch(rng: random.Random, params: Mapping[str, Any]) -> Outcome:
    n = rng.randint(3, max(3, params["n_max"]))
    seed = _seed(rng)
    samples = params["samples"]

    cycle = generate(GenKind.CYCLE, {"n": n})
    cycle_ok = all(emb.sigma_max == n - 1 for emb in embedding_samples(cycle, SamplerConfig(samples=samples, seed=seed)))

    tree = generate(GenKind.RANDOM_TREE, {"n": n}, seed=seed)
    tree_ok = measure_stretch(tree, Tree(tree)).sigma_max == 1

    G = _connected_graph(rng, n, max_cost=params["max_cost"])
    bests = [best_embedding(G, SamplerConfig(samples=k, seed=seed)).sigma_max for k in range(1, samples + 1)]
    monotone = all(a >= b for a, b in zip(bests, bests[1:]))

    agree = cycle_ok and tree_ok and monotone
    doc = {**graph_document(G, seed), "replay": {"samples": samples}}
    return Outcome(agree, sigma_max=Fraction(n - 1), counterexample=None if agree else doc)


# ---------------------------------------------------------------------------
# Oracle benches
# ---------------------------------------------------------------------------

def _ln_bound(terminals: int) -> Fraction:
    return Fraction(2 * math.log(max(terminals, 2)))


def _ratio_bench(rng: random.Random, params: Mapping[str, Any]) -> Outcome:
    T = _tree(rng, _size(rng, params))
    E = _augmentable(rng, T, params["links"], Mode.NODE)
    if E is None:
        return Outcome(None)
    report = solve_block_tree_aug(T, E, with_oracle=True)
    opt = report.exact_opt
    bound = _ln_bound(report.diagnostics["terminals"])
    agree = (
        report.feasible
        and report.ratio is not None
        and 1 <= report.ratio <= bound
        and opt >= report.diagnostics["leaf_lower_bound"]
    )
    return Outcome(
        agree,
        ratio=report.ratio,
        sigma_max=report.sigma_max,
        counterexample=None if agree else {**bta_document(T, E), "replay": {"problem": "bta"}},
        report=report,
    )


def _cds_bench(rng: random.Random, params: Mapping[str, Any]) -> Outcome:
    n = rng.randint(3, min(params["n_max"], 8))
    if rng.random() < 0.5:
        G = _biconnected_graph(rng, n, rng.randint(0, n))
    else:
        G = _pendant_graph(rng, n, rng.randint(3, n))
    sampler = SamplerConfig(samples=params["samples"], seed=_seed(rng))
    report = solve_2cds(G, sampler)
    opt = exact_oracle("2cds", G).objective
    agree = (
        report.feasible
        and is_k_connected(span_subgraph(report.edges))
        and dominates(G, report.nodes)
        and report.objective >= opt
    )
    if report.feasible:
        report = report.with_exact(opt)
    doc = {**graph_document(G, sampler.seed), "replay": {"problem": "2cds", "samples": sampler.samples}}
    return Outcome(
        agree, ratio=report.ratio, sigma_max=report.sigma_max, counterexample=None if agree else doc, report=report
    )


def _crossaug_bench(rng: random.Random, params: Mapping[str, Any]) -> Outcome:
    n = rng.randint(3, min(params["n_max"], 10))
    G = generate(GenKind.RANDOM_CACTUS, {"n": n}, seed=_seed(rng))
    family = family_generators("cactus_two_cuts", G)
    pool = list(combinations(range(n), 2))
    for _ in range(40):
        E = EdgeSet.build(sorted(rng.sample(pool, min(len(pool), params["links"]))), n=n)
        try:
            report = solve_crossing_aug(family, E, with_oracle=True)
        except Infeasible:
            continue
        cores = report.diagnostics["cores"]
        agree = report.feasible and report.objective <= _ln_bound(cores) * report.exact_opt
        doc = {**family_document(family, E), "replay": {"problem": "crossaug"}}
        return Outcome(agree, ratio=report.ratio, counterexample=None if agree else doc, report=report)
    return Outcome(None)


# ---------------------------------------------------------------------------
# Registry and runner
# ---------------------------------------------------------------------------

Trial = Callable[[random.Random, Mapping[str, Any]], Outcome]

# name -> (trial, default params, n_max cap)
SUITES: dict[str, tuple[Trial, dict, int]] = {
    "lemma2": (_lemma2, {"trials": 2000, "n_max": 12, "links": 8}, 16),
    "lemma3": (_lemma3, {"trials": 2000, "n_max": 12, "links": 8}, 16),
    "global": (_global, {"trials": 1000, "n_max": 12, "links": 8}, 16),
    "theorem6": (_theorem6, {"trials": 500, "n_max": 10, "links": 6}, 12),
    "structure": (_structure, {"trials": 500, "n_max": 12, "links": 8}, 16),
    "lift": (_lift, {"trials": 200, "n_max": 8, "max_cost": 5, "samples": 2}, 12),
    "stretch": (_stretch, {"trials": 50, "n_max": 64, "max_cost": 5, "samples": 4}, 64),
    "ratio_bench": (_ratio_bench, {"trials": 200, "n_max": 10, "links": 12}, 12),
    "cds_bench": (_cds_bench, {"trials": 100, "n_max": 8, "samples": 2}, 8),
    "crossaug_bench": (_crossaug_bench, {"trials": 100, "n_max": 10, "links": 12}, 12),
}


def suite_params(name: str, params: Optional[Mapping[str, Any]] = None) -> dict:
    if name not in SUITES:
        raise BadParams(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    _, defaults, cap = SUITES[name]
    merged = {**defaults, **{k: v for k, v in (params or {}).items() if v is not None}}
    if merged["trials"] < 0:
        raise BadParams("trials must be nonnegative")
    if merged["n_max"] < 3:
        raise BadParams("n_max must be at least 3")
    if merged["n_max"] > cap:
        raise CapExceeded(f"{name}: n_max={merged['n_max']} exceeds the suite cap {cap}")
    return merged


def _dump(result: SuiteResult, index: int, outcome: Outcome, dump_dir: Path) -> Path:
    doc = {**outcome.counterexample, "seed": result.seed}
    doc["replay"] = {**doc.get("replay", {}), "suite": result.name, "trial": index}
    stem = f"{result.name}-{result.seed}-{index}"
    path = write_document(dump_dir / f"{stem}.json", doc)
    logger.warning("%s: trial %d disagrees, dumped to %s", result.name, index, path)
    if outcome.report is not None:
        result.reports.append(write_report(dump_dir / f"{stem}.report.json", outcome.report, digest(doc)))
    return path


async def run_suite(
    name: str,
    params: Optional[Mapping[str, Any]] = None,
    seed: int = 0,
    dump_dir: Optional[Path] = None,
) -> SuiteResult:
    params = suite_params(name, params)
    trial = SUITES[name][0]
    limit = asyncio.Semaphore(max(1, config.BICONN_THREADS))
    started = time.perf_counter()

    async def run_one(index: int) -> Outcome:
        rng = derive_rng(seed, name, index)
        async with limit:
            return await asyncio.to_thread(trial, rng, params)

    outcomes = await asyncio.gather(*(run_one(i) for i in range(params["trials"])))

    result = SuiteResult(name, seed, params, list(outcomes))
    if config.RECORD_TIMINGS:
        result.wall_ms = round((time.perf_counter() - started) * 1000, 3)

    dump_dir = Path(dump_dir or config.DUMP_DIR)
    for index, outcome in enumerate(result.outcomes):
        if outcome.agree is False and outcome.counterexample is not None:
            result.dumped.append(_dump(result, index, outcome, dump_dir))

    logger.info(
        "%s: %d/%d agreements (seed=%s, mean ratio %s)",
        name, result.agreements, result.instances, seed, result.summary()["mean_ratio"] or "n/a",
    )
    return result
