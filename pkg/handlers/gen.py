"""
Instance generation.

  gen --kind graph   --gen {random_tree|gnp|cycle|grid|random_cactus|complete}
  gen --kind bta     random tree plus --links candidate edges
  gen --kind family  cut family of a generated graph (--family)
  gen --kind quota   generated graph plus --mode / --target

Output depends on the arguments only, never on the clock.
"""

import argparse
import logging
from itertools import combinations

from crossing import family_generators
from errors import BadParams
from graph_core import EdgeSet, GenKind, Tree, generate, sample_candidates
from instances import KINDS, bta_document, family_document, graph_document, quota_document
from middleware import ExitCode, emit, guarded
from solvers import FamilyMode, QuotaProblem
from utils import canonical_json, derive_rng

logger = logging.getLogger(__name__)

FAMILY_KINDS = ("cactus_two_cuts", "min_edge_cuts", "tree_cuts")


def _gen_params(args: argparse.Namespace) -> dict:
    params = {"n": args.n, "p": args.p, "rows": args.rows, "cols": args.cols,
              "max_cost": args.max_cost, "max_profit": args.max_profit}
    return {k: v for k, v in params.items() if v is not None}


def build_document(args: argparse.Namespace) -> dict:
    params = _gen_params(args)

    if args.kind == "graph":
        return graph_document(generate(args.gen, params, args.seed), args.seed)

    if args.kind == "bta":
        T = Tree(generate(GenKind.RANDOM_TREE, {"n": params.get("n", 8)}, args.seed))
        E = sample_candidates(T, args.links, args.seed, args.max_cost)
        return bta_document(T, E, args.seed)

    if args.kind == "family":
        gen = args.gen if args.family != "tree_cuts" else GenKind.RANDOM_TREE.value
        G = generate(gen, params, args.seed)
        family = family_generators(args.family, Tree(G) if args.family == "tree_cuts" else G)
        E = None
        if args.links:
            pool = list(combinations(range(G.n), 2))
            rng = derive_rng(args.seed, "family-candidates", G.n)
            E = EdgeSet.build(sorted(rng.sample(pool, min(args.links, len(pool)))), n=G.n)
        return family_document(family, E, args.seed)

    if args.target is None:
        raise BadParams("quota instances need --target")
    problem = QuotaProblem(generate(args.gen, params, args.seed), FamilyMode(args.mode), args.target, args.root)
    return quota_document(problem, args.seed)


@guarded
async def cmd_gen(args: argparse.Namespace) -> int:
    doc = build_document(args)
    emit(canonical_json(doc), args.output)
    logger.info("generated %s instance (seed=%s)", args.kind, args.seed)
    return ExitCode.OK


def register(subparsers) -> None:
    p = subparsers.add_parser("gen", help="write a generated instance file")
    p.add_argument("--kind", choices=KINDS, default="graph")
    p.add_argument("--gen", choices=[k.value for k in GenKind], default=GenKind.GNP.value)
    p.add_argument("--family", choices=FAMILY_KINDS, default="cactus_two_cuts")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--rows", type=int, default=None)
    p.add_argument("--cols", type=int, default=None)
    p.add_argument("--max-cost", type=int, default=None)
    p.add_argument("--max-profit", type=int, default=None)
    p.add_argument("--links", type=int, default=0, help="candidate edges to draw (bta, family)")
    p.add_argument("--mode", choices=[m.value for m in FamilyMode], default=FamilyMode.K_SUBGRAPH.value)
    p.add_argument("--target", default=None, help="k, Q or B of a quota instance")
    p.add_argument("--root", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", help="file to write; stdout when omitted")
    p.set_defaults(handler=cmd_gen)
