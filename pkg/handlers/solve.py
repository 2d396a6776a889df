"""
Solver command handlers.

Commands:
  solve   — run a pipeline on an instance file and write its report
  oracle  — write the exact-optimum report of a desk-scale instance
  verify  — re-check a report file against its instance file
"""

import argparse
import logging
from dataclasses import replace

from crossing import CrossingInstance, solve_crossing_aug
from errors import BadParams
from instances import InstanceFile, parse_instance, read_report, report_document
from middleware import ExitCode, add_io, add_sampler, add_solver, emit, guarded, sampler_from
from reports import Problem, SolutionReport
from solvers import (
    AugmentationInstance,
    QuotaProblem,
    exact_oracle,
    solve_2cds,
    solve_block_tree_aug,
    solve_quota_family,
    solve_tree_aug_ec,
    verify_solution,
)
from utils import canonical_json

logger = logging.getLogger(__name__)

# instance-file kind each problem reads
PROBLEM_KINDS = {
    Problem.BTA: "bta",
    Problem.TAEC: "bta",
    Problem.CDS: "graph",
    Problem.KSUB: "quota",
    Problem.QUOTA: "quota",
    Problem.BUDGET: "quota",
    Problem.CROSSAUG: "family",
}


def instance_for(problem: Problem, inst: InstanceFile):
    """The typed payload `problem` runs on; rejects a mismatched file kind."""
    expected = PROBLEM_KINDS[problem]
    if inst.kind != expected:
        raise BadParams(f"{problem.value} reads '{expected}' instance files, got '{inst.kind}'")
    payload = inst.payload
    if isinstance(payload, QuotaProblem) and payload.mode.problem is not problem:
        raise BadParams(f"instance mode {payload.mode.value} does not match --problem {problem.value}")
    return payload


def run_solver(problem: Problem, payload, args: argparse.Namespace) -> SolutionReport:
    cap, oracle = args.cap, args.oracle
    if isinstance(payload, AugmentationInstance):
        solve = solve_block_tree_aug if problem is Problem.BTA else solve_tree_aug_ec
        return solve(payload.tree, payload.links, exact_cap=cap, with_oracle=oracle)
    if isinstance(payload, CrossingInstance):
        return solve_crossing_aug(payload.family, payload.candidates, exact_cap=cap, with_oracle=oracle)
    if isinstance(payload, QuotaProblem):
        return solve_quota_family(
            payload.graph, payload.target, payload.mode, sampler_from(args),
            root=payload.root, exact_cap=cap, with_oracle=oracle,
        )
    return solve_2cds(payload, sampler_from(args), with_oracle=oracle)


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------

@guarded
async def cmd_solve(args: argparse.Namespace) -> int:
    problem = Problem(args.problem)
    inst = parse_instance(args.input)
    report = run_solver(problem, instance_for(problem, inst), args)
    report = replace(report, seed=args.seed)
    emit(canonical_json(report_document(report, inst.digest)), args.output)
    if not report.feasible:
        logger.warning("%s: no feasible solution found for %s", problem.value, args.input)
    return ExitCode.OK


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------

@guarded
async def cmd_oracle(args: argparse.Namespace) -> int:
    problem = Problem(args.problem)
    inst = parse_instance(args.input)
    report = exact_oracle(problem, instance_for(problem, inst))
    emit(canonical_json(report_document(report, inst.digest)), args.output)
    logger.info("%s: exact optimum %s", problem.value, report.objective)
    return ExitCode.OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

@guarded
async def cmd_verify(args: argparse.Namespace) -> int:
    inst = parse_instance(args.input)
    report, doc = read_report(args.report)
    if doc.get("input_digest") != inst.digest:
        logger.warning("report %s was produced from a different instance file", args.report)
    ok = verify_solution(report.problem, instance_for(report.problem, inst), report)
    logger.info("%s: report %s %s", report.problem.value, args.report, "verified" if ok else "REJECTED")
    emit(f"{'ok' if ok else 'rejected'}\n", args.output)
    return ExitCode.OK if ok else ExitCode.PROPERTY_FAILURE


def register(subparsers) -> None:
    p = subparsers.add_parser("solve", help="run a pipeline and write its report")
    add_io(p)
    add_solver(p)
    add_sampler(p)
    p.add_argument("--oracle", action="store_true", help="attach the exact optimum and ratio")
    p.set_defaults(handler=cmd_solve)

    p = subparsers.add_parser("oracle", help="write the exact-optimum report")
    add_io(p)
    p.add_argument("--problem", required=True, choices=[x.value for x in Problem])
    p.set_defaults(handler=cmd_oracle)

    p = subparsers.add_parser("verify", help="re-check a report against its instance")
    add_io(p)
    p.add_argument("--report", required=True, help="report file written by solve or oracle")
    p.set_defaults(handler=cmd_verify)
