"""
suite NAME — run an experiment suite and print its summary CSV.

Exit code 1 when any trial disagrees; the disagreeing trials are dumped as
instance files under --dump-dir (default BICONN_DUMP_DIR).
"""

import argparse
import logging

from jobs import SUITES, run_suite
from middleware import ExitCode, emit, guarded

logger = logging.getLogger(__name__)


@guarded
async def cmd_suite(args: argparse.Namespace) -> int:
    params = {"trials": args.trials, "n_max": args.n_max, "samples": args.samples}
    if args.links is not None:
        params["links"] = args.links
    result = await run_suite(args.name, params, args.seed, args.dump_dir)
    emit(result.to_csv(), args.output)
    if not result.passed:
        logger.error(
            "%s: %d of %d trials disagree; certificates: %s",
            args.name, result.instances - result.agreements, result.instances,
            ", ".join(str(p) for p in result.dumped),
        )
        return ExitCode.PROPERTY_FAILURE
    return ExitCode.OK


def register(subparsers) -> None:
    p = subparsers.add_parser("suite", help="run an experiment suite")
    p.add_argument("name", choices=sorted(SUITES))
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--links", type=int, default=None, help="candidate links per trial")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dump-dir", default=None)
    p.add_argument("--output", help="CSV file; stdout when omitted")
    p.set_defaults(handler=cmd_suite)
