"""
Entry point for the biconnectivity bench.

  python main.py gen        --kind bta --n 10 --links 12 --seed 3 --output t.json
  python main.py solve      --problem bta --input t.json --output r.json
  python main.py oracle     --problem bta --input t.json
  python main.py verify     --input t.json --report r.json
  python main.py suite      lemma3 --n-max 8 --trials 500 --seed 7
  python main.py export-dot --input t.json --view reduced_FET

Exit codes: 0 ok, 1 property failure (suite disagreement, rejected report),
2 usage or input error. Logs go to stderr; artifacts to files or stdout.
"""

import argparse
import asyncio
import logging
import sys
from typing import Optional, Sequence

from config import LOG_LEVEL
from handlers import export, gen, solve, suite

logging.basicConfig(
    level=LOG_LEVEL,
    format="%(asctime)s | %(levelname)-8s | %(name)s | %(message)s",
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biconn", description="2-connectivity network design bench")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in (gen, solve, suite, export):
        module.register(subparsers)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logger.debug("running %s", args.command)
    return asyncio.run(args.handler(args))


if __name__ == "__main__":
    sys.exit(main())
