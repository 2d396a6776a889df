"""
Middleware and argument groups shared by the command handlers.

guarded        — wraps a handler: library errors become exit code 2 and are
                 logged instead of escaping as tracebacks.
add_io         — --input / --output
add_sampler    — --seed / --samples / --method
add_solver     — --problem / --cap
"""

import argparse
import functools
import logging
from enum import IntEnum
from typing import Awaitable, Callable

from embedding import SamplerConfig, SamplerMethod
from errors import BiconnError, SchemaError
from reports import Problem

logger = logging.getLogger(__name__)

Handler = Callable[[argparse.Namespace], Awaitable[int]]


class ExitCode(IntEnum):
    OK = 0
    PROPERTY_FAILURE = 1
    USAGE = 2


# ---------------------------------------------------------------------------
# Middleware
# ---------------------------------------------------------------------------

def guarded(handler: Handler) -> Handler:
    @functools.wraps(handler)
    async def wrapper(args: argparse.Namespace) -> int:
        try:
            return int(await handler(args))
        except SchemaError as e:
            logger.error("%s: invalid input file at %s: %s", args.command, e.pointer or "/", e.message)
        except BiconnError as e:
            logger.error("%s failed: %s: %s", args.command, type(e).__name__, e)
        except OSError as e:
            logger.error("%s: %s", args.command, e)
        return ExitCode.USAGE

    return wrapper


# ---------------------------------------------------------------------------
# Argument groups
# ---------------------------------------------------------------------------

def add_io(parser: argparse.ArgumentParser, *, input_required: bool = True) -> None:
    parser.add_argument("--input", required=input_required, help="instance file (JSON)")
    parser.add_argument("--output", help="file to write; stdout when omitted")


def add_sampler(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=1, help="spanning trees to sample")
    parser.add_argument(
        "--method",
        choices=[m.value for m in SamplerMethod],
        default=SamplerMethod.RANDOM_WALK_TREE.value,
    )


def add_solver(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--problem", required=True, choices=[p.value for p in Problem])
    parser.add_argument("--cap", type=int, default=None, help="solve NWST exactly up to this many nonterminals")


def sampler_from(args: argparse.Namespace) -> SamplerConfig:
    return SamplerConfig(method=args.method, samples=args.samples, seed=args.seed)


def emit(text: str, output) -> None:
    """Write to --output, or print when none was given."""
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")
