"""
Exception hierarchy.

Library modules raise these; only the command handlers in handlers/ catch
them and turn them into exit codes.
"""

from typing import Optional


class BiconnError(Exception):
    """Base class for every error raised by the toolkit."""


class DegeneratePath(BiconnError):
    pass


class InvalidNode(BiconnError):
    pass


class InvalidPair(BiconnError):
    pass


class NotConnected(BiconnError):
    pass


class NotATree(BiconnError):
    pass


class BadParams(BiconnError):
    pass


class NotSpanning(BiconnError):
    pass


class EmptyTree(BiconnError):
    pass


class WrongKind(BiconnError):
    pass


class Infeasible(BiconnError):
    pass


class CapExceeded(BiconnError):
    pass


class EmptySolution(BiconnError):
    pass


class Unsupported(BiconnError):
    pass


class NotACactus(BiconnError):
    pass


class InvariantViolation(BiconnError):
    """A structural fact that must hold did not; never swallowed."""


class SchemaError(BiconnError):
    def __init__(self, pointer: str, message: str) -> None:
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer
        self.message = message


class VersionMismatch(BiconnError):
    def __init__(self, found: Optional[int], expected: int) -> None:
        super().__init__(f"format_version {found!r} is not supported (expected {expected})")
        self.found = found
        self.expected = expected
