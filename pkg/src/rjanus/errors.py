"""Error types shared by all three execution engines.

Every engine raises the same classes at the same program points so that
differential tests can compare error behaviour, not just final stores.
"""

from __future__ import annotations


class JanusError(Exception):
    """Base class for all runtime and static errors."""


class DivisionByZero(JanusError):
    def __init__(self, op: str):
        super().__init__(f"division by zero in '{op}'")
        self.op = op


class UndefinedProcedure(JanusError):
    def __init__(self, name: str):
        super().__init__(f"undefined procedure '{name}'")
        self.name = name


class AssertionViolation(JanusError):
    """A conditional or loop assertion did not have the required truth value.

    `where` is a source span for the big-step/small-step engines and a label
    for the reversible engine; `direction` is "fwd" or "bwd" (or None for the
    direction-free engines).
    """

    def __init__(self, where, expected: bool, actual: bool, direction=None):
        d = f" ({direction})" if direction else ""
        super().__init__(
            f"assertion at {where} expected {expected}, got {actual}{d}"
        )
        self.where = where
        self.expected = expected
        self.actual = actual
        self.direction = direction


class StuckConfiguration(JanusError):
    """No transition rule applies to the given configuration."""


class Timeout(JanusError):
    """Fuel budget exhausted before reaching a terminal configuration."""

    def __init__(self, fuel: int):
        super().__init__(f"execution exceeded fuel budget of {fuel} steps")
        self.fuel = fuel
