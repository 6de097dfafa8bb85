"""Exception types and the cooperative budget token."""

import os
import time


class LinkgateError(Exception):
    """Base class for all errors raised by linkgate."""


class ParseError(LinkgateError, ValueError):
    """Malformed textual input. ``position`` is a character offset when known."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class PreconditionError(LinkgateError, ValueError):
    """An operation was called on data outside its domain."""


class BudgetExceeded(LinkgateError):
    """A time or size budget ran out before the computation finished."""


class FactorizationUnavailable(BudgetExceeded):
    """Polynomial is outside the factorization budget.

    Callers must turn this into an ``Unknown`` verdict rather than guess.
    """


class Budget:
    """Deadline token threaded through long computations.

    ``Budget(None)`` never expires.  ``check()`` raises :class:`BudgetExceeded`
    once the wall-clock allowance is spent.
    """

    def __init__(self, ms=None):
        self.ms = ms
        self._deadline = None if ms is None else time.monotonic() + ms / 1000.0

    @classmethod
    def from_env(cls, ms=None):
        if ms is None:
            env = os.environ.get("LINKGATE_BUDGET_MS")
            if env:
                ms = int(env)
        return cls(ms)

    def check(self):
        if self._deadline is not None and time.monotonic() > self._deadline:
            raise BudgetExceeded(f"time budget of {self.ms} ms exceeded")


UNLIMITED = Budget(None)
