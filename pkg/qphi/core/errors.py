from __future__ import annotations


class QphiError(Exception):
    """Base class for every error raised by the engine."""


class ContractViolation(QphiError, ValueError):
    """An operation was called outside its precondition."""


class RingMismatch(ContractViolation):
    pass


class InsufficientOrder(ContractViolation):
    """A series is not known far enough to answer the question asked of it."""


class NonInvertible(QphiError, ArithmeticError):
    """The constant term of a series is not a unit of its coefficient ring."""


class LedgerError(QphiError):
    """Malformed ledger file, entry or expression tree."""
