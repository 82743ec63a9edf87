"""Exception hierarchy shared by all modules.

The CLI maps ``ContractError`` to exit status 3 and ``NumericError`` to 4.
"""
from __future__ import annotations


class ContractError(ValueError):
    """A caller violated an operation's precondition."""


class RangeError(ContractError):
    """An argument lies outside the supported range."""


class FormatError(ContractError):
    """An input file does not follow the expected format."""


class ConfigurationError(ContractError):
    """A parameter set leads to an inconsistent construction."""


class CoverageError(ContractError):
    """A requested height exceeds what the zero table covers."""


class NumericError(ArithmeticError):
    """A numerical evaluation failed or lost its meaning."""


class PoleError(NumericError):
    """Evaluation requested at a pole."""


class RefinementError(NumericError):
    """A root search found no sign change to bracket."""


class ConsistencyError(AssertionError):
    """An internal exactness check failed; always indicates a bug."""
