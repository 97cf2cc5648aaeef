"""Exception types shared across the package.

The CLI maps these onto process exit codes, so checks and commands raise
them instead of bare ValueError where the distinction matters.
"""

__all__ = [
    "VarInterpError",
    "DomainError",
    "InvalidExponentError",
    "GridMismatchError",
    "ConfigError",
    "CapacityError",
    "DivergenceError",
    "ExponentSyntaxError",
    "ConstructionError",
]


class VarInterpError(Exception):
    """Base class for all package-specific errors."""


class DomainError(VarInterpError, ValueError):
    """An argument lies outside the mathematical domain (e.g. t <= 0)."""


class InvalidExponentError(VarInterpError, ValueError):
    """An exponent function evaluated below 1 or to a non-finite value."""


class GridMismatchError(VarInterpError, ValueError):
    """Two sampled functions live on different grids."""


class ConfigError(VarInterpError, ValueError):
    """Invalid configuration (bad parameters, unknown check id, ...)."""


class CapacityError(VarInterpError, ValueError):
    """A brute-force computation exceeds its size cap."""


class DivergenceError(VarInterpError, ArithmeticError):
    """A modular or norm is numerically divergent at every scale."""


class ExponentSyntaxError(VarInterpError, ValueError):
    """Exponent DSL source failed to parse.

    ``position`` is the 0-based offset into the source where parsing stopped.
    """

    def __init__(self, message, position):
        super().__init__(f"{message} at column {position}")
        self.position = position


class ConstructionError(VarInterpError, RuntimeError):
    """A decomposition or representation could not be constructed."""
