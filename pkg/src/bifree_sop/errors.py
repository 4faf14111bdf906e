"""Exception hierarchy shared across the package."""


class BifreeError(Exception):
    """Base class for all errors raised by this package."""


class SizeError(BifreeError, ValueError):
    """An enumeration was requested beyond the configured cap."""


class OrderError(BifreeError, ValueError):
    """A partition order relation or truncation order was violated."""


class DomainError(BifreeError, ValueError):
    """A transform was requested outside its domain (e.g. zero first cumulant)."""


class DivisibilityError(BifreeError, ArithmeticError):
    """A series is not divisible by the requested monomial."""


class DivisionError(BifreeError, ZeroDivisionError):
    """Division by a series whose constant term vanishes."""


class CompositionError(BifreeError, ValueError):
    """Composition with an inner series that has a nonzero constant term."""


class InversionError(BifreeError, ValueError):
    """Compositional inverse requested for a series that has none."""


class ConfigError(BifreeError, ValueError):
    """Invalid command-line configuration."""
