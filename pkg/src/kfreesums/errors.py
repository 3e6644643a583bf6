"""Exception types shared across the package."""


class KfreesumsError(Exception):
    """Base class for all package errors."""


class RangeError(KfreesumsError):
    """An index or bound lies outside a table's declared range."""


class CapacityError(KfreesumsError):
    """A requested computation exceeds the configured memory or range budget."""


class ShapeError(KfreesumsError):
    """Two tables do not share the range an operation requires."""


class NonInvertibleError(KfreesumsError):
    """Dirichlet inversion requested for a table with a(1) not a unit."""


class CharacterConstructionError(KfreesumsError):
    """No supported real non-principal character exists for the modulus."""


class PlanError(KfreesumsError):
    """A character modification plan violates its invariants."""


class OracleDomainError(KfreesumsError):
    """A summatory or value oracle was queried outside its domain."""


class FitError(KfreesumsError):
    """An exponent fit is undefined (too few points or a degenerate series)."""


class ConfigError(KfreesumsError):
    """An experiment configuration violates the schema."""


class MethodMismatchError(KfreesumsError):
    """Two supposedly equivalent computation paths disagree: a correctness bug."""
