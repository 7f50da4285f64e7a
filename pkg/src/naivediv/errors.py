"""Exception types shared across the package."""


class LengthMismatch(ValueError):
    """Two vectors that must share a length do not."""


class DimensionMismatch(ValueError):
    """Matrix and vector shapes are incompatible."""


class IndexOutOfRange(ValueError):
    """A coordinate index falls outside the object it addresses."""


class NotMajorized(ValueError):
    """A required majorization relation does not hold."""


class NotInPolytope(ValueError):
    """A matrix is not a member of the required rebalancing polytope."""


class UnknownMeasure(KeyError):
    """No concentration measure is registered under the requested id."""

    def __str__(self) -> str:
        # KeyError renders its message through repr; keep it plain instead.
        return str(self.args[0]) if self.args else ""


class DomainError(ValueError):
    """Input lies outside the domain of a measure or numerical check."""
