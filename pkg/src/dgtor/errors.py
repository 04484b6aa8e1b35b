"""Exception hierarchy shared across the package."""


class DgtorError(Exception):
    """Base class for all errors raised by this package."""


class FieldMismatchError(DgtorError):
    """Operands live over different ground fields."""


class DimensionError(DgtorError):
    """Matrix or block dimensions are inconsistent."""


class DifferentialError(DgtorError):
    """A would-be differential does not square to zero.

    Carries the lowest degree where the composite is nonzero.
    """

    def __init__(self, degree, message=None):
        self.degree = degree
        super().__init__(message or f"differential does not square to zero at degree {degree}")


class TruncationError(DgtorError):
    """Homology requested in a degree polluted by truncation."""

    def __init__(self, degree, needed, message=None):
        self.degree = degree
        self.needed = needed
        super().__init__(
            message
            or f"degree {degree} is truncation-polluted (data complete only up to degree {needed})"
        )


class AxiomError(DgtorError):
    """A structure fails one of its defining axioms; carries witnesses."""

    def __init__(self, violations, message=None):
        self.violations = list(violations) if not isinstance(violations, str) else [violations]
        super().__init__(message or "; ".join(str(v) for v in self.violations))


class InputError(DgtorError):
    """Malformed user input: session files, monomials, references."""
