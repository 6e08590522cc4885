"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operands act on different numbers of qubits."""


class InvalidCodeError(ValueError):
    """Generators are dependent, non-commuting, or define an empty code."""


class CircuitError(ValueError):
    """Malformed Clifford gate or circuit."""


class DomainError(ValueError):
    """Argument outside the domain of a formula."""


class ResourceError(RuntimeError):
    """An enumeration or statevector budget would be exceeded."""

    def __init__(self, message: str, needed: float | None = None, budget: float | None = None):
        super().__init__(message)
        self.needed = needed
        self.budget = budget
