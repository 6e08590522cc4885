"""Distance, entanglement, and bound verification for quantum error-correcting codes."""

from .errors import CircuitError, DimensionError, DomainError, InvalidCodeError, ResourceError
from .pauli import PauliOperator, StabilizerCode, distance, in_group, logical_operators, sparsity
from .statevec import GeneralCode, kl_verify_distance
from .gem import GemEstimate, alternating_maximize

__all__ = [
    "CircuitError",
    "DimensionError",
    "DomainError",
    "GemEstimate",
    "GeneralCode",
    "InvalidCodeError",
    "PauliOperator",
    "ResourceError",
    "StabilizerCode",
    "alternating_maximize",
    "distance",
    "in_group",
    "kl_verify_distance",
    "logical_operators",
    "sparsity",
]
