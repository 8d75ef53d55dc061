"""Rényi information measures on finite alphabets with arbitrary reference weights."""

from .capacity import CapacityResult, renyi_radius
from .divergence import renyi_divergence, sibson_decomposition
from .entropy import (
    average_conditional_renyi_entropy,
    conditional_renyi_entropy,
    renyi_entropy,
)
from .errors import (
    GridTooLargeError,
    OutOfSupportError,
    PropertyViolation,
    RenyiError,
    SpaceMismatchError,
    UnsupportedOrderError,
    ValidationError,
)
from .measured_spaces import (
    Channel,
    Distribution,
    JointDistribution,
    Measure,
    MeasuredAlphabet,
    Order,
)
from .mutual_information import (
    SolverConfig,
    arimoto_mi,
    augustin_csiszar_mi,
    lapidoth_pfister_mi,
    sibson_mi,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityResult", "Channel", "Distribution", "GridTooLargeError", "JointDistribution",
    "Measure", "MeasuredAlphabet", "Order", "OutOfSupportError", "PropertyViolation",
    "RenyiError", "SolverConfig", "SpaceMismatchError", "UnsupportedOrderError",
    "ValidationError", "arimoto_mi", "augustin_csiszar_mi", "average_conditional_renyi_entropy",
    "conditional_renyi_entropy", "lapidoth_pfister_mi", "renyi_divergence",
    "renyi_entropy", "renyi_radius", "sibson_decomposition", "sibson_mi",
]
