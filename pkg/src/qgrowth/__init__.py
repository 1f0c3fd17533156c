"""qgrowth: growth invariants of compact quantum groups from fusion rings,
plus a desk-scale Fourier-algebra and functional-calculus test bench."""

from .errors import (
    EnumerationCapError,
    IntertwinerError,
    QGrowthError,
    QuadratureError,
    RingValidationError,
    SpecError,
    StrictGrowthError,
    TruncationCapError,
    UnknownIrrepError,
)
from .growth import (
    Ball,
    CoamenabilityReport,
    GrowthReport,
    GrowthSequence,
    ball,
    classify,
    coamenability_witness,
    gk_fit,
    growth_sequence,
    strict_growth_constants,
    trivial_multiplicity,
)
from .repvector import RepVector
from .rings import (
    DimensionFunction,
    FusionRing,
    IrrepData,
    conjugate,
    custom_dim,
    dominance_check,
    is_kac,
    load_ring,
    parse_generator,
    product_ring,
    quantum_dim,
    subring_generated,
    tensor,
    validate_ring,
    vector_dim,
)

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "CoamenabilityReport",
    "DimensionFunction",
    "EnumerationCapError",
    "FusionRing",
    "GrowthReport",
    "GrowthSequence",
    "IntertwinerError",
    "IrrepData",
    "QGrowthError",
    "QuadratureError",
    "RepVector",
    "RingValidationError",
    "SpecError",
    "StrictGrowthError",
    "TruncationCapError",
    "UnknownIrrepError",
    "ball",
    "classify",
    "coamenability_witness",
    "conjugate",
    "custom_dim",
    "dominance_check",
    "gk_fit",
    "growth_sequence",
    "is_kac",
    "load_ring",
    "parse_generator",
    "product_ring",
    "quantum_dim",
    "strict_growth_constants",
    "subring_generated",
    "tensor",
    "trivial_multiplicity",
    "validate_ring",
    "vector_dim",
]
