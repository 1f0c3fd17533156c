"""Fusion rings: data model, builtin families, file ingestion, validation."""

from .base import (
    DimensionFunction,
    FusionRing,
    IrrepData,
    TableRing,
    conjugate,
    custom_dim,
    quantum_dim,
    tensor,
    vector_dim,
)
from .families import (
    AORing,
    FreeDualRing,
    HeisenbergDualRing,
    ProductRing,
    SO3Ring,
    SU2Ring,
    SU2qRing,
    SubRing,
    TorusDualRing,
    product_ring,
    subring_generated,
)
from .fileio import load_finite_group_file, load_fusion_ring_file
from .registry import load_ring, parse_generator
from .validation import ValidationReport, dominance_check, is_kac, validate_ring

__all__ = [
    "AORing",
    "DimensionFunction",
    "FreeDualRing",
    "FusionRing",
    "HeisenbergDualRing",
    "IrrepData",
    "ProductRing",
    "SO3Ring",
    "SU2Ring",
    "SU2qRing",
    "SubRing",
    "TableRing",
    "TorusDualRing",
    "ValidationReport",
    "conjugate",
    "custom_dim",
    "dominance_check",
    "is_kac",
    "load_finite_group_file",
    "load_fusion_ring_file",
    "load_ring",
    "parse_generator",
    "product_ring",
    "quantum_dim",
    "subring_generated",
    "tensor",
    "vector_dim",
]
