"""Minimum-distance verification for classical, CSS and stabilizer codes.

Exhaustive and sub-exponential search engines (sliding window, matching
bipartition, punctured bipartition, covering sets, irreducible clusters),
seeded LDPC and random-code samplers, and the analytic complexity exponents
that go with them.
"""

from .codes import (
    BlockCode,
    Codeword,
    CssCode,
    LinearCode,
    ParityCheckMatrix,
    StabilizerCode,
    erasure_complete,
    gaussian_eliminate,
    quantum_weight_filter,
    shorten,
    syndrome,
    validate_stabilizer,
)
from .errors import (
    ConfigurationError,
    DistverError,
    DomainError,
    FormatError,
    InfeasibleError,
    NumericalError,
    SamplingError,
    ValidationError,
)
from .field import FieldElement, GaloisField, QuaternaryVector, field_arith, gf, trace_inner_product

__version__ = "0.1.0"

__all__ = [
    "BlockCode",
    "Codeword",
    "ConfigurationError",
    "CssCode",
    "DistverError",
    "DomainError",
    "FieldElement",
    "FormatError",
    "GaloisField",
    "InfeasibleError",
    "LinearCode",
    "NumericalError",
    "ParityCheckMatrix",
    "QuaternaryVector",
    "SamplingError",
    "StabilizerCode",
    "ValidationError",
    "erasure_complete",
    "field_arith",
    "gaussian_eliminate",
    "gf",
    "quantum_weight_filter",
    "shorten",
    "syndrome",
    "trace_inner_product",
    "validate_stabilizer",
]
