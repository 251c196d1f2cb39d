"""Recognition of Robinson dissimilarities in quadratic time.

A dissimilarity is Robinson when its points can be ordered so that the
matrix never decreases moving away from the diagonal. ``recognize``
finds such an order or explains why none exists.
"""

from .core import (
    DissimilaritySpace,
    ValidationError,
    diameter,
    first_violation,
    is_robinson_order,
    parse_matrix,
    read_matrix,
    restrict,
    validate,
    write_matrix,
)
from .mmodules import is_mmodule, maximal_mmodules, mmodule_tree
from .recognizer import RecognitionResult, find_compatible_order, recognize
from .refinement import copoint_partition, recursive_refine, refine

__all__ = [
    "DissimilaritySpace",
    "ValidationError",
    "validate",
    "parse_matrix",
    "read_matrix",
    "write_matrix",
    "is_robinson_order",
    "first_violation",
    "restrict",
    "diameter",
    "refine",
    "recursive_refine",
    "copoint_partition",
    "find_compatible_order",
    "recognize",
    "RecognitionResult",
    "is_mmodule",
    "maximal_mmodules",
    "mmodule_tree",
]

__version__ = "0.1.0"
