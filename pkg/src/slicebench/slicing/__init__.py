"""Static and dynamic backward slicing with a shared criterion model."""

from .criteria import PROVENANCES, Slice, SlicingCriterion
from .dynamic import dynamic_backward_slice
from .static import (
    STRUCTURAL_MODES,
    backward_closure,
    static_backward_slice,
    structural_lines_for,
)

__all__ = [
    "PROVENANCES",
    "STRUCTURAL_MODES",
    "Slice",
    "SlicingCriterion",
    "backward_closure",
    "dynamic_backward_slice",
    "static_backward_slice",
    "structural_lines_for",
]
