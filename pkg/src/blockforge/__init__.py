"""Block invariants for p-blocks with split metacyclic defect groups.

The defect group is D = <x, y | x^(p^m) = y^(p^n) = 1, y x y^-1 = x^(1+p^l)>
for an odd prime p, and the block is described by its inertial index e.
"""
from .errors import BlockforgeError, BudgetExceeded, ConsistencyError, InvalidParameters
from .fusion import BlockParams, make_block
from .group_core import Element, GroupParams, make_params
from .invariants import (
    ExactInvariants,
    IntRange,
    InvariantBounds,
    best_bounds,
    bounds_extraspecial,
    bounds_general,
    bounds_M,
    conjecture_checks,
    exact_invariants,
)
from .report import ReportDocument, build_report

__all__ = [
    "BlockParams", "BlockforgeError", "BudgetExceeded", "ConsistencyError", "Element",
    "ExactInvariants", "GroupParams", "IntRange", "InvalidParameters", "InvariantBounds",
    "ReportDocument", "best_bounds", "bounds_M", "bounds_extraspecial", "bounds_general",
    "build_report", "conjecture_checks", "exact_invariants", "make_block", "make_params",
]
