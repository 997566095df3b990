"""
Pydantic schemas for validation and reports
"""

from .validation import CIShapeRequest, DataVector, Tolerances
from .reports import MaximumEntry, RunReport, SolutionEntry

__all__ = [
    "CIShapeRequest",
    "DataVector",
    "Tolerances",
    "MaximumEntry",
    "RunReport",
    "SolutionEntry",
]
