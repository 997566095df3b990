"""
Services module for the likelihood pipelines
"""

from .likelihood_service import ImplicitModel, LikelihoodService
from .solver_service import SolverService
from .certify_service import CertifyService
from .parametric_service import ParametricModel, ParametricService
from .bound_service import BoundService, CIShape

__all__ = [
    "ImplicitModel",
    "LikelihoodService",
    "SolverService",
    "CertifyService",
    "ParametricModel",
    "ParametricService",
    "BoundService",
    "CIShape",
]
