"""
Custom exceptions for Likelihood Station
"""

from .custom import (
    EXIT_DEGENERATE,
    EXIT_INTERNAL,
    EXIT_OK,
    EXIT_TIMEOUT,
    EXIT_TOLERANCE,
    EXIT_USAGE,
    ComputationTimeoutError,
    ConsistencyMismatchError,
    DegenerateDataError,
    DimensionMismatchError,
    InconsistentMultipliersError,
    InvalidDataError,
    LikelihoodStationError,
    ModelFileError,
    NonHomogeneousGeneratorError,
    ParametrizationSumError,
    PolynomialSyntaxError,
    PositiveDimensionError,
    RankDeficiencyError,
    ResidualError,
    RingMismatchError,
    ToleranceError,
    UnitIdealError,
    UnknownModelError,
    UnknownVariableError,
    UsageError,
)

from .handlers import error_payload, handle_exception, log_exception

__all__ = [
    "EXIT_OK",
    "EXIT_INTERNAL",
    "EXIT_USAGE",
    "EXIT_DEGENERATE",
    "EXIT_TIMEOUT",
    "EXIT_TOLERANCE",
    "LikelihoodStationError",
    "UsageError",
    "PolynomialSyntaxError",
    "UnknownVariableError",
    "RingMismatchError",
    "DimensionMismatchError",
    "UnknownModelError",
    "ModelFileError",
    "NonHomogeneousGeneratorError",
    "ParametrizationSumError",
    "InvalidDataError",
    "DegenerateDataError",
    "PositiveDimensionError",
    "UnitIdealError",
    "ComputationTimeoutError",
    "ToleranceError",
    "ResidualError",
    "InconsistentMultipliersError",
    "RankDeficiencyError",
    "ConsistencyMismatchError",
    "error_payload",
    "handle_exception",
    "log_exception",
]
