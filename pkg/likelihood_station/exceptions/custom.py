"""
Custom exception classes for Likelihood Station
"""

from typing import Any, Dict, Optional, Sequence

# Process exit codes of the command-line front end
EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3
EXIT_TIMEOUT = 4
EXIT_TOLERANCE = 5


class LikelihoodStationError(Exception):
    """Base exception for Likelihood Station"""

    def __init__(
        self,
        message: str,
        exit_code: int = EXIT_INTERNAL,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        self.message = message
        self.exit_code = exit_code
        self.error_code = error_code
        self.details = details or {}
        super().__init__(self.message)

    def to_dict(self) -> Dict[str, Any]:
        """Convert exception to dictionary for the error report"""
        response = {
            "error": True,
            "message": self.message,
            "exit_code": self.exit_code,
        }

        if self.error_code:
            response["error_code"] = self.error_code

        if self.details:
            response["details"] = self.details

        return response


# --------------------------------------------------------------------------
# Usage errors (exit code 2)
# --------------------------------------------------------------------------


class UsageError(LikelihoodStationError):
    """Exception for malformed input supplied by the caller"""

    def __init__(
        self,
        message: str,
        error_code: str = "USAGE_ERROR",
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(
            message=message,
            exit_code=EXIT_USAGE,
            error_code=error_code,
            details=details,
        )


class PolynomialSyntaxError(UsageError):
    """Polynomial text does not follow the grammar"""

    def __init__(self, message: str, text: str, offset: int):
        super().__init__(
            message=f"Syntax error at byte {offset}: {message}",
            error_code="POLYNOMIAL_SYNTAX",
            details={"offset": offset, "text": text},
        )
        self.offset = offset


class UnknownVariableError(UsageError):
    """Identifier is not one of the declared variables"""

    def __init__(self, name: str, variables: Sequence[str]):
        super().__init__(
            message=f"Unknown variable '{name}'",
            error_code="UNKNOWN_VARIABLE",
            details={"name": name, "variables": list(variables)},
        )
        self.name = name


class RingMismatchError(UsageError):
    """Operands live in different polynomial rings"""

    def __init__(self, left: Sequence[str], right: Sequence[str]):
        super().__init__(
            message="Polynomials belong to different variable sets",
            error_code="RING_MISMATCH",
            details={"left": list(left), "right": list(right)},
        )


class DimensionMismatchError(UsageError):
    """Vector or matrix dimensions do not agree"""

    def __init__(self, what: str, expected: int, actual: int):
        super().__init__(
            message=f"{what}: expected {expected}, got {actual}",
            error_code="DIMENSION_MISMATCH",
            details={"what": what, "expected": expected, "actual": actual},
        )


class UnknownModelError(UsageError):
    """Model name is not in the catalog"""

    def __init__(self, name: str, catalog: Sequence[str]):
        super().__init__(
            message=f"Unknown model '{name}'. Available: {', '.join(catalog)}",
            error_code="UNKNOWN_MODEL",
            details={"name": name, "catalog": list(catalog)},
        )


class ModelFileError(UsageError):
    """Model text file could not be parsed"""

    def __init__(self, message: str, line: Optional[int] = None, path: str = ""):
        prefix = f"{path}:{line}: " if line is not None else (f"{path}: " if path else "")
        super().__init__(
            message=f"{prefix}{message}",
            error_code="MODEL_FILE",
            details={"line": line, "path": path},
        )
        self.line = line


class NonHomogeneousGeneratorError(UsageError):
    """Implicit model generator is not homogeneous"""

    def __init__(self, generator: str, index: int):
        super().__init__(
            message=f"Generator {index} is not homogeneous: {generator}",
            error_code="NON_HOMOGENEOUS",
            details={"generator": generator, "index": index},
        )


class ParametrizationSumError(UsageError):
    """Coordinates of a parametrization do not sum to one"""

    def __init__(self, remainder: str):
        super().__init__(
            message=f"Parametrization coordinates must sum to 1; sum - 1 = {remainder}",
            error_code="PARAMETRIZATION_SUM",
            details={"remainder": remainder},
        )


class InvalidDataError(UsageError):
    """Data vector is malformed"""

    def __init__(self, message: str, data: Optional[Sequence[Any]] = None):
        super().__init__(
            message=f"Invalid data vector: {message}",
            error_code="INVALID_DATA",
            details={"data": [str(x) for x in data]} if data is not None else {},
        )


# --------------------------------------------------------------------------
# Degenerate data (exit code 3)
# --------------------------------------------------------------------------


class DegenerateDataError(LikelihoodStationError):
    """The critical locus is not a finite set of points"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(
            message=message,
            exit_code=EXIT_DEGENERATE,
            error_code="DEGENERATE_DATA",
            details=details,
        )


class PositiveDimensionError(DegenerateDataError):
    """Ideal expected to be zero-dimensional has positive dimension"""

    def __init__(self, dimension: int, context: str = ""):
        message = f"Ideal has positive dimension {dimension}"
        if context:
            message += f" ({context})"
        super().__init__(message, details={"dimension": dimension, "context": context})
        self.dimension = dimension


class UnitIdealError(DegenerateDataError):
    """Ideal is the whole ring: the critical locus is empty"""

    def __init__(self, context: str = ""):
        message = "Empty critical locus (unit ideal)"
        if context:
            message += f" ({context})"
        super().__init__(message, details={"context": context})


# --------------------------------------------------------------------------
# Timeouts (exit code 4)
# --------------------------------------------------------------------------


class ComputationTimeoutError(LikelihoodStationError):
    """A Groebner computation exceeded its time budget"""

    def __init__(self, stage: str, seconds: float):
        super().__init__(
            message=f"Stage '{stage}' exceeded {seconds:g}s",
            exit_code=EXIT_TIMEOUT,
            error_code="TIMEOUT",
            details={"stage": stage, "seconds": seconds},
        )
        self.stage = stage


# --------------------------------------------------------------------------
# Tolerance failures (exit code 5)
# --------------------------------------------------------------------------


class ToleranceError(LikelihoodStationError):
    """A numerical certificate failed its tolerance"""

    def __init__(
        self,
        message: str,
        error_code: str = "TOLERANCE",
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(
            message=message,
            exit_code=EXIT_TOLERANCE,
            error_code=error_code,
            details=details,
        )


class ResidualError(ToleranceError):
    """A computed point does not satisfy the defining equations"""

    def __init__(self, residual: float, tolerance: float):
        super().__init__(
            message=f"Residual {residual:.3e} exceeds tolerance {tolerance:.3e}",
            error_code="RESIDUAL",
            details={"residual": residual, "tolerance": tolerance},
        )


class InconsistentMultipliersError(ToleranceError):
    """u is not in the row span of the scaled Jacobian at the point"""

    def __init__(self, residual: float, tolerance: float):
        super().__init__(
            message=f"Lagrange system inconsistent: residual {residual:.3e} > {tolerance:.3e}",
            error_code="INCONSISTENT_MULTIPLIERS",
            details={"residual": residual, "tolerance": tolerance},
        )


class RankDeficiencyError(ToleranceError):
    """Tangent space has the wrong dimension at the point"""

    def __init__(self, expected: int, actual: int):
        super().__init__(
            message=f"Tangent space dimension {actual}, expected {expected}",
            error_code="RANK_DEFICIENT",
            details={"expected": expected, "actual": actual},
        )


class ConsistencyMismatchError(ToleranceError):
    """Parametric colength differs from delta times the implicit ML degree"""

    def __init__(
        self,
        colength: int,
        delta: int,
        ml_degree: int,
        pushed: Optional[int] = None,
        matched: Optional[int] = None,
    ):
        details = {"colength": colength, "delta": delta, "ml_degree": ml_degree}
        if colength != delta * ml_degree:
            message = (
                f"colength(K_u) = {colength} but delta * ML degree = "
                f"{delta} * {ml_degree} = {delta * ml_degree}"
            )
        else:
            message = f"only {matched} of {pushed} parametric solutions map to critical points"
        if pushed is not None:
            details.update(pushed_points=pushed, matched_points=matched)
        super().__init__(message=message, error_code="CONSISTENCY_MISMATCH", details=details)
