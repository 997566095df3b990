"""
Bound Service - ML degree bound for complete intersections
"""

from itertools import product
from math import comb, prod
from typing import Sequence

from pydantic import BaseModel, ConfigDict, ValidationError

from ..exceptions.custom import UsageError
from ..schemas.validation import CIShapeRequest


class CIShape(BaseModel):
    """Ambient dimension n and generator degrees d_1..d_r of a complete intersection"""

    model_config = ConfigDict(frozen=True)

    n: int
    degrees: tuple

    @classmethod
    def of(cls, n: int, degrees: Sequence[int]) -> "CIShape":
        try:
            request = CIShapeRequest(n=n, degrees=tuple(degrees))
        except ValidationError as exc:
            raise UsageError(
                f"invalid complete-intersection shape: {exc.errors()[0]['msg']}",
                error_code="INVALID_SHAPE",
                details={"n": n, "degrees": list(degrees)},
            ) from None
        return cls(n=request.n, degrees=request.degrees)

    @property
    def r(self) -> int:
        return len(self.degrees)


class BoundService:
    """Service class for the complete-intersection ML degree bound"""

    @staticmethod
    def thom_number_D(shape: CIShape) -> int:
        """
        Sum of all monomials of degree at most n - r evaluated at d_1..d_r

        Enumerates exponent tuples directly.
        """
        budget = shape.n - shape.r
        total = 0
        for exponents in product(range(budget + 1), repeat=shape.r):
            if sum(exponents) <= budget:
                total += prod(d**e for d, e in zip(shape.degrees, exponents))
        return total

    @staticmethod
    def ci_ml_bound(shape: CIShape) -> int:
        """D * d_1 * ... * d_r, an upper bound for the ML degree of a complete intersection."""
        return BoundService.thom_number_D(shape) * prod(shape.degrees)

    @staticmethod
    def hypersurface_bound(n: int, d: int) -> int:
        """Closed form d * (d^n - 1) / (d - 1) for one generator (n * 1 when d = 1)."""
        if d == 1:
            return n
        return d * (d**n - 1) // (d - 1)

    @staticmethod
    def linear_bound(n: int, r: int) -> int:
        """All degrees one: the binomial coefficient C(n, r)."""
        return comb(n, r)
