"""
Parametric Service - likelihood ideals of polynomially parametrized models
"""

from __future__ import annotations

from typing import Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..algebra.groebner import (
    Ideal,
    colength_zero_dim,
    dimension_codim,
    is_zero_dimensional,
    saturate_by_factors,
    saturate_by_ideal,
)
from ..algebra.ring import Polynomial, PolynomialRing, format_poly
from ..algebra.syzygy import PolyMatrix, kernel_of_matrix
from ..exceptions.custom import (
    ConsistencyMismatchError,
    DimensionMismatchError,
    ParametrizationSumError,
    PositiveDimensionError,
    UnitIdealError,
    UsageError,
)
from ..logging_config import get_logger
from ..schemas.validation import DataVector, Tolerances
from ..utils.numeric import compile_polynomials
from ..utils.timing import StageTimer
from .likelihood_service import ImplicitModel, LikelihoodService
from .solver_service import SolverService

logger = get_logger(__name__)


class ParametricModel(BaseModel):
    """Coordinates f_0..f_n in parameters theta_1..theta_d with sum(f) = 1"""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    name: str = "parametric"
    ring: PolynomialRing
    coords: Tuple[Polynomial, ...]
    implicit: Optional[ImplicitModel] = None
    delta: Optional[int] = None

    @classmethod
    def from_coords(
        cls,
        ring: PolynomialRing,
        coords: Sequence[Polynomial],
        name: str = "parametric",
        implicit: Optional[ImplicitModel] = None,
        delta: Optional[int] = None,
    ) -> "ParametricModel":
        """
        Validate that the coordinates sum to one identically.

        Raises:
            ParametrizationSumError: sum(f) - 1 is not the zero polynomial
        """
        if len(coords) < 2:
            raise UsageError("a parametrization needs at least two coordinates")
        converted = [f if f.ring == ring.sympy else ring.convert(f) for f in coords]
        remainder = sum(converted, ring.zero) - 1
        if remainder:
            raise ParametrizationSumError(format_poly(remainder))
        if implicit is not None and implicit.ring.ngens != len(converted):
            raise DimensionMismatchError(
                "linked implicit model coordinates", len(converted), implicit.ring.ngens
            )
        if delta is not None and delta < 1:
            raise UsageError("fiber degree must be a positive integer")
        return cls(name=name, ring=ring, coords=tuple(converted), implicit=implicit, delta=delta)

    @property
    def params(self) -> Tuple[str, ...]:
        return self.ring.names

    @property
    def d(self) -> int:
        return self.ring.ngens

    def jacobian(self) -> PolyMatrix:
        """(n+1) x d matrix of partial derivatives of the coordinates."""
        return PolyMatrix(self.ring, [[f.diff(t) for t in self.ring.gens] for f in self.coords])

    def push_forward(self, theta: np.ndarray) -> np.ndarray:
        return compile_polynomials(list(self.coords)).evaluate(theta)


class ParametricResult(BaseModel):
    """Ideals of the parametric pipeline"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    J_u: Ideal
    K_u: Ideal
    J_dimension: int
    K_dimension: Optional[int] = None
    colength: Optional[int] = None
    extraneous_removed: int = 0


class ConsistencyReport(BaseModel):
    """Comparison of the parametric colength with delta times the ML degree"""

    data: Tuple[int, ...]
    colength: int
    delta: int
    ml_degree: int
    consistent: bool
    pushed_points: int = 0
    matched_points: int = 0


class ParametricService:
    """Service class for the parametric likelihood pipeline"""

    @staticmethod
    def build_param_matrix(model: ParametricModel) -> PolyMatrix:
        """[diag(f_0..f_n) | Df] of shape (n+1) x (n+1+d)."""
        ring = model.ring
        size = len(model.coords)
        derivatives = model.jacobian()
        rows = []
        for i, f in enumerate(model.coords):
            diagonal = [f if j == i else ring.zero for j in range(size)]
            rows.append(diagonal + derivatives.row(i))
        return PolyMatrix(ring, rows)

    @staticmethod
    def parametric_likelihood_ideal(
        model: ParametricModel, u: Union[DataVector, Sequence[int]]
    ) -> Tuple[Ideal, int]:
        """
        J_u: the data pairing with the kernel of the model matrix, saturated by every f_i

        Returns:
            (J_u, number of coordinate saturations that changed the ideal)
        """
        u = DataVector.of(u).check_length(len(model.coords))
        M = ParametricService.build_param_matrix(model)
        kernel = kernel_of_matrix(M)
        pairing = kernel.pairing(u.counts, len(model.coords))
        if not pairing:
            # every kernel vector is orthogonal to u
            pairing = [model.ring.zero]
        pre = Ideal(pairing, model.ring)
        J_u, changes = saturate_by_factors(pre, model.coords, "saturate_coordinates")
        logger.debug("parametric_ideal", model=model.name, kernel=len(kernel), changes=changes)
        return J_u, changes

    @staticmethod
    def remove_singular_locus(
        J_u: Ideal,
        model: ParametricModel,
        q_method: Optional[str] = None,
        seed: int = 0,
    ) -> Tuple[Ideal, int]:
        """K_u = (J_u : Q^inf) with Q the d x d minors of the parametrization Jacobian."""
        minors = model.jacobian().minors(model.d)
        return saturate_by_ideal(J_u, minors, q_method, seed, "saturate_singular")

    @staticmethod
    def run(
        model: ParametricModel,
        u: Union[DataVector, Sequence[int]],
        q_method: Optional[str] = None,
        seed: int = 0,
        timer: Optional[StageTimer] = None,
    ) -> ParametricResult:
        """J_u, K_u and the colength of K_u when it is zero-dimensional."""
        timer = timer or StageTimer()
        with timer.stage("parametric_ideal"):
            J_u, first = ParametricService.parametric_likelihood_ideal(model, u)
        with timer.stage("saturate_singular"):
            K_u, second = ParametricService.remove_singular_locus(J_u, model, q_method, seed)

        J_dimension = -1 if J_u.is_unit() else dimension_codim(J_u)[0]
        K_dimension: Optional[int] = None
        colength: Optional[int] = None
        if not K_u.is_unit():
            if is_zero_dimensional(K_u):
                K_dimension, colength = 0, colength_zero_dim(K_u)
            else:
                K_dimension = dimension_codim(K_u)[0]
                logger.warning("parametric_ideal_positive_dimensional", dimension=K_dimension)
        logger.info(
            "parametric_pipeline",
            model=model.name,
            J_dimension=J_dimension,
            colength=colength,
            extraneous_removed=first + second,
        )
        return ParametricResult(
            J_u=J_u,
            K_u=K_u,
            J_dimension=J_dimension,
            K_dimension=K_dimension,
            colength=colength,
            extraneous_removed=first + second,
        )

    @staticmethod
    def match_points(
        model: ParametricModel,
        K_u: Ideal,
        implicit_ideal: Ideal,
        tolerances: Optional[Tolerances] = None,
        seed: int = 0,
    ) -> Tuple[int, int]:
        """
        Push every solution of K_u through f and match it to a solution of I_u

        Returns:
            (pushed points, points landing within 1e-6 of an implicit solution)
        """
        tolerances = tolerances or Tolerances()
        fibers = SolverService.solve_zero_dim(K_u, tolerances, seed)
        implicit_points = SolverService.solve_zero_dim(implicit_ideal, tolerances, seed)
        targets = [p.as_array() for p in implicit_points]
        matched = 0
        for point in fibers:
            image = model.push_forward(point.as_array())
            if any(np.max(np.abs(image - t) / (1.0 + np.abs(t))) <= 1e-6 for t in targets):
                matched += point.multiplicity
        pushed = sum(p.multiplicity for p in fibers)
        return pushed, matched

    @staticmethod
    def parametric_ml_consistency(
        model: ParametricModel,
        u: Union[DataVector, Sequence[int], None] = None,
        seed: int = 0,
        push_points: bool = True,
        timer: Optional[StageTimer] = None,
    ) -> ConsistencyReport:
        """
        Check colength(K_u) = delta * ML degree of the linked implicit model

        With push_points, every solution of K_u must also map through f onto
        a solution of I_u.

        Raises:
            ConsistencyMismatchError: the two sides differ or a pushed point is unmatched
        """
        if model.implicit is None or model.delta is None:
            raise UsageError(f"model {model.name} has no linked implicit model and fiber degree")
        if u is None:
            u = DataVector.random(len(model.coords), np.random.default_rng(seed))
        u = DataVector.of(u)
        result = ParametricService.run(model, u, seed=seed, timer=timer)
        if result.K_u.is_unit():
            raise UnitIdealError(f"parametric likelihood ideal of {model.name}")
        if result.colength is None:
            raise PositiveDimensionError(
                result.K_dimension, f"parametric likelihood ideal of {model.name}"
            )
        implicit = LikelihoodService.likelihood_ideal(model.implicit, u, seed=seed, timer=timer)

        pushed = matched = 0
        if push_points:
            pushed, matched = ParametricService.match_points(
                model, result.K_u, implicit.ideal, seed=seed
            )
        consistent = result.colength == model.delta * implicit.colength
        if push_points and matched != pushed:
            consistent = False
        report = ConsistencyReport(
            data=u.counts,
            colength=result.colength,
            delta=model.delta,
            ml_degree=implicit.colength,
            consistent=consistent,
            pushed_points=pushed,
            matched_points=matched,
        )
        logger.info("parametric_consistency", **report.model_dump(exclude={"data"}))
        if not consistent:
            raise ConsistencyMismatchError(
                result.colength,
                model.delta,
                implicit.colength,
                pushed if push_points else None,
                matched,
            )
        return report
