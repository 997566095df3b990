"""
Likelihood Service - likelihood ideals and ML degrees of implicit models
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from ..algebra.groebner import (
    Ideal,
    colength_zero_dim,
    dimension_codim,
    is_zero_dimensional,
    normal_form,
    quotient_saturate,
    saturate_by_factors,
    saturate_by_ideal,
    saturation_elements,
)
from ..algebra.ring import Polynomial, PolynomialRing, format_poly, gradient, is_homogeneous, total_degree
from ..algebra.syzygy import KernelModule, PolyMatrix, kernel_of_matrix, presaturate_kernel
from ..config import settings
from ..exceptions.custom import (
    DegenerateDataError,
    NonHomogeneousGeneratorError,
    PositiveDimensionError,
    UnitIdealError,
    UsageError,
)
from ..logging_config import get_logger
from ..schemas.validation import DataVector
from ..utils.timing import StageTimer

logger = get_logger(__name__)

Route = Literal["auto", "minors", "syzygy"]
Step4 = Literal["full", "prime"]


class ImplicitModel(BaseModel):
    """Projective variety V given by homogeneous generators g_1..g_r in p_0..p_n"""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    name: str = "model"
    ring: PolynomialRing
    generators: Tuple[Polynomial, ...]
    codim: int
    degrees: Tuple[int, ...]
    torus_generators: Optional[Tuple[int, ...]] = None

    @classmethod
    def from_generators(
        cls,
        ring: PolynomialRing,
        generators: Sequence[Polynomial],
        name: str = "model",
        codim: Optional[int] = None,
        torus_generators: Optional[Sequence[int]] = None,
    ) -> "ImplicitModel":
        """
        Validate homogeneity and compute degrees and codimension.

        Args:
            ring: coordinate ring in p_0..p_n
            generators: g_1..g_r
            name: model label for logs and reports
            codim: known codimension; computed from a Groebner basis when omitted
            torus_generators: indices of c generators that cut out V away from the
                coordinate hyperplanes; the Jacobian rows are then taken from them only

        Returns:
            ImplicitModel
        """
        if not generators:
            raise UsageError("an implicit model needs at least one generator")
        converted = [g if g.ring == ring.sympy else ring.convert(g) for g in generators]
        for index, g in enumerate(converted, start=1):
            if not g or not is_homogeneous(g):
                raise NonHomogeneousGeneratorError(format_poly(g), index)
        if codim is None:
            _, codim = dimension_codim(Ideal(converted, ring))
        if torus_generators is not None:
            torus_generators = tuple(sorted(set(int(i) for i in torus_generators)))
            if len(torus_generators) != codim or not all(
                0 <= i < len(converted) for i in torus_generators
            ):
                raise UsageError(
                    f"torus generators must be {codim} distinct generator indices, "
                    f"got {list(torus_generators)}"
                )
        return cls(
            name=name,
            ring=ring,
            generators=tuple(converted),
            codim=codim,
            degrees=tuple(total_degree(g) for g in converted),
            torus_generators=torus_generators,
        )

    @property
    def vars(self) -> Tuple[str, ...]:
        return self.ring.names

    @property
    def n(self) -> int:
        return self.ring.ngens - 1

    @property
    def r(self) -> int:
        return len(self.generators)

    @property
    def is_complete_intersection(self) -> bool:
        return self.r == self.codim

    @property
    def jacobian_generators(self) -> Tuple[Polynomial, ...]:
        """Generators whose gradients form the Jacobian rows."""
        if self.torus_generators is None:
            return self.generators
        return tuple(self.generators[i] for i in self.torus_generators)

    @cached_property
    def ideal(self) -> Ideal:
        return Ideal(self.generators, self.ring)

    def coordinate_sum(self) -> Polynomial:
        total = self.ring.zero
        for p in self.ring.gens:
            total += p
        return total

    def chart(self) -> Polynomial:
        """The affine chart sum(p) - 1."""
        return self.coordinate_sum() - 1


class LikelihoodIdealResult(BaseModel):
    """Likelihood ideal in the chart sum(p) = 1 together with how it was obtained"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    ideal: Ideal
    route: Literal["minors", "syzygy"]
    step4: Step4
    dimension: int
    colength: Optional[int] = None
    saturation_changes: int = 0
    fell_back: bool = False


class MLDegreeResult(BaseModel):
    """Outcome of the two-draw ML degree computation"""

    degree: int
    certified: bool
    draws: List[Tuple[int, ...]]
    colengths: List[Optional[int]]


class _NotFixpoint(Exception):
    pass


class LikelihoodService:
    """Service class for the likelihood ideal pipeline of implicit models"""

    @staticmethod
    def build_augmented_jacobian(model: ImplicitModel) -> Tuple[PolyMatrix, PolyMatrix]:
        """
        Jacobian of the generators with a leading row of ones, and its column scaling by p

        With torus generators only those c gradients are used.

        Returns:
            (J, J_tilde), both (r+1) x (n+1) or (c+1) x (n+1)
        """
        ring = model.ring
        rows = [[ring.one] * ring.ngens]
        rows += [gradient(g) for g in model.jacobian_generators]
        J = PolyMatrix(ring, rows)
        return J, J.scale_columns(list(ring.gens))

    @staticmethod
    def jacobian(model: ImplicitModel) -> PolyMatrix:
        return PolyMatrix(model.ring, [gradient(g) for g in model.jacobian_generators])

    @staticmethod
    def singular_minors(model: ImplicitModel) -> List[Polynomial]:
        """c x c minors of the Jacobian of P that do not vanish on V."""
        c = model.codim
        if c == 0:
            return []
        minors = LikelihoodService.jacobian(model).minors(c)
        kept = [m for m in minors if normal_form(m, model.ideal)]
        logger.debug("singular_minors", model=model.name, total=len(minors), kept=len(kept))
        return kept

    @staticmethod
    def singular_locus_ideal(model: ImplicitModel) -> Ideal:
        """Ideal Q of c x c Jacobian minors together with the model generators."""
        full = PolyMatrix(model.ring, [gradient(g) for g in model.generators])
        minors = full.minors(model.codim) if model.codim else []
        return Ideal(list(minors) + list(model.generators), model.ring)

    @staticmethod
    def select_route(model: ImplicitModel, route: Route) -> Literal["minors", "syzygy"]:
        if route == "auto":
            if model.is_complete_intersection or model.torus_generators is not None:
                return "minors"
            return "syzygy"
        if route not in ("minors", "syzygy"):
            raise UsageError(f"unknown strategy {route!r}")
        return route

    @staticmethod
    def kernel(
        model: ImplicitModel,
        presaturate: bool = False,
        q_method: Optional[str] = None,
        seed: int = 0,
    ) -> KernelModule:
        """Kernel of J_tilde over the coordinate ring of V, optionally presaturated."""
        _, J_tilde = LikelihoodService.build_augmented_jacobian(model)
        M = kernel_of_matrix(J_tilde, modulo=model.ideal)
        if presaturate:
            factors = list(model.ring.gens) + [model.coordinate_sum()]
            elements = saturation_elements(
                model.ideal, LikelihoodService.singular_minors(model), q_method, seed
            )
            M = presaturate_kernel(M, factors + list(elements or []))
        return M

    @staticmethod
    def pre_ideal(
        model: ImplicitModel,
        u: DataVector,
        route: Literal["minors", "syzygy"],
        presaturate: bool = False,
        q_method: Optional[str] = None,
        seed: int = 0,
    ) -> Ideal:
        """I'_u in the chart sum(p) = 1."""
        ring = model.ring
        if route == "syzygy":
            M = LikelihoodService.kernel(model, presaturate, q_method, seed)
            pairing = M.pairing(u.counts, ring.ngens)
        else:
            _, J_tilde = LikelihoodService.build_augmented_jacobian(model)
            data_row = [ring.constant(c) for c in u.counts]
            stacked = PolyMatrix(ring, [data_row]).stack(J_tilde)
            c = model.codim
            size = len(model.jacobian_generators)
            row_sets = [(0,) + rows for rows in combinations(range(1, size + 2), c + 1)]
            pairing = stacked.minors(c + 2, row_sets)
        logger.debug("pre_ideal", model=model.name, route=route, generators=len(pairing))
        return Ideal(list(model.generators) + pairing + [model.chart()], ring)

    @staticmethod
    def _is_saturated(I: Ideal, elements: Sequence[Polynomial]) -> bool:
        for f in elements:
            if not quotient_saturate(I, f, "infinity", "verify").same_as(I):
                return False
        return True

    @staticmethod
    def _quotient_by_minor(
        I: Ideal,
        minors: Sequence[Polynomial],
        q_method: Optional[str],
        seed: int,
        rng: np.random.Generator,
    ) -> Ideal:
        """
        One quotient (I : h) by a surviving singular minor h, checked to be saturated

        Minors are tried in a seeded random order, at most MINOR_ATTEMPTS of them.

        Raises:
            _NotFixpoint: no tried minor gave a saturated quotient
        """
        if not minors:
            return I
        order = [int(i) for i in rng.permutation(len(minors))]
        tried = iter(order * (settings.MINOR_ATTEMPTS // len(order) + 1))
        for attempt in Retrying(
            stop=stop_after_attempt(settings.MINOR_ATTEMPTS),
            retry=retry_if_exception_type(_NotFixpoint),
            reraise=True,
        ):
            with attempt:
                index = next(tried)
                candidate = quotient_saturate(I, minors[index], "once", "quotient_minor")
                elements = saturation_elements(candidate, minors, q_method, seed)
                if elements is None or not LikelihoodService._is_saturated(candidate, elements):
                    logger.debug("quotient_not_saturated", minor=index)
                    raise _NotFixpoint()
                return candidate

    @staticmethod
    def _saturate_fully(
        I: Ideal,
        model: ImplicitModel,
        minors: Sequence[Polynomial],
        q_method: Optional[str],
        seed: int,
    ) -> Tuple[Ideal, int]:
        saturated, changes = saturate_by_factors(I, model.ring.gens, "saturate_coordinates")
        if saturated.is_unit():
            return saturated, changes
        saturated, more = saturate_by_ideal(saturated, minors, q_method, seed, "saturate_singular")
        return saturated, changes + more

    @staticmethod
    def likelihood_ideal(
        model: ImplicitModel,
        u: Union[DataVector, Sequence[int]],
        route: Route = None,
        step4: Step4 = None,
        seed: int = 0,
        presaturate: bool = False,
        q_method: Optional[str] = None,
        timer: Optional[StageTimer] = None,
    ) -> LikelihoodIdealResult:
        """
        Likelihood ideal I_u of an implicit model for data u

        Args:
            model: implicit model
            u: data vector of length n+1
            route: "minors", "syzygy" or "auto" (minors for complete intersections
                and models with torus generators)
            step4: "full" saturation or "prime" (coordinates, then one verified quotient
                by a singular minor)
            seed: seed for the random minor and the singular-locus combination
            presaturate: saturate the kernel module before pairing with u (syzygy route)
            q_method: "combination" or "sequential" saturation by the singular locus
            timer: optional stage timer

        Returns:
            LikelihoodIdealResult with the ideal in the chart sum(p) = 1

        Raises:
            PositiveDimensionError: the critical locus is not finite
            UnitIdealError: the critical locus is empty
        """
        u = DataVector.of(u).check_length(model.ring.ngens)
        chosen = LikelihoodService.select_route(model, route or settings.DEFAULT_ROUTE)
        if presaturate:
            chosen = "syzygy"
        step4 = step4 or settings.DEFAULT_STEP4
        if step4 not in ("full", "prime"):
            raise UsageError(f"unknown saturation mode {step4!r}")
        timer = timer or StageTimer()
        rng = np.random.default_rng(seed)
        log = logger.bind(model=model.name, route=chosen, step4=step4)

        with timer.stage("pre_ideal"):
            pre = LikelihoodService.pre_ideal(model, u, chosen, presaturate, q_method, seed)
        with timer.stage("singular_locus"):
            minors = LikelihoodService.singular_minors(model)

        fell_back = False
        changes = 0
        with timer.stage("saturate"):
            if presaturate:
                q_elements = saturation_elements(pre, minors, q_method, seed)
                if q_elements is not None and LikelihoodService._is_saturated(
                    pre, list(model.ring.gens) + q_elements
                ):
                    result = pre
                else:
                    log.info("saturation_not_fixpoint", action="full saturation")
                    fell_back = True
                    result, changes = LikelihoodService._saturate_fully(
                        pre, model, minors, q_method, seed
                    )
            elif step4 == "prime":
                result, changes = saturate_by_factors(pre, model.ring.gens, "saturate_coordinates")
                if not result.is_unit():
                    try:
                        quotient = LikelihoodService._quotient_by_minor(
                            result, minors, q_method, seed, rng
                        )
                        changes += int(not quotient.same_as(result))
                        result = quotient
                    except _NotFixpoint:
                        log.info(
                            "saturation_not_fixpoint",
                            attempts=settings.MINOR_ATTEMPTS,
                            action="full saturation",
                        )
                        fell_back = True
                        result, more = saturate_by_ideal(
                            result, minors, q_method, seed, "saturate_singular"
                        )
                        changes += more
            else:
                result, changes = LikelihoodService._saturate_fully(
                    pre, model, minors, q_method, seed
                )

        if result.is_unit():
            raise UnitIdealError(f"likelihood ideal of {model.name}")

        with timer.stage("colength"):
            if is_zero_dimensional(result):
                dimension, colength = 0, colength_zero_dim(result)
            else:
                dimension, _ = dimension_codim(result)
                log.warning("likelihood_ideal_positive_dimensional", dimension=dimension)
                raise PositiveDimensionError(dimension, f"likelihood ideal of {model.name}")

        log.info("likelihood_ideal", colength=colength, changes=changes, fell_back=fell_back)
        return LikelihoodIdealResult(
            ideal=result,
            route=chosen,
            step4=step4,
            dimension=dimension,
            colength=colength,
            saturation_changes=changes,
            fell_back=fell_back,
        )

    @staticmethod
    def ml_degree(
        model: ImplicitModel,
        seed: int = None,
        route: Route = None,
        step4: Step4 = None,
        presaturate: bool = False,
        timer: Optional[StageTimer] = None,
    ) -> MLDegreeResult:
        """
        ML degree from two independent generic data draws

        The value is certified when both draws give zero-dimensional likelihood
        ideals of equal colength.
        """
        seed = settings.DEFAULT_SEED if seed is None else seed
        rng = np.random.default_rng(seed)
        draws = [DataVector.random(model.ring.ngens, rng) for _ in range(2)]
        colengths: List[Optional[int]] = []
        failure: Optional[DegenerateDataError] = None
        for index, u in enumerate(draws):
            try:
                result = LikelihoodService.likelihood_ideal(
                    model,
                    u,
                    route=route,
                    step4=step4,
                    seed=seed + index + 1,
                    presaturate=presaturate,
                    timer=timer,
                )
                colengths.append(result.colength)
            except DegenerateDataError as exc:
                logger.warning("degenerate_draw", model=model.name, draw=index, error=exc.message)
                failure = failure or exc
                colengths.append(None)

        found = [c for c in colengths if c is not None]
        if not found:
            raise failure
        certified = len(found) == 2 and found[0] == found[1]
        if not certified:
            logger.warning("ml_degree_not_certified", model=model.name, colengths=colengths)
        return MLDegreeResult(
            degree=found[0],
            certified=certified,
            draws=[u.counts for u in draws],
            colengths=colengths,
        )
