"""
Solver Service - all complex points of a zero-dimensional ideal
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from ..algebra.groebner import (
    Ideal,
    dimension_codim,
    is_zero_dimensional,
    normal_form,
    standard_monomials,
)
from ..algebra.ring import Monomial, to_fraction
from ..config import settings
from ..exceptions.custom import PositiveDimensionError, ResidualError, UnitIdealError
from ..logging_config import get_logger
from ..schemas.validation import Tolerances
from ..utils.numeric import CompiledPolynomials, compile_polynomials

logger = get_logger(__name__)


class CriticalPoint(BaseModel):
    """A solution of the likelihood equations"""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    coords: Tuple[complex, ...]
    residual: float
    is_real: bool
    is_positive: bool
    multiplicity: int = 1

    def real_coords(self) -> np.ndarray:
        return np.asarray([z.real for z in self.coords], dtype=float)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=complex)


class PointClassification(BaseModel):
    """Stable partition of solved points"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    complex_points: List[CriticalPoint]
    real_nonpositive: List[CriticalPoint]
    positive: List[CriticalPoint]
    borderline: int = 0

    @property
    def total(self) -> int:
        return sum(
            p.multiplicity
            for p in self.complex_points + self.real_nonpositive + self.positive
        )

    @property
    def real_count(self) -> int:
        return sum(p.multiplicity for p in self.real_nonpositive + self.positive)


class _NotSeparated(Exception):
    def __init__(self, gap: float, eigenvalues: np.ndarray, vectors: np.ndarray):
        super().__init__(f"eigenvalue gap {gap:.3e}")
        self.gap = gap
        self.eigenvalues = eigenvalues
        self.vectors = vectors


def _is_real(z: np.ndarray, imag_tol: float) -> bool:
    return bool(np.all(np.abs(z.imag) <= imag_tol * (1.0 + np.abs(z))))


def _sort_key(point: CriticalPoint) -> Tuple:
    return tuple(round(z.real, 12) for z in point.coords) + tuple(
        round(z.imag, 12) for z in point.coords
    )


class SolverService:
    """Service class for solving zero-dimensional polynomial systems"""

    @staticmethod
    def multiplication_matrices(
        I: Ideal, basis: Sequence[Monomial]
    ) -> List[np.ndarray]:
        """
        Float matrices of multiplication by each variable on the quotient

        Column j holds the coordinates of NF(x_k * b_j) in the standard-monomial basis.
        """
        index: Dict[Monomial, int] = {m: i for i, m in enumerate(basis)}
        ring = I.ring
        D = len(basis)
        matrices = []
        for k, x in enumerate(ring.gens):
            M = np.zeros((D, D), dtype=float)
            for j, b in enumerate(basis):
                shifted = b[:k] + (b[k] + 1,) + b[k + 1 :]
                if shifted in index:
                    M[index[shifted], j] = 1.0
                    continue
                reduced = normal_form(ring.sympy.term_new(shifted, ring.sympy.domain.one), I)
                for monom, coeff in reduced.iterterms():
                    M[index[monom], j] = float(to_fraction(coeff))
            matrices.append(M)
        return matrices

    @staticmethod
    def _eigen_decomposition(
        matrices: Sequence[np.ndarray], rng: np.random.Generator, separation: float
    ) -> Tuple[np.ndarray, np.ndarray]:
        weights = rng.integers(1, 101, size=len(matrices))
        M = sum(float(w) * m for w, m in zip(weights, matrices))
        eigenvalues, vectors = np.linalg.eig(M.T)
        D = len(eigenvalues)
        if D > 1:
            diffs = np.abs(eigenvalues[:, None] - eigenvalues[None, :])
            diffs[np.diag_indices(D)] = np.inf
            gap = float(diffs.min()) / (1.0 + float(np.abs(eigenvalues).max()))
            if gap < separation:
                raise _NotSeparated(gap, eigenvalues, vectors)
        return eigenvalues, vectors

    @staticmethod
    def _clusters(eigenvalues: np.ndarray, separation: float) -> List[List[int]]:
        scale = 1.0 + float(np.abs(eigenvalues).max()) if len(eigenvalues) else 1.0
        order = np.lexsort((eigenvalues.imag, eigenvalues.real))
        clusters: List[List[int]] = []
        for i in order:
            for cluster in clusters:
                if abs(eigenvalues[i] - eigenvalues[cluster[0]]) < separation * scale:
                    cluster.append(int(i))
                    break
            else:
                clusters.append([int(i)])
        return clusters

    @staticmethod
    def _polish(system: CompiledPolynomials, z: np.ndarray, iterations: int) -> np.ndarray:
        """Gauss-Newton on the full generator list, keeping the best iterate."""
        best = z
        best_residual = float(system.scaled_residuals(z).max(initial=0.0))
        for _ in range(iterations):
            F = system.evaluate(z)
            J = system.jacobian(z)
            step, *_ = np.linalg.lstsq(J, F, rcond=None)
            z = z - step
            residual = float(system.scaled_residuals(z).max(initial=0.0))
            if residual < best_residual:
                best, best_residual = z, residual
            if np.linalg.norm(step) <= 1e-15 * (1.0 + np.linalg.norm(z)):
                break
        return best

    @staticmethod
    def solve_zero_dim(
        I: Ideal,
        tolerances: Optional[Tolerances] = None,
        seed: int = 0,
    ) -> List[CriticalPoint]:
        """
        All complex solutions of a zero-dimensional ideal

        Args:
            I: zero-dimensional ideal (for likelihood ideals, already in the chart sum(p) = 1)
            tolerances: residual, imaginary-part and positivity tolerances
            seed: seed for the random separating linear form

        Returns:
            Points sorted lexicographically by real parts; multiplicities sum to the colength
        """
        tolerances = tolerances or Tolerances()
        if I.is_unit():
            raise UnitIdealError("solving")
        if not is_zero_dimensional(I):
            dim, _ = dimension_codim(I)
            raise PositiveDimensionError(dim, "solving")

        basis = standard_monomials(I)
        D = len(basis)
        matrices = SolverService.multiplication_matrices(I, basis)
        rng = np.random.default_rng(seed)

        eigenvalues = vectors = None
        try:
            for attempt in Retrying(
                stop=stop_after_attempt(settings.LINEAR_FORM_ATTEMPTS),
                retry=retry_if_exception_type(_NotSeparated),
                reraise=True,
            ):
                with attempt:
                    eigenvalues, vectors = SolverService._eigen_decomposition(
                        matrices, rng, tolerances.separation
                    )
        except _NotSeparated as exc:
            logger.warning(
                "eigenvalues_not_separated",
                gap=exc.gap,
                attempts=settings.LINEAR_FORM_ATTEMPTS,
                action="reporting clusters",
            )
            eigenvalues, vectors = exc.eigenvalues, exc.vectors

        system = compile_polynomials(list(I.generators))
        clusters = SolverService._clusters(eigenvalues, tolerances.separation)
        points: List[CriticalPoint] = []
        for cluster in clusters:
            coords = []
            for i in cluster:
                v = vectors[:, i]
                norm = np.vdot(v, v)
                coords.append([np.vdot(v, M.T @ v) / norm for M in matrices])
            z = np.mean(np.asarray(coords, dtype=complex), axis=0)
            z = SolverService._polish(system, z, settings.NEWTON_ITERATIONS)
            residual = float(system.scaled_residuals(z).max(initial=0.0))
            if residual > tolerances.residual:
                logger.error("residual_too_large", residual=residual, tolerance=tolerances.residual)
                raise ResidualError(residual, tolerances.residual)
            real = _is_real(z, tolerances.imag)
            if real:
                z = z.real.astype(complex)
            positive = real and bool(np.all(z.real > tolerances.positive))
            points.append(
                CriticalPoint(
                    coords=tuple(complex(c) for c in z),
                    residual=residual,
                    is_real=real,
                    is_positive=positive,
                    multiplicity=len(cluster),
                )
            )

        points.sort(key=_sort_key)
        logger.info(
            "solved",
            colength=D,
            points=len(points),
            real=sum(p.multiplicity for p in points if p.is_real),
            positive=sum(p.multiplicity for p in points if p.is_positive),
        )
        return points

    @staticmethod
    def classify_points(
        points: Sequence[CriticalPoint], tolerances: Optional[Tolerances] = None
    ) -> PointClassification:
        """Partition into complex, real non-positive and positive points, warning on borderline cases."""
        tolerances = tolerances or Tolerances()
        complex_points, real_nonpositive, positive = [], [], []
        borderline = 0
        for point in sorted(points, key=_sort_key):
            z = point.as_array()
            imag_ratio = float(np.max(np.abs(z.imag) / (1.0 + np.abs(z)))) / tolerances.imag
            near_imag = 0.1 <= imag_ratio <= 10.0
            near_zero = point.is_real and bool(
                np.any(np.abs(z.real) <= 10.0 * tolerances.positive)
            )
            if near_imag or near_zero:
                borderline += 1
                logger.warning(
                    "borderline_classification",
                    point=[round(c.real, 12) for c in point.coords],
                    imag_ratio=imag_ratio,
                    near_zero=near_zero,
                )
            if point.is_positive:
                positive.append(point)
            elif point.is_real:
                real_nonpositive.append(point)
            else:
                complex_points.append(point)
        return PointClassification(
            complex_points=complex_points,
            real_nonpositive=real_nonpositive,
            positive=positive,
            borderline=borderline,
        )

    @staticmethod
    def conjugates_paired(points: Sequence[CriticalPoint], tol: float = 1e-6) -> bool:
        """Non-real points come in conjugate pairs."""
        pending = [p.as_array() for p in points if not p.is_real]
        while pending:
            z = pending.pop()
            match = None
            for i, w in enumerate(pending):
                if np.max(np.abs(w - np.conj(z)) / (1.0 + np.abs(z))) <= tol:
                    match = i
                    break
            if match is None:
                return False
            pending.pop(match)
        return True
