"""
Certify Service - Lagrange multipliers, restricted Hessians and local maxima
"""

from __future__ import annotations

from typing import List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..exceptions.custom import InconsistentMultipliersError, RankDeficiencyError
from ..logging_config import get_logger
from ..schemas.validation import DataVector, Tolerances
from ..utils.numeric import compile_polynomials, orthonormal_null_space
from ..utils.timing import StageTimer
from .likelihood_service import ImplicitModel, LikelihoodIdealResult, LikelihoodService, Route, Step4
from .solver_service import CriticalPoint, PointClassification, SolverService

logger = get_logger(__name__)

Status = Literal["maximum", "inconclusive", "not_maximum"]


class LocalMaximumReport(BaseModel):
    """Certified local maximum of the likelihood function"""

    point: Tuple[float, ...]
    log_likelihood: float
    multipliers: Tuple[float, ...]
    restricted_hessian_eigenvalues: Tuple[float, ...]
    is_global_among_found: bool = False


class PointCertificate(BaseModel):
    """Second-order test outcome for one positive critical point"""

    point: Tuple[float, ...]
    status: Status
    log_likelihood: float
    multipliers: Tuple[float, ...]
    eigenvalues: Tuple[float, ...]


class MaximizationResult(BaseModel):
    """Everything the maximization pipeline produced"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    likelihood: LikelihoodIdealResult
    points: List[CriticalPoint]
    classification: PointClassification
    certificates: List[PointCertificate]
    maxima: List[LocalMaximumReport]


class _ModelDerivatives:
    """Numeric Jacobian and Hessians of the model generators."""

    def __init__(self, model: Optional[ImplicitModel], nvars: int):
        self.nvars = nvars
        self.system = compile_polynomials(list(model.generators)) if model is not None else None

    def jacobian(self, p: np.ndarray) -> np.ndarray:
        """Augmented Jacobian: a row of ones on top of the generator gradients."""
        ones = np.ones((1, self.nvars))
        if self.system is None:
            return ones
        return np.vstack([ones, self.system.jacobian(p).real])

    def hessians(self, p: np.ndarray) -> np.ndarray:
        if self.system is None:
            return np.zeros((0, self.nvars, self.nvars))
        return self.system.hessians(p).real


def log_likelihood(p: Sequence[float], u: Sequence[int]) -> float:
    p = np.asarray(p, dtype=float)
    u = np.asarray(u, dtype=float)
    return float(np.sum(u * np.log(p)))


class CertifyService:
    """Service class for second-order certification of critical points"""

    @staticmethod
    def lagrange_multipliers(
        p_star: Sequence[float],
        u: Sequence[int],
        J_tilde: np.ndarray,
        tolerance: Optional[float] = None,
    ) -> np.ndarray:
        """
        Least-squares solution of J_tilde(p*)^T lambda = u

        Args:
            p_star: positive critical point
            u: data vector
            J_tilde: augmented Jacobian scaled by p*, evaluated at p*
            tolerance: relative consistency tolerance

        Returns:
            lambda of length r+1

        Raises:
            InconsistentMultipliersError: u is not in the row span of J_tilde(p*)
        """
        tolerance = tolerance if tolerance is not None else Tolerances().multipliers
        A = np.asarray(J_tilde, dtype=float).T
        b = np.asarray(u, dtype=float)
        lam, *_ = np.linalg.lstsq(A, b, rcond=None)
        residual = float(np.linalg.norm(A @ lam - b))
        limit = tolerance * float(np.linalg.norm(b))
        if residual > limit:
            logger.error("inconsistent_multipliers", residual=residual, limit=limit)
            raise InconsistentMultipliersError(residual, limit)
        return lam

    @staticmethod
    def lagrangian_hessian(
        p_star: Sequence[float],
        lam: Sequence[float],
        u: Sequence[int],
        model: Optional[ImplicitModel] = None,
    ) -> np.ndarray:
        """diag(-u/p^2) minus sum over generators of lambda_k * Hess(g_k)(p*)."""
        p = np.asarray(p_star, dtype=float)
        H = np.diag(-np.asarray(u, dtype=float) / p**2)
        hessians = _ModelDerivatives(model, len(p)).hessians(p)
        for weight, hess in zip(np.asarray(lam, dtype=float)[1:], hessians):
            H = H - weight * hess
        return H

    @staticmethod
    def tangent_basis(
        p_star: Sequence[float],
        model: Optional[ImplicitModel] = None,
        rank_tol: Optional[float] = None,
    ) -> np.ndarray:
        """
        Orthonormal basis of the kernel of the augmented Jacobian J(p*)

        Raises:
            RankDeficiencyError: kernel dimension differs from n - c
        """
        rank_tol = rank_tol if rank_tol is not None else Tolerances().rank
        p = np.asarray(p_star, dtype=float)
        J = _ModelDerivatives(model, len(p)).jacobian(p)
        B = orthonormal_null_space(J, rank_tol)
        expected = len(p) - 1 - (model.codim if model is not None else 0)
        if B.shape[1] != expected:
            raise RankDeficiencyError(expected, B.shape[1])
        return B

    @staticmethod
    def restricted_hessian(
        p_star: Sequence[float],
        lam: Sequence[float],
        u: Sequence[int],
        model: Optional[ImplicitModel] = None,
        rank_tol: Optional[float] = None,
    ) -> np.ndarray:
        """
        Lagrangian Hessian restricted to the tangent space at p*

        The (sum u) * log(sum p) term of the likelihood is omitted: its Hessian
        is a multiple of the all-ones matrix, which vanishes on the tangent space
        because the first row of J is all ones.

        Returns:
            Symmetric (n-c) x (n-c) matrix B^T H B with B orthonormal
        """
        H = CertifyService.lagrangian_hessian(p_star, lam, u, model)
        B = CertifyService.tangent_basis(p_star, model, rank_tol)
        R = B.T @ H @ B
        return (R + R.T) / 2.0

    @staticmethod
    def projected_gradient(
        p_star: Sequence[float],
        lam: Sequence[float],
        u: Sequence[int],
        model: Optional[ImplicitModel] = None,
    ) -> np.ndarray:
        """B^T (u/p - sum_k lambda_k grad g_k), zero at a critical point."""
        p = np.asarray(p_star, dtype=float)
        J = _ModelDerivatives(model, len(p)).jacobian(p)
        gradient = np.asarray(u, dtype=float) / p - J[1:].T @ np.asarray(lam, dtype=float)[1:]
        B = CertifyService.tangent_basis(p_star, model)
        return B.T @ gradient

    @staticmethod
    def classify_hessian(eigenvalues: np.ndarray, R: np.ndarray, definiteness: float) -> Status:
        scale = definiteness * (1.0 + (float(np.abs(R).max()) if R.size else 0.0))
        if np.all(eigenvalues < -scale):
            return "maximum"
        if np.any(eigenvalues > scale):
            return "not_maximum"
        return "inconclusive"

    @staticmethod
    def certify_point(
        p_star: Sequence[float],
        u: Sequence[int],
        model: ImplicitModel,
        tolerances: Optional[Tolerances] = None,
    ) -> PointCertificate:
        """Multipliers, restricted Hessian eigenvalues and status at one positive point."""
        tolerances = tolerances or Tolerances()
        p = np.asarray(p_star, dtype=float)
        derivatives = _ModelDerivatives(model, len(p))
        J_tilde = derivatives.jacobian(p) * p[None, :]
        lam = CertifyService.lagrange_multipliers(p, u, J_tilde, tolerances.multipliers)
        R = CertifyService.restricted_hessian(p, lam, u, model, tolerances.rank)
        eigenvalues = np.linalg.eigvalsh(R) if R.size else np.zeros(0)
        status = CertifyService.classify_hessian(eigenvalues, R, tolerances.definiteness)
        if status == "inconclusive":
            logger.warning(
                "hessian_inconclusive",
                point=[float(x) for x in p],
                eigenvalues=[float(e) for e in eigenvalues],
            )
        return PointCertificate(
            point=tuple(float(x) for x in p),
            status=status,
            log_likelihood=log_likelihood(p, u),
            multipliers=tuple(float(x) for x in lam),
            eigenvalues=tuple(float(e) for e in eigenvalues),
        )

    @staticmethod
    def find_local_maxima(
        model: ImplicitModel,
        u: Union[DataVector, Sequence[int]],
        route: Route = None,
        step4: Step4 = None,
        seed: int = 0,
        presaturate: bool = False,
        tolerances: Optional[Tolerances] = None,
        timer: Optional[StageTimer] = None,
    ) -> MaximizationResult:
        """
        Run the full pipeline and report every positive local maximum

        Returns:
            MaximizationResult; maxima sorted by log-likelihood, descending
        """
        tolerances = tolerances or Tolerances()
        timer = timer or StageTimer()
        u = DataVector.of(u).check_length(model.ring.ngens)

        likelihood = LikelihoodService.likelihood_ideal(
            model, u, route=route, step4=step4, seed=seed, presaturate=presaturate, timer=timer
        )
        with timer.stage("solve"):
            points = SolverService.solve_zero_dim(likelihood.ideal, tolerances, seed)
            classification = SolverService.classify_points(points, tolerances)

        certificates: List[PointCertificate] = []
        with timer.stage("certify"):
            for point in classification.positive:
                certificate = CertifyService.certify_point(
                    point.real_coords(), u.counts, model, tolerances
                )
                certificates.append(certificate)
                if certificate.status != "maximum":
                    logger.info(
                        "positive_point_not_maximum",
                        status=certificate.status,
                        log_likelihood=certificate.log_likelihood,
                    )

        maxima = [
            LocalMaximumReport(
                point=c.point,
                log_likelihood=c.log_likelihood,
                multipliers=c.multipliers,
                restricted_hessian_eigenvalues=c.eigenvalues,
            )
            for c in certificates
            if c.status == "maximum"
        ]
        maxima.sort(key=lambda m: m.log_likelihood, reverse=True)
        if maxima:
            maxima[0] = maxima[0].model_copy(update={"is_global_among_found": True})

        logger.info(
            "local_maxima",
            model=model.name,
            critical_points=len(points),
            positive=len(classification.positive),
            maxima=len(maxima),
        )
        return MaximizationResult(
            likelihood=likelihood,
            points=points,
            classification=classification,
            certificates=certificates,
            maxima=maxima,
        )
