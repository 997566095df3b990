"""
Floating-point evaluation of exact polynomials and small dense linear algebra
"""

from __future__ import annotations

from functools import cached_property
from typing import List, Sequence

import numpy as np
from scipy.linalg import null_space

from ..algebra.ring import Polynomial, coefficient_l1_norm, to_fraction


class CompiledPolynomials:
    """
    A list of polynomials stored as one exponent matrix and a coefficient
    vector, for fast evaluation at complex points.
    """

    def __init__(self, polys: Sequence[Polynomial], nvars: int):
        self.polys = list(polys)
        self.nvars = nvars
        exponents: List[Sequence[int]] = []
        coefficients: List[float] = []
        owners: List[int] = []
        for index, f in enumerate(self.polys):
            for monom, coeff in f.iterterms():
                exponents.append(monom)
                coefficients.append(float(to_fraction(coeff)))
                owners.append(index)
        self.exponents = np.asarray(exponents, dtype=np.int64).reshape(-1, nvars)
        self.coefficients = np.asarray(coefficients, dtype=float)
        self.owners = np.asarray(owners, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.polys)

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        out = np.zeros(len(self.polys), dtype=complex)
        if not len(self.coefficients):
            return out
        terms = self.coefficients * np.prod(z[None, :] ** self.exponents, axis=1)
        np.add.at(out, self.owners, terms)
        return out

    @cached_property
    def _derivatives(self) -> "CompiledPolynomials":
        if not self.polys:
            return CompiledPolynomials([], self.nvars)
        gens = self.polys[0].ring.gens
        return CompiledPolynomials([f.diff(x) for f in self.polys for x in gens], self.nvars)

    def jacobian(self, z: np.ndarray) -> np.ndarray:
        """Rows are gradients of the polynomials."""
        return self._derivatives.evaluate(z).reshape(len(self.polys), self.nvars)

    def hessians(self, z: np.ndarray) -> np.ndarray:
        """Array of shape (len, nvars, nvars)."""
        second = self._derivatives.jacobian(z)
        return second.reshape(len(self.polys), self.nvars, self.nvars)

    @cached_property
    def l1_norms(self) -> np.ndarray:
        return np.asarray([coefficient_l1_norm(f) for f in self.polys], dtype=float)

    def scaled_residuals(self, z: np.ndarray) -> np.ndarray:
        """|f(z)| / (1 + ||f||_1) for every polynomial."""
        return np.abs(self.evaluate(z)) / (1.0 + self.l1_norms)


def compile_polynomials(polys: Sequence[Polynomial]) -> CompiledPolynomials:
    nvars = polys[0].ring.ngens if polys else 0
    return CompiledPolynomials(polys, nvars)


def orthonormal_null_space(A: np.ndarray, rank_tol: float) -> np.ndarray:
    """Orthonormal basis (as columns) of the null space of a real matrix."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    return null_space(A, rcond=rank_tol)
