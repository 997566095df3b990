"""
Linear coordinate changes between Fourier and probability coordinates.

Jukes-Cantor ideals are binomial in Fourier coordinates; ``CoordinateChange``
rewrites them in the probability coordinates the likelihood pipeline works in.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from ..algebra.ring import Polynomial, PolynomialRing, Rational, linear_substitute
from ..exceptions.custom import DimensionMismatchError

BINARY_LABELS: Tuple[str, ...] = tuple("".join(bits) for bits in product("01", repeat=3))
DNA_LABELS: Tuple[str, ...] = ("p123", "pdis", "p12", "p13", "p23")
DNA_FOURIER: Tuple[str, ...] = ("q000", "q011", "q101", "q110", "q111")

_THIRD = Fraction(1, 3)


class CoordinateChange(BaseModel):
    """
    Linear map from source variables to linear forms in target variables

    ``matrix[i][j]`` is the coefficient of ``target[j]`` in the form that
    replaces ``source[i]``.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    source: Tuple[str, ...]
    target: Tuple[str, ...]
    matrix: Tuple[Tuple[Fraction, ...], ...]

    @model_validator(mode="after")
    def _check_shape(self):
        if len(self.matrix) != len(self.source):
            raise DimensionMismatchError("coordinate change rows", len(self.source), len(self.matrix))
        for row in self.matrix:
            if len(row) != len(self.target):
                raise DimensionMismatchError("coordinate change columns", len(self.target), len(row))
        return self

    def source_ring(self) -> PolynomialRing:
        return PolynomialRing(self.source)

    def target_ring(self) -> PolynomialRing:
        return PolynomialRing(self.target)

    def apply(self, f: Polynomial, target: PolynomialRing = None) -> Polynomial:
        """Rewrite ``f`` (in the source variables) in the target variables."""
        source = self.source_ring()
        if f.ring != source.sympy:
            f = source.convert(f)
        return linear_substitute(f, self.matrix, target or self.target_ring())

    def apply_all(self, polys: Sequence[Polynomial], target: PolynomialRing = None) -> List[Polynomial]:
        target = target or self.target_ring()
        return [self.apply(f, target) for f in polys]

    def forms(self) -> List[Polynomial]:
        """The linear form substituted for each source variable."""
        ring = self.target_ring()
        return [ring.linear_form(row) for row in self.matrix]


def _matrix(rows: Sequence[Sequence[Rational]]) -> Tuple[Tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def binary_sign(fourier: str, state: str) -> int:
    """(-1) to the number of positions where both labels carry a 1."""
    overlap = sum(1 for a, b in zip(fourier, state) if a == b == "1")
    return -1 if overlap % 2 else 1


def binary_fourier() -> CoordinateChange:
    """
    Fourier transform of three binary leaves

    q_ijk is the signed sum of all eight p_abc with sign (-1)^(ia + jb + kc);
    q000 is the sum of all probabilities.
    """
    rows = [[binary_sign(f, s) for s in BINARY_LABELS] for f in BINARY_LABELS]
    return CoordinateChange(
        source=tuple(f"q{label}" for label in BINARY_LABELS),
        target=tuple(f"p{label}" for label in BINARY_LABELS),
        matrix=_matrix(rows),
    )


def dna_fourier() -> CoordinateChange:
    """
    Fourier coordinates of the three-leaf Jukes-Cantor DNA model

    Source order is (q000, q011, q101, q110, q111) and target order is
    (p123, pdis, p12, p13, p23). Writing theta_i = 1 - 3 pi_i for the
    probability of no substitution on edge i, each q factors into
    (theta_i - pi_i) and (theta_i + 3 pi_i) terms.
    """
    rows = [
        [1, 1, 1, 1, 1],
        [1, -_THIRD, -_THIRD, -_THIRD, 1],
        [1, -_THIRD, -_THIRD, 1, -_THIRD],
        [1, -_THIRD, 1, -_THIRD, -_THIRD],
        [1, _THIRD, -_THIRD, -_THIRD, -_THIRD],
    ]
    return CoordinateChange(source=DNA_FOURIER, target=DNA_LABELS, matrix=_matrix(rows))
