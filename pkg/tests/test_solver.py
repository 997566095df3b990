import math

import numpy as np
import pytest

from likelihood_station.algebra.groebner import Ideal, standard_monomials
from likelihood_station.algebra.ring import PolynomialRing, parse_poly
from likelihood_station.exceptions.custom import PositiveDimensionError, UnitIdealError
from likelihood_station.schemas.validation import Tolerances
from likelihood_station.services.likelihood_service import LikelihoodService
from likelihood_station.services.solver_service import CriticalPoint, SolverService


@pytest.fixture(scope="module")
def xy():
    return PolynomialRing(("x", "y"))


def ideal(ring, *texts):
    return Ideal([parse_poly(t, ring) for t in texts], ring)


def test_real_points_sorted(xy):
    points = SolverService.solve_zero_dim(ideal(xy, "x^2 - 2", "y - x"))
    assert len(points) == 2
    root = math.sqrt(2)
    assert np.allclose(points[0].real_coords(), [-root, -root])
    assert np.allclose(points[1].real_coords(), [root, root])
    assert all(p.is_real for p in points)
    assert [p.is_positive for p in points] == [False, True]


def test_complex_points_come_in_pairs(xy):
    points = SolverService.solve_zero_dim(ideal(xy, "x^2 + 1", "y - 2"))
    assert len(points) == 2
    assert not any(p.is_real for p in points)
    assert SolverService.conjugates_paired(points)
    for p in points:
        assert abs(p.coords[0] ** 2 + 1) < 1e-10
        assert abs(p.coords[1] - 2) < 1e-10


def test_double_root_carries_multiplicity(xy):
    points = SolverService.solve_zero_dim(ideal(xy, "x^2", "y"))
    assert len(points) == 1
    assert points[0].multiplicity == 2
    assert np.allclose(points[0].as_array(), [0, 0], atol=1e-8)
    assert not points[0].is_positive


def test_multiplication_matrices_commute(xy):
    I = ideal(xy, "x^2 - 3*y", "y^2 - x - 1")
    basis = standard_monomials(I)
    Mx, My = SolverService.multiplication_matrices(I, basis)
    assert Mx.shape == (len(basis), len(basis))
    assert np.allclose(Mx @ My, My @ Mx)


def test_solve_rejects_non_finite_sets(xy):
    with pytest.raises(UnitIdealError):
        SolverService.solve_zero_dim(ideal(xy, "x", "x - 1"))
    with pytest.raises(PositiveDimensionError):
        SolverService.solve_zero_dim(ideal(xy, "x*y"))


def test_circle_critical_points(circle):
    """Test residuals and counts of the solutions of a circle likelihood ideal"""
    likelihood = LikelihoodService.likelihood_ideal(circle, [2, 3, 5])
    tolerances = Tolerances()
    points = SolverService.solve_zero_dim(likelihood.ideal, tolerances, seed=3)
    assert sum(p.multiplicity for p in points) == likelihood.colength == 3
    assert all(p.residual <= tolerances.residual for p in points)
    assert SolverService.conjugates_paired(points)
    for p in points:
        assert abs(sum(p.coords) - 1) < 1e-9


def test_solutions_do_not_depend_on_seed(circle):
    likelihood = LikelihoodService.likelihood_ideal(circle, [2, 3, 5])
    first = SolverService.solve_zero_dim(likelihood.ideal, seed=1)
    second = SolverService.solve_zero_dim(likelihood.ideal, seed=2)
    assert len(first) == len(second)
    for a, b in zip(first, second):
        assert np.allclose(a.as_array(), b.as_array(), atol=1e-9)


def test_classify_points():
    points = [
        CriticalPoint(coords=(0.5, 0.5), residual=0.0, is_real=True, is_positive=True),
        CriticalPoint(coords=(-1.0, 2.0), residual=0.0, is_real=True, is_positive=False),
        CriticalPoint(coords=(1 + 1j, -1j), residual=0.0, is_real=False, is_positive=False),
        CriticalPoint(coords=(1 - 1j, 1j), residual=0.0, is_real=False, is_positive=False),
    ]
    classes = SolverService.classify_points(points)
    assert len(classes.positive) == 1
    assert len(classes.real_nonpositive) == 1
    assert len(classes.complex_points) == 2
    assert classes.total == 4
    assert classes.real_count == 2
    assert classes.borderline == 0
