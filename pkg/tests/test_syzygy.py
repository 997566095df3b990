import numpy as np
import pytest

from likelihood_station.algebra.groebner import Ideal
from likelihood_station.algebra.ring import PolynomialRing, parse_poly
from likelihood_station.algebra.syzygy import (
    KernelModule,
    PolyMatrix,
    kernel_of_matrix,
    minimal_generators,
    module_contains,
    presaturate_kernel,
)
from likelihood_station.exceptions.custom import DimensionMismatchError


@pytest.fixture(scope="module")
def xyz():
    return PolynomialRing(("x", "y", "z"))


def vec(ring, *texts):
    return tuple(parse_poly(t, ring) for t in texts)


def matrix(ring, rows):
    return PolyMatrix(ring, [[parse_poly(t, ring) for t in row] for row in rows])


def test_matrix_shape_checks(xyz):
    with pytest.raises(DimensionMismatchError):
        matrix(xyz, [["x", "y"], ["z"]])
    A = matrix(xyz, [["x", "y"]])
    assert A.shape == (1, 2)
    with pytest.raises(DimensionMismatchError):
        A.apply(vec(xyz, "1"))
    with pytest.raises(DimensionMismatchError):
        A.det()
    assert A.transpose().shape == (2, 1)


def test_matrix_evaluate(xyz):
    A = matrix(xyz, [["x", "y*z"], ["1", "x - z"]])
    values = A.evaluate([2, 3, 5])
    assert np.allclose(values, [[2, 15], [1, -3]])


def test_kernel_of_row_vector(xyz):
    """Test the Koszul syzygy of (x, y)"""
    A = matrix(xyz, [["x", "y"]])
    M = kernel_of_matrix(A)
    assert M.verify(A)
    assert module_contains(M, vec(xyz, "y", "-x"))
    assert not module_contains(M, vec(xyz, "1", "0"))


def test_kernel_of_three_variables(xyz):
    A = matrix(xyz, [["x", "y", "z"]])
    M = kernel_of_matrix(A)
    assert M.verify(A)
    assert len(M) >= 3
    for v in (vec(xyz, "y", "-x", "0"), vec(xyz, "z", "0", "-x"), vec(xyz, "0", "z", "-y")):
        assert module_contains(M, v)


def test_kernel_modulo_ideal(xyz):
    """Test that (1, 0) becomes a syzygy of (x, y) once x is zero"""
    A = matrix(xyz, [["x", "y"]])
    P = Ideal([xyz.var("x")], xyz)
    M = kernel_of_matrix(A, modulo=P)
    assert M.verify(A)
    assert module_contains(M, vec(xyz, "1", "0"))
    assert not module_contains(M, vec(xyz, "0", "1"))


def test_pairing_with_weights(xyz):
    M = kernel_of_matrix(matrix(xyz, [["x", "y"]]))
    paired = M.pairing([2, 3], 2)
    assert Ideal(paired, xyz).same_as(Ideal([parse_poly("2*y - 3*x", xyz)], xyz))


def test_minimal_generators_drops_multiples(xyz):
    M = KernelModule(xyz, 2, [vec(xyz, "x*y", "-x^2"), vec(xyz, "y", "-x")])
    minimal = minimal_generators(M)
    assert minimal.generators == [vec(xyz, "y", "-x")]


def test_presaturation_removes_common_factor(xyz):
    M = KernelModule(xyz, 2, [vec(xyz, "x*y", "-x^2")])
    target = vec(xyz, "y", "-x")
    assert not module_contains(M, target)
    saturated = presaturate_kernel(M, [xyz.var("x")])
    assert module_contains(saturated, target)
    assert module_contains(saturated, M.generators[0])
