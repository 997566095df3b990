import random
from fractions import Fraction

import pytest

from likelihood_station.algebra.ring import (
    PolynomialRing,
    content_free,
    determinant,
    differentiate,
    evaluate_point,
    format_poly,
    is_homogeneous,
    linear_substitute,
    minors,
    parse_poly,
    poly_arith,
    total_degree,
)
from likelihood_station.exceptions.custom import (
    DimensionMismatchError,
    PolynomialSyntaxError,
    RingMismatchError,
    UnknownVariableError,
    UsageError,
)


def test_parse_and_format(plane):
    """Test printing in descending grevlex order"""
    f = parse_poly("p1^2 - 4*p0*p2", plane)
    assert format_poly(f) == "p1^2 - 4*p0*p2"
    assert parse_poly(format_poly(f), plane) == f


def test_format_rationals(plane):
    f = parse_poly("3/4*p0 - 1/2", plane)
    assert format_poly(f) == "3/4*p0 - 1/2"
    assert parse_poly("2/4*p0", plane) == parse_poly("1/2*p0", plane)


def test_unary_minus_binds_looser_than_power(plane):
    assert parse_poly("-p0^2", plane) == -(plane.var("p0") ** 2)
    assert parse_poly("(p0 + p1)^2", plane) == parse_poly("p0^2 + 2*p0*p1 + p1^2", plane)


def test_syntax_error_offset(plane):
    with pytest.raises(PolynomialSyntaxError) as info:
        parse_poly("p0 + * p1", plane)
    assert info.value.offset == 5
    assert info.value.exit_code == 2


def test_no_implicit_multiplication(plane):
    with pytest.raises(PolynomialSyntaxError) as info:
        parse_poly("2 p0", plane)
    assert info.value.offset == 2


def test_negative_exponent_rejected(plane):
    with pytest.raises(PolynomialSyntaxError):
        parse_poly("p0^-1", plane)


def test_offset_counts_bytes(plane):
    with pytest.raises(PolynomialSyntaxError) as info:
        parse_poly("p0 + é", plane)
    assert info.value.offset == 5


def test_unknown_variable(plane):
    with pytest.raises(UnknownVariableError) as info:
        parse_poly("p0 + q1", plane)
    assert info.value.name == "q1"


def test_ring_validation():
    with pytest.raises(PolynomialSyntaxError):
        PolynomialRing(("p0", "p0"))
    with pytest.raises(PolynomialSyntaxError):
        PolynomialRing(("0p",))
    with pytest.raises(DimensionMismatchError):
        PolynomialRing(())


def test_ring_axioms(plane):
    """Test commutativity, associativity and distributivity on sample polynomials"""
    samples = [
        parse_poly(text, plane)
        for text in ("p0 + 1", "p1^2 - 3/5*p2", "p0*p1*p2 - 7", "2*p2^3 + p0")
    ]
    for a in samples:
        for b in samples:
            assert poly_arith("add", a, b) == poly_arith("add", b, a)
            assert poly_arith("mul", a, b) == poly_arith("mul", b, a)
            assert poly_arith("sub", a, a) == plane.zero
            for c in samples:
                assert (a * b) * c == a * (b * c)
                assert a * (b + c) == a * b + a * c


def test_arith_errors(plane):
    other = PolynomialRing(("x", "y"))
    with pytest.raises(RingMismatchError):
        poly_arith("add", plane.var("p0"), other.var("x"))
    with pytest.raises(UsageError):
        poly_arith("pow", plane.var("p0"), -1)
    assert poly_arith("pow", plane.var("p0") + 1, 2) == parse_poly("p0^2 + 2*p0 + 1", plane)


def test_degree_and_homogeneity(plane):
    f = parse_poly("p0^2*p1 - p2^3", plane)
    assert total_degree(f) == 3
    assert is_homogeneous(f)
    assert not is_homogeneous(f + plane.var("p0"))


def test_differentiate(plane):
    f = parse_poly("p0^2*p1 - p2^3", plane)
    assert differentiate(f, "p0") == parse_poly("2*p0*p1", plane)
    assert differentiate(f, "p2") == parse_poly("-3*p2^2", plane)
    with pytest.raises(UnknownVariableError):
        differentiate(f, "t")


def test_linear_substitute():
    source = PolynomialRing(("q0", "q1"))
    target = PolynomialRing(("x", "y"))
    f = parse_poly("q0*q1", source)
    g = linear_substitute(f, [[1, 1], [1, -1]], target)
    assert g == parse_poly("x^2 - y^2", target)
    with pytest.raises(DimensionMismatchError):
        linear_substitute(f, [[1, 1]], target)


def test_evaluate_point_exact_and_float(plane):
    f = parse_poly("p1^2 - 4*p0*p2", plane)
    assert evaluate_point(f, [1, 2, 1]) == Fraction(0)
    assert evaluate_point(f, [Fraction(1, 2), 1, Fraction(1, 3)]) == Fraction(1, 3)
    value = evaluate_point(f, [0.25, 0.5, 0.25])
    assert isinstance(value, complex)
    assert abs(value) < 1e-15


def test_convert_by_names(plane):
    reordered = PolynomialRing(("p2", "p1", "p0"))
    f = parse_poly("p0 + 2*p2", plane)
    g = reordered.convert(f)
    assert g == parse_poly("p0 + 2*p2", reordered)
    with pytest.raises(RingMismatchError):
        PolynomialRing(("p0", "p1")).convert(f)


def test_determinant_and_minors(plane):
    p0, p1, p2 = plane.gens
    assert determinant([[p0, p1], [p1, p2]]) == p0 * p2 - p1**2
    rows = [[p0, p1, p2], [p1, p2, p0]]
    assert len(minors(rows, 2)) == 3


def test_content_free(plane):
    f = parse_poly("-3/2*p0 + 9/4*p1", plane)
    assert content_free(f) == parse_poly("2*p0 - 3*p1", plane)


def _random_polynomials(ring, count, seed):
    rng = random.Random(seed)
    polys = []
    for _ in range(count):
        terms = {}
        for _ in range(rng.randint(1, 6)):
            monom = tuple(rng.randint(0, 3) for _ in range(ring.ngens))
            terms[monom] = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5))
        polys.append(ring.from_terms(terms))
    return polys


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_format_parse_round_trip_on_random_polynomials(plane, seed):
    for f in _random_polynomials(plane, 20, seed):
        assert parse_poly(format_poly(f), plane) == f


@pytest.mark.parametrize("seed", [3, 4])
def test_differentiate_product_rule(plane, seed):
    polys = _random_polynomials(plane, 6, seed)
    for f, g in zip(polys[::2], polys[1::2]):
        for var in plane.names:
            left = differentiate(f * g, var)
            right = differentiate(f, var) * g + f * differentiate(g, var)
            assert left == right


def test_linear_substitute_inverse_is_identity(plane):
    forward = [[1, 1, 0], [0, 1, 0], [0, 3, 2]]
    inverse = [[1, -1, 0], [0, 1, 0], [0, Fraction(-3, 2), Fraction(1, 2)]]
    for f in _random_polynomials(plane, 8, seed=5):
        there = linear_substitute(f, forward, plane)
        assert linear_substitute(there, inverse, plane) == f
