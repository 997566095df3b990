import pytest

from likelihood_station.algebra.groebner import (
    Ideal,
    colength_zero_dim,
    dimension_codim,
    eliminate,
    groebner_basis,
    is_zero_dimensional,
    normal_form,
    quotient_saturate,
    s_polynomials_reduce,
    saturate_by_factors,
    saturate_by_ideal,
    saturation_elements,
    standard_monomials,
)
from likelihood_station.algebra.ring import PolynomialRing, parse_poly
from likelihood_station.exceptions.custom import (
    PositiveDimensionError,
    RingMismatchError,
    UnitIdealError,
    UsageError,
)


@pytest.fixture(scope="module")
def xy():
    return PolynomialRing(("x", "y"))


@pytest.fixture(scope="module")
def xyz():
    return PolynomialRing(("x", "y", "z"))


def ideal(ring, *texts):
    return Ideal([parse_poly(t, ring) for t in texts], ring)


def test_reduced_basis_and_membership(xy):
    I = ideal(xy, "x*y - 1", "x - 1")
    assert set(I.gb) == {parse_poly("x - 1", xy), parse_poly("y - 1", xy)}
    assert I.contains(parse_poly("y - 1", xy))
    assert not I.contains(parse_poly("y", xy))
    assert s_polynomials_reduce(I)


def test_buchberger_criterion_on_nontrivial_basis(xyz):
    """Test that every S-polynomial of a computed basis reduces to zero"""
    I = ideal(xyz, "x^2 + y*z - 2", "x*y*z - 1", "x + y^2 + z^3")
    assert s_polynomials_reduce(I)
    for g in I.generators:
        assert not normal_form(g, I)


def test_basis_in_another_order_spans_same_ideal(xy):
    I = ideal(xy, "x^2 + y", "x*y - 1")
    lex = groebner_basis(I, "lex")
    assert lex.ring != I.ring
    assert s_polynomials_reduce(lex)
    assert lex.same_as(I)


def test_same_as_ignores_generator_choice(xy):
    a = ideal(xy, "x - y", "y^2")
    b = ideal(xy, "x^2", "x - y")
    assert a.same_as(b)
    assert not a.same_as(ideal(xy, "x", "y"))


def test_empty_ideal_needs_ring(xy):
    with pytest.raises(UsageError):
        Ideal([])
    assert Ideal([], xy).is_zero()


def test_normal_form_rejects_foreign_variables(xy, plane):
    with pytest.raises(RingMismatchError):
        normal_form(plane.var("p0"), ideal(xy, "x"))


def test_eliminate_twisted_cubic_projection():
    """Test eliminating the parameter of the cuspidal cubic t -> (t^2, t^3)"""
    ring = PolynomialRing(("t", "x", "y"))
    I = ideal(ring, "x - t^2", "y - t^3")
    J = eliminate(I, ["x", "y"])
    assert J.ring.names == ("x", "y")
    assert len(J.gb) == 1
    assert J.contains(parse_poly("x^3 - y^2", J.ring))


def test_quotient_once_and_saturation(xy):
    I = ideal(xy, "x^2*y")
    x = xy.var("x")
    assert quotient_saturate(I, x, "once").same_as(ideal(xy, "x*y"))
    assert quotient_saturate(I, x, "infinity").same_as(ideal(xy, "y"))
    assert quotient_saturate(I, xy.one) is I


@pytest.mark.parametrize(
    "texts, divisor",
    [
        (("x^2*y", "x*y^3 - z^2"), "y"),
        (("x*z - y^2", "x^3*y", "z^4"), "x"),
        (("x^2 - y*z", "x*y^2*z"), "x + z"),
    ],
)
def test_quotient_chain(xyz, texts, divisor):
    """Test I in (I : f) in (I : f^inf)"""
    I = ideal(xyz, *texts)
    f = parse_poly(divisor, xyz)
    once = quotient_saturate(I, f, "once")
    saturated = quotient_saturate(I, f, "infinity")
    assert all(once.contains(g) for g in I.generators)
    assert all(saturated.contains(g) for g in once.generators)
    assert all(not normal_form(f * g, I) for g in once.generators)


def test_quotient_errors(xy):
    I = ideal(xy, "x*y")
    with pytest.raises(UsageError):
        quotient_saturate(I, xy.zero)
    with pytest.raises(UsageError):
        quotient_saturate(I, xy.var("x"), "twice")


def test_saturate_by_factors_counts_changes(xy):
    I = ideal(xy, "x^2*y", "x*y^2")
    result, changed = saturate_by_factors(I, [xy.var("y"), xy.var("x")])
    assert result.is_unit()
    assert changed == 2


def test_saturation_fixpoint(xyz):
    """Test that saturating a saturated ideal again changes nothing"""
    I = ideal(xyz, "x*z - y^2", "x^3*y")
    once, _ = saturate_by_factors(I, [xyz.var("x")])
    twice, changed = saturate_by_factors(once, [xyz.var("x")])
    assert changed == 0
    assert twice.same_as(once)


def test_ideal_saturation_methods_differ_on_principal_ideal(xy):
    I = ideal(xy, "x*y")
    generators = [xy.var("x"), xy.var("y")]
    combined, _ = saturate_by_ideal(I, generators, method="combination", seed=3)
    assert combined.same_as(I)
    sequential, _ = saturate_by_ideal(I, generators, method="sequential")
    assert sequential.is_unit()


def test_saturation_elements(xy):
    I = ideal(xy, "x", "y")
    assert saturation_elements(I, [xy.var("x")]) is None
    result, _ = saturate_by_ideal(I, [xy.var("x")])
    assert result.is_unit()
    assert saturation_elements(I, [xy.zero]) == []
    with pytest.raises(UsageError):
        saturation_elements(I, [xy.var("x")], method="parallel")


def test_dimension_codim(xyz):
    assert dimension_codim(ideal(xyz, "x*y")) == (2, 1)
    assert dimension_codim(ideal(xyz, "x", "y*z")) == (1, 2)
    assert dimension_codim(Ideal([], xyz)) == (3, 0)
    with pytest.raises(UnitIdealError):
        dimension_codim(ideal(xyz, "x", "x - 1"))


def test_colength(xy):
    I = ideal(xy, "x^2", "y^2")
    assert is_zero_dimensional(I)
    assert standard_monomials(I) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert colength_zero_dim(I) == 4
    assert colength_zero_dim(ideal(xy, "x^2 - 1", "y - x")) == 2


def test_colength_needs_zero_dimension(xy):
    with pytest.raises(PositiveDimensionError):
        colength_zero_dim(ideal(xy, "x*y"))
    with pytest.raises(UnitIdealError):
        standard_monomials(ideal(xy, "1"))
