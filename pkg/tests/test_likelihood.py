from fractions import Fraction

import numpy as np
import pytest

from likelihood_station.algebra.groebner import Ideal, normal_form, quotient_saturate
from likelihood_station.algebra.ring import linear_substitute, parse_poly
from likelihood_station.exceptions.custom import (
    DimensionMismatchError,
    InvalidDataError,
    NonHomogeneousGeneratorError,
    UsageError,
)
from likelihood_station.models import catalog_names, get_model
from likelihood_station.schemas.validation import DataVector
from likelihood_station.services.likelihood_service import ImplicitModel, LikelihoodService
from likelihood_station.utils.timing import StageTimer

TIER_MARKS = {"fast": (), "core": (pytest.mark.core,), "extended": (pytest.mark.extended,)}


def _documented_models():
    params = []
    for name in catalog_names():
        spec = get_model(name)
        if spec.implicit is None or spec.documented_ml_degree is None:
            continue
        params.append(pytest.param(name, marks=TIER_MARKS[spec.tier], id=name))
    return params


def test_model_validation(plane):
    with pytest.raises(NonHomogeneousGeneratorError) as info:
        ImplicitModel.from_generators(plane, [parse_poly("p0^2 - p1", plane)])
    assert info.value.exit_code == 2
    with pytest.raises(UsageError):
        ImplicitModel.from_generators(plane, [])


def test_codimension_is_computed(circle, plane):
    assert circle.codim == 1
    assert circle.is_complete_intersection
    assert circle.degrees == (2,)
    assert circle.chart() == parse_poly("p0 + p1 + p2 - 1", plane)


def test_augmented_jacobian_shape(circle, plane):
    J, J_tilde = LikelihoodService.build_augmented_jacobian(circle)
    assert J.shape == (2, 3)
    assert J.row(0) == [plane.one] * 3
    assert J_tilde.entries[0] == list(plane.gens)


def test_route_selection(circle):
    assert LikelihoodService.select_route(circle, "auto") == "minors"
    independence = get_model("minors2x2_3x3").implicit
    assert LikelihoodService.select_route(independence, "auto") == "minors"
    rank_two = get_model("minors3x3_3x4").implicit
    assert LikelihoodService.select_route(rank_two, "auto") == "syzygy"
    with pytest.raises(UsageError):
        LikelihoodService.select_route(circle, "guess")


def test_hardy_weinberg_has_rational_estimate(hardy_weinberg, plane):
    """Test that the likelihood ideal is the closed-form estimate of the allele frequency"""
    result = LikelihoodService.likelihood_ideal(hardy_weinberg, [10, 20, 30])
    assert result.colength == 1
    assert result.dimension == 0
    expected = Ideal(
        [
            plane.var("p0") - plane.constant(Fraction(1, 9)),
            plane.var("p1") - plane.constant(Fraction(4, 9)),
            plane.var("p2") - plane.constant(Fraction(4, 9)),
        ],
        plane,
    )
    assert result.ideal.same_as(expected)


def test_circle_likelihood_ideal_contains_cubic(circle, plane):
    """Test the degree-three relation every critical point of the circle satisfies"""
    result = LikelihoodService.likelihood_ideal(circle, [2, 3, 5])
    assert result.colength == 3
    cubic = parse_poly(
        "5*p0^2*p1 - 3*p0^2*p2 - 5*p0*p1^2 + 3*p0*p2^2 + 2*p1^2*p2 - 2*p1*p2^2", plane
    )
    assert not normal_form(cubic, result.ideal)
    assert not normal_form(circle.generators[0], result.ideal)


@pytest.mark.parametrize("route", ["minors", "syzygy"])
@pytest.mark.parametrize("step4", ["full", "prime"])
def test_routes_agree(circle, route, step4):
    reference = LikelihoodService.likelihood_ideal(circle, [2, 3, 5], route="minors", step4="full")
    result = LikelihoodService.likelihood_ideal(
        circle, [2, 3, 5], route=route, step4=step4, seed=11
    )
    assert result.route == route
    assert result.colength == reference.colength
    assert result.ideal.same_as(reference.ideal)


def test_presaturated_kernel_agrees(hw_cousin):
    plain = LikelihoodService.likelihood_ideal(hw_cousin, [3, 7, 4], route="syzygy")
    presaturated = LikelihoodService.likelihood_ideal(hw_cousin, [3, 7, 4], presaturate=True)
    assert presaturated.route == "syzygy"
    assert presaturated.ideal.same_as(plain.ideal)


def test_likelihood_ideal_input_errors(circle):
    with pytest.raises(DimensionMismatchError):
        LikelihoodService.likelihood_ideal(circle, [1, 2])
    with pytest.raises(InvalidDataError):
        LikelihoodService.likelihood_ideal(circle, [1, -2, 3])
    with pytest.raises(UsageError):
        LikelihoodService.likelihood_ideal(circle, [1, 2, 3], step4="half")


def test_stage_timings_are_recorded(hw_cousin):
    timer = StageTimer()
    LikelihoodService.likelihood_ideal(hw_cousin, [3, 7, 4], timer=timer)
    assert {"pre_ideal", "singular_locus", "saturate", "colength"} <= set(timer.timings)


@pytest.mark.parametrize("seed", [1, 2])
def test_circle_ml_degree(circle, seed):
    result = LikelihoodService.ml_degree(circle, seed=seed)
    assert result.degree == 3
    assert result.certified
    assert len(result.draws) == 2
    assert result.colengths == [3, 3]


def test_ml_degree_is_deterministic(hw_cousin):
    first = LikelihoodService.ml_degree(hw_cousin, seed=5)
    second = LikelihoodService.ml_degree(hw_cousin, seed=5)
    assert first == second
    assert first.degree == 2


@pytest.mark.parametrize("name", _documented_models())
def test_catalog_ml_degrees(name):
    spec = get_model(name)
    result = LikelihoodService.ml_degree(spec.implicit, seed=7)
    assert result.certified
    assert result.degree == spec.documented_ml_degree


def test_torus_generators_drive_the_jacobian():
    model = get_model("minors2x2_3x3").implicit
    assert model.torus_generators == (0, 1, 3, 4)
    J, _ = LikelihoodService.build_augmented_jacobian(model)
    assert J.shape == (5, 9)
    p00 = model.ring.var("p00")
    local = Ideal(list(model.jacobian_generators), model.ring)
    assert quotient_saturate(local, p00, "infinity").same_as(model.ideal)


def test_torus_generators_validation(plane):
    generators = [parse_poly("p0*p1 - p2^2", plane), parse_poly("p0*p2 - p1^2", plane)]
    with pytest.raises(UsageError):
        ImplicitModel.from_generators(plane, generators, codim=1, torus_generators=[0, 1])
    with pytest.raises(UsageError):
        ImplicitModel.from_generators(plane, generators, codim=1, torus_generators=[5])


@pytest.mark.parametrize("route", ["minors", "syzygy"])
def test_colength_invariant_under_coordinate_permutation(plane, route):
    generator = parse_poly("p0^2 + p1^2 - 3*p2^2 + p0*p1 - p1*p2", plane)
    permutation = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    original = ImplicitModel.from_generators(plane, [generator], name="conic")
    permuted = ImplicitModel.from_generators(
        plane, [linear_substitute(generator, permutation, plane)], name="permuted"
    )
    data = [4, 9, 6]
    moved = [data[1], data[2], data[0]]
    first = LikelihoodService.likelihood_ideal(original, data, route=route)
    second = LikelihoodService.likelihood_ideal(permuted, moved, route=route)
    assert first.colength == second.colength


@pytest.mark.core
def test_prime_saturation_matches_full_on_coin_model():
    model = get_model("coin3x3").implicit
    data = [51, 18, 73, 25, 75]
    full = LikelihoodService.likelihood_ideal(model, data, step4="full")
    prime = LikelihoodService.likelihood_ideal(model, data, step4="prime", seed=3)
    assert full.colength == prime.colength == 12
    assert prime.ideal.same_as(full.ideal)


@pytest.mark.core
@pytest.mark.parametrize("name", ["coin3x3", "jc_fork", "jc_dna"])
def test_routes_agree_on_catalog_models(name):
    model = get_model(name).implicit
    data = DataVector.random(model.ring.ngens, np.random.default_rng(17))
    minors = LikelihoodService.likelihood_ideal(model, data, route="minors")
    syzygy = LikelihoodService.likelihood_ideal(model, data, route="syzygy")
    assert minors.colength == syzygy.colength == get_model(name).documented_ml_degree
    assert minors.ideal.same_as(syzygy.ideal)
