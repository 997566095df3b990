"""
Catalog of named models, seeded scalings and generic complete intersections
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra.ring import Polynomial, PolynomialRing, determinant, linear_substitute, minors, parse_poly
from ..config import settings
from ..exceptions.custom import UnknownModelError
from ..logging_config import get_logger
from ..services.bound_service import BoundService, CIShape
from ..services.likelihood_service import ImplicitModel
from ..services.parametric_service import ParametricModel
from .fourier import CoordinateChange, binary_fourier, dna_fourier
from .spec import ModelSpec

logger = get_logger(__name__)

# ML degrees after replacing every coordinate p_i by alpha_i * p_i with generic alpha
SCALED_ML_DEGREES: Dict[str, int] = {
    "det3x3": 39,
    "minors2x2_3x3": 6,
    "sym3x3_det": 16,
    "sym3x3_minors": 4,
    "minors3x3_3x4": 164,
    "coin3x3": 16,
    "coin3x4": 54,
    "grass24": 6,
    "grass25": 52,
}

BINARY_SPLITS = "{0|123}, {1|023}, {2|013}, {3|012}"


def _ring(names: Sequence[str]) -> PolynomialRing:
    return PolynomialRing(tuple(names))


def _parse_all(texts: Sequence[str], ring: PolynomialRing) -> List[Polynomial]:
    return [parse_poly(text, ring) for text in texts]


def _matrix(rows: Sequence[Sequence[str]], ring: PolynomialRing) -> List[List[Polynomial]]:
    return [[parse_poly(entry, ring) for entry in row] for row in rows]


def _implicit(
    name: str,
    ring: PolynomialRing,
    generators: Sequence[Polynomial],
    codim: Optional[int],
    torus_generators: Optional[Sequence[int]] = None,
) -> ImplicitModel:
    return ImplicitModel.from_generators(
        ring, list(generators), name=name, codim=codim, torus_generators=torus_generators
    )


def _through(generators: Sequence[Polynomial], ring: PolynomialRing, var: str) -> List[int]:
    """Indices of the generators with a term divisible by ``var``."""
    k = ring.names.index(var)
    return [i for i, g in enumerate(generators) if any(m[k] for m in g.monoms())]


def _distinct(polys: Sequence[Polynomial]) -> List[Polynomial]:
    kept: List[Polynomial] = []
    for f in polys:
        if f not in kept and -f not in kept:
            kept.append(f)
    return kept


def _flat(grid: Sequence[Sequence[str]]) -> List[str]:
    return [name for row in grid for name in row]


def _grid(rows: int, cols: int) -> List[List[str]]:
    return [[f"p{i}{j}" for j in range(cols)] for i in range(rows)]


# --------------------------------------------------------------------------
# Determinantal models
# --------------------------------------------------------------------------


def _coin3x3() -> ModelSpec:
    ring = _ring([f"p{i}" for i in range(5)])
    P = _matrix(
        [
            ["12*p0", "3*p1", "2*p2"],
            ["3*p1", "2*p2", "3*p3"],
            ["2*p2", "3*p3", "12*p4"],
        ],
        ring,
    )
    return ModelSpec(
        name="coin3x3",
        kind="implicit",
        implicit=_implicit("coin3x3", ring, [determinant(P)], 1),
        documented_ml_degree=12,
        provenance="mixture of two coins tossed four times; hypersurface det(P) = 0",
        tier="core",
        notes="Twelve critical points, up to six positive and three local maxima.",
    )


def _coin3x4() -> ModelSpec:
    ring = _ring([f"p{i}" for i in range(6)])
    P = _matrix(
        [
            ["10*p0", "2*p1", "p2", "p3"],
            ["2*p1", "p2", "p3", "2*p4"],
            ["p2", "p3", "2*p4", "10*p5"],
        ],
        ring,
    )
    return ModelSpec(
        name="coin3x4",
        kind="implicit",
        implicit=_implicit("coin3x4", ring, minors(P, 3), 2),
        documented_ml_degree=39,
        provenance="mixture of two coins tossed five times; 3x3 minors",
        tier="extended",
    )


def _det3x3() -> ModelSpec:
    ring = _ring(_flat(_grid(3, 3)))
    P = _matrix(_grid(3, 3), ring)
    return ModelSpec(
        name="det3x3",
        kind="implicit",
        implicit=_implicit("det3x3", ring, [determinant(P)], 1),
        documented_ml_degree=10,
        provenance="mixture of two pairs of independent ternary variables",
        tier="core",
    )


def _minors2x2_3x3() -> ModelSpec:
    ring = _ring(_flat(_grid(3, 3)))
    P = _matrix(_grid(3, 3), ring)
    generators = minors(P, 2)
    return ModelSpec(
        name="minors2x2_3x3",
        kind="implicit",
        implicit=_implicit("minors2x2_3x3", ring, generators, 4, _through(generators, ring, "p00")),
        documented_ml_degree=1,
        provenance="independence of two ternary variables",
        tier="core",
        notes=(
            "The unique critical point is the rank-one table with the data margins. "
            "Away from the coordinate hyperplanes V is cut out by the four minors through p00."
        ),
    )


def _sym3x3_matrix(ring: PolynomialRing) -> List[List[Polynomial]]:
    return _matrix(
        [
            ["2*p00", "p01", "p02"],
            ["p01", "2*p11", "p12"],
            ["p02", "p12", "2*p22"],
        ],
        ring,
    )


_SYM_NAMES = ("p00", "p01", "p02", "p11", "p12", "p22")


def _sym3x3_det() -> ModelSpec:
    ring = _ring(_SYM_NAMES)
    return ModelSpec(
        name="sym3x3_det",
        kind="implicit",
        implicit=_implicit("sym3x3_det", ring, [determinant(_sym3x3_matrix(ring))], 1),
        documented_ml_degree=6,
        provenance="mixture of two i.i.d. ternary pairs; secant of the Veronese surface",
        tier="core",
    )


def _sym3x3_minors() -> ModelSpec:
    ring = _ring(_SYM_NAMES)
    generators = _distinct(minors(_sym3x3_matrix(ring), 2))
    return ModelSpec(
        name="sym3x3_minors",
        kind="implicit",
        implicit=_implicit("sym3x3_minors", ring, generators, 3, _through(generators, ring, "p00")),
        documented_ml_degree=1,
        provenance="two i.i.d. ternary variables; Veronese surface",
        tier="core",
    )


def _minors3x3_3x4() -> ModelSpec:
    ring = _ring(_flat(_grid(3, 4)))
    P = _matrix(_grid(3, 4), ring)
    return ModelSpec(
        name="minors3x3_3x4",
        kind="implicit",
        implicit=_implicit("minors3x3_3x4", ring, minors(P, 3), 2),
        documented_ml_degree=26,
        provenance="3x4 tables of rank at most two",
        tier="extended",
    )


def _plucker_names(n: int) -> List[str]:
    return [f"p{a}{b}" for a, b in combinations(range(1, n + 1), 2)]


def _plucker_relations(n: int) -> List[str]:
    return [
        f"p{a}{b}*p{c}{d} - p{a}{c}*p{b}{d} + p{a}{d}*p{b}{c}"
        for a, b, c, d in combinations(range(1, n + 1), 4)
    ]


def _grassmannian(n: int, documented: int, tier: str, codim: int) -> ModelSpec:
    name = f"grass2{n}"
    ring = _ring(_plucker_names(n))
    return ModelSpec(
        name=name,
        kind="implicit",
        implicit=_implicit(name, ring, _parse_all(_plucker_relations(n), ring), codim),
        documented_ml_degree=documented,
        provenance=f"Pluecker ideal of the Grassmannian of 2-planes in {n}-space",
        tier=tier,
    )


# --------------------------------------------------------------------------
# Jukes-Cantor models
# --------------------------------------------------------------------------


def _fourier_model(
    name: str,
    change: CoordinateChange,
    generators: Sequence[str],
    codim: int,
    documented: int,
    tier: str,
    provenance: str,
    notes: str = "",
) -> ModelSpec:
    fourier_ring = change.source_ring()
    fourier = _parse_all(generators, fourier_ring)
    target = change.target_ring()
    implicit = _implicit(name, target, change.apply_all(fourier, target), codim)
    return ModelSpec(
        name=name,
        kind="implicit",
        implicit=implicit,
        coordinate_change=change,
        fourier_generators=tuple(fourier),
        documented_ml_degree=documented,
        provenance=provenance,
        tier=tier,
        notes=notes,
    )


def _jc_claw() -> ModelSpec:
    return _fourier_model(
        "jc_claw",
        binary_fourier(),
        [
            "q001*q110 - q000*q111",
            "q010*q101 - q000*q111",
            "q100*q011 - q000*q111",
        ],
        3,
        92,
        "extended",
        "binary Jukes-Cantor model on the claw tree",
        notes=f"splits {BINARY_SPLITS}",
    )


def _jc_trivalent() -> ModelSpec:
    return _fourier_model(
        "jc_trivalent",
        binary_fourier(),
        ["q001*q110 - q000*q111", "q010*q101 - q100*q011"],
        2,
        14,
        "core",
        "binary Jukes-Cantor model on the trivalent tree splitting leaves 1,2 from 3",
        notes=f"splits {{03|12}}, {BINARY_SPLITS}",
    )


def _jc_fork() -> ModelSpec:
    return _fourier_model(
        "jc_fork",
        binary_fourier(),
        ["q100 - q101", "q011 - q101", "q010 - q101", "q001*q110 - q000*q111"],
        4,
        1,
        "core",
        "molecular clock submodel of the trivalent tree, fork type",
    )


def _jc_comb() -> ModelSpec:
    return _fourier_model(
        "jc_comb",
        binary_fourier(),
        ["q010 - q100", "q001 - q100", "q011 - q101", "q100*q110 - q000*q111"],
        4,
        9,
        "core",
        "molecular clock submodel of the trivalent tree, comb type",
        notes="The local maximum in the simplex is unique.",
    )


def _jc_split() -> ModelSpec:
    return _fourier_model(
        "jc_split",
        binary_fourier(),
        ["q000*q010*q101*q111 - q001*q011*q100*q110"],
        1,
        326,
        "extended",
        "binary Jukes-Cantor model on a splits graph",
        notes=(
            f"splits {{01|23}}, {{03|12}}, {BINARY_SPLITS}; "
            "the quartic has 40 terms in probability coordinates"
        ),
    )


def _jc_dna(clock: bool) -> ModelSpec:
    generators = ["q000*q111^2 - q011*q101*q110"]
    if clock:
        generators = ["q011 - q101"] + generators
    name = "jc_dna_clock" if clock else "jc_dna"
    return _fourier_model(
        name,
        dna_fourier(),
        generators,
        2 if clock else 1,
        11 if clock else 23,
        "core",
        "Jukes-Cantor DNA model on three taxa"
        + (" under the molecular clock" if clock else ""),
        notes=(
            "coordinates: same letter at all leaves, three distinct letters, "
            "and agreement at leaves {1,2}, {1,3}, {2,3} only"
        ),
    )


# --------------------------------------------------------------------------
# Plane curves
# --------------------------------------------------------------------------


def _plane_curve(name: str, text: str, documented: int, provenance: str) -> ModelSpec:
    ring = _ring(("p0", "p1", "p2"))
    return ModelSpec(
        name=name,
        kind="implicit",
        implicit=_implicit(name, ring, [parse_poly(text, ring)], 1),
        documented_ml_degree=documented,
        provenance=provenance,
        tier="fast",
    )


def _circle() -> ModelSpec:
    return _plane_curve(
        "circle",
        "p0^2 + p1^2 + p2^2 - 2*p0*p1 - 2*p0*p2 - 2*p1*p2",
        3,
        "circle inscribed in the probability triangle",
    )


def _hardy_weinberg() -> ModelSpec:
    return _plane_curve("hardy_weinberg", "p1^2 - 4*p0*p2", 1, "Hardy-Weinberg curve")


def _hw_cousin() -> ModelSpec:
    return _plane_curve("hw_cousin", "p1^2 - p0*p2", 2, "rescaled Hardy-Weinberg curve")


# --------------------------------------------------------------------------
# Parametric models
# --------------------------------------------------------------------------

COIN_COORDINATES = (
    "pi*(1-s)^4 + (1-pi)*(1-t)^4",
    "4*pi*s*(1-s)^3 + 4*(1-pi)*t*(1-t)^3",
    "6*pi*s^2*(1-s)^2 + 6*(1-pi)*t^2*(1-t)^2",
    "4*pi*s^3*(1-s) + 4*(1-pi)*t^3*(1-t)",
    "pi*s^4 + (1-pi)*t^4",
)


def _hw_parametrization(implicit: ImplicitModel) -> ParametricModel:
    ring = _ring(("s",))
    coords = _parse_all(["(1-s)^2", "2*s*(1-s)", "s^2"], ring)
    return ParametricModel.from_coords(ring, coords, name="hw_parametric", implicit=implicit, delta=1)


def _coin_parametric() -> ModelSpec:
    implicit = get_model("coin3x3").implicit
    ring = _ring(("pi", "s", "t"))
    parametric = ParametricModel.from_coords(
        ring,
        _parse_all(COIN_COORDINATES, ring),
        name="coin_parametric",
        implicit=implicit,
        delta=2,
    )
    return ModelSpec(
        name="coin_parametric",
        kind="both",
        implicit=implicit,
        parametric=parametric,
        documented_ml_degree=12,
        provenance="mixing weight pi and coin biases s, t; image is coin3x3",
        delta=2,
        tier="core",
        notes="(pi, s, t) and (1 - pi, t, s) map to the same point, so K_u has 24 zeros.",
    )


def _hw_parametric() -> ModelSpec:
    implicit = get_model("hardy_weinberg").implicit
    return ModelSpec(
        name="hw_parametric",
        kind="both",
        implicit=implicit,
        parametric=_hw_parametrization(implicit),
        documented_ml_degree=1,
        provenance="allele frequency s; image is hardy_weinberg",
        delta=1,
        tier="fast",
    )


def _bernoulli() -> ModelSpec:
    ring = _ring(("t",))
    parametric = ParametricModel.from_coords(ring, _parse_all(["1 - t", "t"], ring), name="bernoulli")
    return ModelSpec(
        name="bernoulli",
        kind="parametric",
        parametric=parametric,
        documented_ml_degree=1,
        provenance="single coin with bias t",
        delta=1,
        tier="fast",
        notes="K_u is generated by (u0 + u1) * t - u1.",
    )


_BUILDERS: Dict[str, Callable[[], ModelSpec]] = {
    "coin3x3": _coin3x3,
    "coin3x4": _coin3x4,
    "det3x3": _det3x3,
    "minors2x2_3x3": _minors2x2_3x3,
    "sym3x3_det": _sym3x3_det,
    "sym3x3_minors": _sym3x3_minors,
    "minors3x3_3x4": _minors3x3_3x4,
    "grass24": lambda: _grassmannian(4, 4, "core", 1),
    "grass25": lambda: _grassmannian(5, 22, "extended", 3),
    "jc_claw": _jc_claw,
    "jc_trivalent": _jc_trivalent,
    "jc_fork": _jc_fork,
    "jc_comb": _jc_comb,
    "jc_split": _jc_split,
    "jc_dna": lambda: _jc_dna(clock=False),
    "jc_dna_clock": lambda: _jc_dna(clock=True),
    "circle": _circle,
    "hardy_weinberg": _hardy_weinberg,
    "hw_cousin": _hw_cousin,
    "coin_parametric": _coin_parametric,
    "hw_parametric": _hw_parametric,
    "bernoulli": _bernoulli,
}


def catalog_names() -> Tuple[str, ...]:
    return tuple(_BUILDERS)


@lru_cache(maxsize=None)
def get_model(name: str) -> ModelSpec:
    """
    Look up a catalog model

    Raises:
        UnknownModelError: name is not in the catalog
    """
    builder = _BUILDERS.get(name)
    if builder is None:
        raise UnknownModelError(name, catalog_names())
    spec = builder()
    logger.debug("model_built", model=name, kind=spec.kind)
    return spec


def scaled_table() -> Dict[str, Tuple[Optional[int], int]]:
    """(unscaled, scaled) ML degrees of the determinantal models."""
    return {
        name: (get_model(name).documented_ml_degree, scaled)
        for name, scaled in SCALED_ML_DEGREES.items()
    }


def scaling_factors(nvars: int, seed: int) -> List[int]:
    rng = np.random.default_rng(seed)
    draw = rng.integers(settings.SCALE_MIN, settings.SCALE_MAX + 1, size=nvars)
    return [int(a) for a in draw]


def scale_model(spec: ModelSpec, seed: int, factors: Optional[Sequence[int]] = None) -> ModelSpec:
    """
    Replace every coordinate p_i by alpha_i * p_i

    Args:
        spec: model with an implicit description
        seed: seed for alpha_i, drawn uniformly from [SCALE_MIN, SCALE_MAX]
        factors: explicit alpha_i overriding the draw

    Returns:
        Implicit ModelSpec named ``<name>_scaled``
    """
    implicit = spec.require_implicit()
    ring = implicit.ring
    alphas = list(factors) if factors is not None else scaling_factors(ring.ngens, seed)
    matrix = [[alphas[i] if i == j else 0 for j in range(ring.ngens)] for i in range(ring.ngens)]
    generators = [linear_substitute(g, matrix, ring) for g in implicit.generators]
    name = f"{spec.name}_scaled"
    scaled = ImplicitModel.from_generators(
        ring,
        generators,
        name=name,
        codim=implicit.codim,
        torus_generators=implicit.torus_generators,
    )
    logger.debug("model_scaled", model=spec.name, seed=seed, factors=alphas)
    return ModelSpec(
        name=name,
        kind="implicit",
        implicit=scaled,
        documented_ml_degree=SCALED_ML_DEGREES.get(spec.name),
        provenance=f"{spec.name} with coordinates scaled by {alphas}",
        tier="extended",
    )


def generic_ci(n: int, degrees: Sequence[int], seed: int) -> ModelSpec:
    """
    Complete intersection of dense forms with random integer coefficients

    Coefficients are uniform in [-CI_COEFF_BOUND, CI_COEFF_BOUND].
    """
    shape = CIShape.of(n, degrees)
    rng = np.random.default_rng(seed)
    ring = _ring([f"p{i}" for i in range(n + 1)])
    bound = settings.CI_COEFF_BOUND
    generators = []
    for d in shape.degrees:
        g = ring.zero
        while not g:
            for chosen in combinations_with_replacement(range(ring.ngens), d):
                monom = [0] * ring.ngens
                for i in chosen:
                    monom[i] += 1
                c = int(rng.integers(-bound, bound + 1))
                if c:
                    g += ring.from_terms({tuple(monom): c})
        generators.append(g)
    label = "_".join(str(d) for d in shape.degrees)
    name = f"generic_ci_{n}_{label}"
    return ModelSpec(
        name=name,
        kind="implicit",
        implicit=ImplicitModel.from_generators(ring, generators, name=name, codim=shape.r),
        documented_ml_degree=BoundService.ci_ml_bound(shape),
        provenance=f"random forms of degrees {list(shape.degrees)} in {n + 1} variables, seed {seed}",
        tier="core",
    )
