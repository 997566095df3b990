"""
Line-based model text format

    # comment
    name: hardy_weinberg
    vars: p0 p1 p2
    gen: p1^2 - 4*p0*p2
    params: s
    coord: (1-s)^2
    delta: 1

``vars`` with ``gen`` lines give an implicit model, ``params`` with ``coord``
lines a parametric one; a file with both links the parametrization to the
implicit model.
"""

from __future__ import annotations

from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from ..algebra.ring import PolynomialRing, format_poly, parse_poly
from ..exceptions.custom import ModelFileError, PolynomialSyntaxError, UnknownVariableError
from ..logging_config import get_logger
from ..services.likelihood_service import ImplicitModel
from ..services.parametric_service import ParametricModel
from .spec import ModelSpec

logger = get_logger(__name__)

KEYS = ("name", "vars", "params", "gen", "coord", "delta")


def _split_lines(text: str, path: str) -> List[Tuple[int, str, str]]:
    entries = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep or key not in KEYS:
            raise ModelFileError(f"expected one of {', '.join(KEYS)} followed by ':'", number, path)
        entries.append((number, key, value.strip()))
    return entries


def _declare(
    number: int, value: str, seen: Dict[str, int], key: str, path: str
) -> PolynomialRing:
    if key in seen:
        raise ModelFileError(f"'{key}' already declared on line {seen[key]}", number, path)
    seen[key] = number
    names = value.split()
    if not names:
        raise ModelFileError(f"'{key}' needs at least one name", number, path)
    try:
        return PolynomialRing(names)
    except PolynomialSyntaxError as exc:
        raise ModelFileError(exc.message, number, path) from None


def parse_model_text(text: str, path: str = "") -> ModelSpec:
    """
    Parse the model text format

    Raises:
        ModelFileError: malformed line, with its line number
        NonHomogeneousGeneratorError: an implicit generator is not homogeneous
        ParametrizationSumError: the coordinates do not sum to one
    """
    name = Path(path).stem if path else "model"
    seen: Dict[str, int] = {}
    var_ring: Optional[PolynomialRing] = None
    param_ring: Optional[PolynomialRing] = None
    generators, coords = [], []
    delta: Optional[int] = None

    for number, key, value in _split_lines(text, path):
        if key == "name":
            name = value or name
        elif key == "vars":
            var_ring = _declare(number, value, seen, key, path)
        elif key == "params":
            param_ring = _declare(number, value, seen, key, path)
        elif key == "delta":
            if not value.isdigit() or int(value) < 1:
                raise ModelFileError("delta must be a positive integer", number, path)
            delta = int(value)
        else:
            ring = var_ring if key == "gen" else param_ring
            if ring is None:
                needed = "vars" if key == "gen" else "params"
                raise ModelFileError(f"'{key}' before '{needed}'", number, path)
            try:
                poly = parse_poly(value, ring)
            except (PolynomialSyntaxError, UnknownVariableError) as exc:
                raise ModelFileError(exc.message, number, path) from None
            (generators if key == "gen" else coords).append(poly)

    if var_ring is None and param_ring is None:
        raise ModelFileError("no 'vars' or 'params' declaration", None, path)
    if var_ring is not None and not generators:
        raise ModelFileError("implicit model has no 'gen' lines", seen["vars"], path)
    if param_ring is not None and not coords:
        raise ModelFileError("parametric model has no 'coord' lines", seen["params"], path)

    implicit = None
    if var_ring is not None:
        implicit = ImplicitModel.from_generators(var_ring, generators, name=name)
    parametric = None
    if param_ring is not None:
        parametric = ParametricModel.from_coords(
            param_ring, coords, name=name, implicit=implicit, delta=delta
        )

    if implicit is not None and parametric is not None:
        kind = "both"
    else:
        kind = "implicit" if implicit is not None else "parametric"
    spec = ModelSpec(
        name=name,
        kind=kind,
        implicit=implicit,
        parametric=parametric,
        delta=delta,
        provenance=f"model file {path}" if path else "model text",
    )
    logger.debug("model_file_loaded", model=name, kind=kind, path=path)
    return spec


def load_model_file(path: Union[str, Path]) -> ModelSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFileError(f"cannot read model file: {exc.strerror}", None, str(path)) from None
    return parse_model_text(text, str(path))


def export_model_text(spec: ModelSpec) -> str:
    """Render ``spec`` in the model text format; ``parse_model_text`` reads it back."""
    lines = [f"# {spec.provenance}" if spec.provenance else "#", f"name: {spec.name}"]
    if spec.implicit is not None:
        lines.append("vars: " + " ".join(spec.implicit.vars))
        lines.extend(f"gen: {format_poly(g)}" for g in spec.implicit.generators)
    if spec.parametric is not None:
        lines.append("params: " + " ".join(spec.parametric.params))
        lines.extend(f"coord: {format_poly(f)}" for f in spec.parametric.coords)
    if spec.delta is not None and spec.parametric is not None:
        lines.append(f"delta: {spec.delta}")
    return "\n".join(lines) + "\n"
