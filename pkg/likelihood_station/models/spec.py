"""
Model specifications: an implicit and/or parametric model plus catalog metadata
"""

from __future__ import annotations

from typing import Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from ..algebra.ring import Polynomial
from ..exceptions.custom import UsageError
from ..services.likelihood_service import ImplicitModel
from ..services.parametric_service import ParametricModel
from .fourier import CoordinateChange

Kind = Literal["implicit", "parametric", "both"]
Tier = Literal["fast", "core", "extended"]


class ModelSpec(BaseModel):
    """A named statistical model"""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    name: str
    kind: Kind
    implicit: Optional[ImplicitModel] = None
    parametric: Optional[ParametricModel] = None
    coordinate_change: Optional[CoordinateChange] = None
    fourier_generators: Tuple[Polynomial, ...] = ()
    documented_ml_degree: Optional[int] = None
    provenance: str = ""
    delta: Optional[int] = None
    tier: Tier = "core"
    notes: str = ""

    @model_validator(mode="after")
    def _check_kind(self):
        needs_implicit = self.kind in ("implicit", "both")
        needs_parametric = self.kind in ("parametric", "both")
        if needs_implicit and self.implicit is None:
            raise ValueError(f"model {self.name} of kind {self.kind} needs implicit generators")
        if needs_parametric and self.parametric is None:
            raise ValueError(f"model {self.name} of kind {self.kind} needs a parametrization")
        if self.fourier_generators and self.coordinate_change is None:
            raise ValueError(f"model {self.name} has Fourier generators but no coordinate change")
        return self

    def require_implicit(self) -> ImplicitModel:
        if self.implicit is None:
            raise UsageError(
                f"model {self.name} has no implicit description",
                error_code="NO_IMPLICIT_MODEL",
                details={"model": self.name, "kind": self.kind},
            )
        return self.implicit

    def require_parametric(self) -> ParametricModel:
        if self.parametric is None:
            raise UsageError(
                f"model {self.name} has no parametrization",
                error_code="NO_PARAMETRIZATION",
                details={"model": self.name, "kind": self.kind},
            )
        return self.parametric

    def coordinates_agree(self) -> bool:
        """Substituting the coordinate change into the Fourier generators gives the implicit ones."""
        if self.coordinate_change is None or self.implicit is None:
            return True
        converted = self.coordinate_change.apply_all(self.fourier_generators, self.implicit.ring)
        return list(converted) == list(self.implicit.generators)

    def summary(self) -> dict:
        """Plain-data view used by ``models list`` and ``models show``."""
        info = {
            "name": self.name,
            "kind": self.kind,
            "tier": self.tier,
            "documented_ml_degree": self.documented_ml_degree,
            "provenance": self.provenance,
        }
        if self.implicit is not None:
            info["vars"] = list(self.implicit.vars)
            info["codim"] = self.implicit.codim
            info["degrees"] = list(self.implicit.degrees)
        if self.parametric is not None:
            info["params"] = list(self.parametric.params)
        if self.delta is not None:
            info["delta"] = self.delta
        if self.notes:
            info["notes"] = self.notes
        return info
