"""
Model catalog, Fourier coordinate changes and the model text format
"""

from .catalog import (
    SCALED_ML_DEGREES,
    catalog_names,
    generic_ci,
    get_model,
    scale_model,
    scaled_table,
    scaling_factors,
)
from .fourier import CoordinateChange, binary_fourier, dna_fourier
from .model_file import export_model_text, load_model_file, parse_model_text
from .spec import ModelSpec

__all__ = [
    "SCALED_ML_DEGREES",
    "CoordinateChange",
    "ModelSpec",
    "binary_fourier",
    "catalog_names",
    "dna_fourier",
    "export_model_text",
    "generic_ci",
    "get_model",
    "load_model_file",
    "parse_model_text",
    "scale_model",
    "scaled_table",
    "scaling_factors",
]
