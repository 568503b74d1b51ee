"""Canonical heights, height pairings and regulator determinants."""
from .canonical import (HeightError, HeightValue, Normalization, canonical_height, height_pairing,
                        naive_height)
from .regulator import RegulatorReport, Status, determinant, gram_matrix, regulator
from .reproduce import ReproductionReport, reproduce_determinants

__all__ = [
    "HeightError", "HeightValue", "Normalization", "canonical_height", "height_pairing",
    "naive_height", "RegulatorReport", "Status", "determinant", "gram_matrix", "regulator",
    "ReproductionReport", "reproduce_determinants",
]
