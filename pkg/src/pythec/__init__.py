"""Elliptic curves from Pythagorean triples: exact constructions, torsion
certificates and canonical-height rank bounds."""
from .curve import INFINITY, Curve, IntegralModel, Point, add, integralize, negate, scalar_mul
from .families import Family, FamilyInstance, PythTriple, construct, enumerate_ppts, ppt_from_mn

__version__ = "0.1.0"

__all__ = [
    "INFINITY", "Curve", "IntegralModel", "Point", "add", "integralize", "negate",
    "scalar_mul", "Family", "FamilyInstance", "PythTriple", "construct",
    "enumerate_ppts", "ppt_from_mn",
]
