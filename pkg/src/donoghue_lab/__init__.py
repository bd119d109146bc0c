"""Realizations of perturbed Donoghue-class Herglotz-Nevanlinna functions as L-system impedances."""

from .errors import DonoghueLabError, PoleError, ValidationError
from .herglotz import ClassTag, Family, PerturbedHerglotz, classify, evaluate, perturb
from .measure import DiscreteMeasure, make_measure, normalization, real_part_constant, rescale_to
from .realize import RealizationParams, classify_and_realize

__all__ = [
    "DonoghueLabError",
    "PoleError",
    "ValidationError",
    "DiscreteMeasure",
    "make_measure",
    "normalization",
    "real_part_constant",
    "rescale_to",
    "PerturbedHerglotz",
    "ClassTag",
    "Family",
    "evaluate",
    "perturb",
    "classify",
    "RealizationParams",
    "classify_and_realize",
]

__version__ = "0.1.0"
