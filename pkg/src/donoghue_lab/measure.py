"""Finite atomic measures on the real line.

A :class:`DiscreteMeasure` is the desk-scale stand-in for the (infinite)
Borel measure in the integral representation

    V(z) = Q + sum_i w_i * (1/(l_i - z) - l_i/(1 + l_i**2)).

Every realization formula depends on the measure only through the
normalization ``a = sum w_i/(1 + l_i**2)``; the remaining moment
``C = sum w_i l_i/(1 + l_i**2)`` links the Donoghue-normalized function to
the raw Stieltjes transform used by the finite model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .errors import ValidationError

__all__ = [
    "DiscreteMeasure",
    "make_measure",
    "normalization",
    "real_part_constant",
    "total_mass",
    "rescale_to",
    "measure_from_dict",
    "measure_to_dict",
]


@dataclass(frozen=True)
class DiscreteMeasure:
    """Atoms ``(position, weight)`` with strictly increasing positions.

    Instances are immutable; build them with :func:`make_measure`, which
    sorts and merges.  Direct construction validates but does not repair.
    """

    positions: tuple[float, ...]
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.positions) == 0:
            raise ValidationError("a measure needs at least one atom")
        if len(self.positions) != len(self.weights):
            raise ValidationError("positions and weights differ in length")
        for x in (*self.positions, *self.weights):
            if not math.isfinite(x):
                raise ValidationError(f"non-finite value {x!r} in measure")
        if any(w <= 0.0 for w in self.weights):
            raise ValidationError("all weights must be strictly positive")
        if any(b <= a for a, b in zip(self.positions, self.positions[1:])):
            raise ValidationError("positions must be strictly increasing")

    @property
    def atoms(self) -> tuple[tuple[float, float], ...]:
        return tuple(zip(self.positions, self.weights))

    @property
    def size(self) -> int:
        return len(self.positions)

    def lambdas(self) -> np.ndarray:
        return np.asarray(self.positions, dtype=float)

    def weight_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)


def make_measure(pairs: Iterable[Sequence[float]]) -> DiscreteMeasure:
    """Build a measure from ``(position, weight)`` pairs.

    Atoms are sorted by position and duplicate positions are merged by
    summing their weights.

    >>> make_measure([(2, 0.5), (2, 0.5)]).atoms
    ((2.0, 1.0),)
    """
    merged: dict[float, list[float]] = {}
    count = 0
    for pair in pairs:
        if len(pair) != 2:
            raise ValidationError(f"atom {pair!r} is not a (position, weight) pair")
        lam, w = float(pair[0]), float(pair[1])
        if not (math.isfinite(lam) and math.isfinite(w)):
            raise ValidationError(f"non-finite atom ({lam!r}, {w!r})")
        if w <= 0.0:
            raise ValidationError(f"weight {w!r} at position {lam!r} is not positive")
        merged.setdefault(lam + 0.0, []).append(w)
        count += 1
    if count == 0:
        raise ValidationError("a measure needs at least one atom")
    keys = sorted(merged)
    return DiscreteMeasure(tuple(keys), tuple(math.fsum(merged[k]) for k in keys))


def normalization(m: DiscreteMeasure) -> float:
    """Return ``a = sum w_i / (1 + l_i**2)`` (compensated summation)."""
    return math.fsum(w / (1.0 + lam * lam) for lam, w in m.atoms)


def real_part_constant(m: DiscreteMeasure) -> float:
    """Return ``C = sum w_i l_i / (1 + l_i**2)``."""
    return math.fsum(w * lam / (1.0 + lam * lam) for lam, w in m.atoms)


def total_mass(m: DiscreteMeasure) -> float:
    return math.fsum(m.weights)


def rescale_to(m: DiscreteMeasure, a_target: float) -> DiscreteMeasure:
    """Scale all weights so that the normalization becomes ``a_target``."""
    a_target = float(a_target)
    if not (math.isfinite(a_target) and a_target > 0.0):
        raise ValidationError(f"target normalization must be positive, got {a_target!r}")
    factor = a_target / normalization(m)
    return DiscreteMeasure(m.positions, tuple(w * factor for w in m.weights))


def measure_from_dict(data: Mapping[str, Any]) -> DiscreteMeasure:
    """Parse ``{"atoms": [{"lambda": x, "weight": w}, ...]}``."""
    try:
        atoms = data["atoms"]
        pairs = [(atom["lambda"], atom["weight"]) for atom in atoms]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed measure object: {exc}") from exc
    return make_measure(pairs)


def measure_to_dict(m: DiscreteMeasure) -> dict[str, Any]:
    return {"atoms": [{"lambda": lam, "weight": w} for lam, w in m.atoms]}
