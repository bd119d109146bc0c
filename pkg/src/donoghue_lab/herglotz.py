"""Perturbed Herglotz-Nevanlinna functions over a discrete measure."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Mapping

import numpy as np

from .errors import PoleError, ValidationError
from .measure import (
    DiscreteMeasure,
    measure_from_dict,
    measure_to_dict,
    normalization,
)

__all__ = [
    "Family",
    "ClassTag",
    "PerturbedHerglotz",
    "evaluate",
    "perturb",
    "classify",
    "kappa0_from_a",
    "a_from_kappa0",
    "is_unit_normalization",
    "mass_growth_diagnostic",
    "function_from_dict",
    "function_to_dict",
]

#: Relative tolerance for deciding ``a == 1``.
UNIT_RTOL = 1e-12
#: Minimal distance from ``z`` to an atom before evaluation is refused.
ATOM_GUARD = 1e-12


class Family(str, Enum):
    M = "M"
    M_KAPPA = "M_kappa"
    M_KAPPA_INV = "M_kappa_inv"


@dataclass(frozen=True)
class ClassTag:
    family: Family
    kappa0: float
    perturbed: bool

    def __post_init__(self) -> None:
        if not 0.0 <= self.kappa0 < 1.0:
            raise ValidationError(f"kappa0 must lie in [0, 1), got {self.kappa0!r}")
        if (self.family is Family.M) != (self.kappa0 == 0.0):
            raise ValidationError("family M is exactly the kappa0 = 0 case")


@dataclass(frozen=True)
class PerturbedHerglotz:
    """``V(z) = Q + sum w_i (1/(l_i - z) - l_i/(1 + l_i**2))``."""

    Q: float
    measure: DiscreteMeasure
    a: float = field(init=False)

    def __post_init__(self) -> None:
        if not math.isfinite(self.Q):
            raise ValidationError(f"Q must be finite, got {self.Q!r}")
        object.__setattr__(self, "Q", float(self.Q))
        object.__setattr__(self, "a", normalization(self.measure))

    def __call__(self, z: complex) -> complex:
        return evaluate(self, z)


def _summands(lam: np.ndarray, z: complex) -> np.ndarray:
    # 1/(l - z) - l/(1 + l^2) written over a common denominator; this
    # avoids the cancellation between the two terms for large |l|.
    return (1.0 + lam * z) / ((lam - z) * (1.0 + lam * lam))


def evaluate(f: PerturbedHerglotz, z: complex) -> complex:
    """Value of ``V`` at a non-real point ``z``."""
    z = complex(z)
    if z.imag == 0.0:
        raise PoleError("Im z", 0.0, 0.0)
    lam = f.measure.lambdas()
    gap = float(np.min(np.abs(lam - z)))
    if gap <= ATOM_GUARD:
        raise PoleError("distance from z to an atom", gap, ATOM_GUARD)
    w = f.measure.weight_array()
    return f.Q + complex(np.sum(w * _summands(lam, z)))


def perturb(f: PerturbedHerglotz, dQ: float) -> PerturbedHerglotz:
    if not math.isfinite(dQ):
        raise ValidationError(f"dQ must be finite, got {dQ!r}")
    return PerturbedHerglotz(f.Q + dQ, f.measure)


def is_unit_normalization(a: float) -> bool:
    return abs(a - 1.0) <= UNIT_RTOL * max(1.0, abs(a))


def kappa0_from_a(a: float) -> float:
    """``|1 - a| / (1 + a)``, returning exactly 0 inside the unit tolerance."""
    if a <= 0.0:
        raise ValidationError(f"normalization must be positive, got {a!r}")
    if is_unit_normalization(a):
        return 0.0
    return abs(1.0 - a) / (1.0 + a)


def a_from_kappa0(kappa0: float, inverse: bool = False) -> float:
    """Inverse of :func:`kappa0_from_a` on the chosen side of ``a = 1``."""
    if not 0.0 <= kappa0 < 1.0:
        raise ValidationError(f"kappa0 must lie in [0, 1), got {kappa0!r}")
    if inverse:
        return (1.0 + kappa0) / (1.0 - kappa0)
    return (1.0 - kappa0) / (1.0 + kappa0)


def classify(f: PerturbedHerglotz) -> tuple[ClassTag, float, float]:
    """Return ``(tag, Q, a)``; ``a == 1`` is decided with relative tolerance 1e-12."""
    a = f.a
    if is_unit_normalization(a):
        family = Family.M
    elif a < 1.0:
        family = Family.M_KAPPA
    else:
        family = Family.M_KAPPA_INV
    return ClassTag(family, kappa0_from_a(a), f.Q != 0.0), f.Q, a


def mass_growth_diagnostic(f: PerturbedHerglotz, etas: Iterable[float]) -> list[float]:
    """``eta * Im V(i eta)`` for each ``eta``.

    The sequence increases toward the total mass ``sum w_i``; an unbounded
    trend over growing ``eta`` is how infinite mass shows up numerically.
    """
    etas = [float(e) for e in etas]
    if any(e <= 0.0 for e in etas):
        raise ValidationError("etas must be positive")
    if any(b <= a for a, b in zip(etas, etas[1:])):
        raise ValidationError("etas must be strictly increasing")
    lam = f.measure.lambdas()
    w = f.measure.weight_array()
    # Im V(i eta) = sum w eta / (l^2 + eta^2), computed without the real part.
    return [float(np.sum(w * e * e / (lam * lam + e * e))) for e in etas]


def function_from_dict(data: Mapping[str, Any]) -> PerturbedHerglotz:
    """Parse ``{"Q": q, "measure": {"atoms": [...]}}``."""
    try:
        Q = float(data.get("Q", 0.0))
        measure = measure_from_dict(data["measure"])
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"malformed function object: {exc}") from exc
    return PerturbedHerglotz(Q, measure)


def function_to_dict(f: PerturbedHerglotz) -> dict[str, Any]:
    return {"Q": f.Q, "measure": measure_to_dict(f.measure)}
