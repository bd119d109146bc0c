"""Von Neumann parameters of L-systems realizing perturbed Donoghue functions.

A function ``V(z) = Q + (integral term)`` with normalization ``a`` is the
impedance of an L-system whose main operator has von Neumann parameter
``kappa`` and whose quasi-kernel has parameter ``U``.  Which closed form
applies depends on whether ``a`` is below, equal to, or above one.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

from .errors import ValidationError
from .herglotz import PerturbedHerglotz, is_unit_normalization
from .moebius import _b_pm, impedance_to_transfer

__all__ = [
    "Hypothesis",
    "ClassParams",
    "RealizationParams",
    "UniversalParams",
    "class_params",
    "kappa_class_Mk",
    "kappa_class_Mk_inv",
    "params_class_M",
    "params_class_M_original_basis",
    "params_class_Mk",
    "params_class_Mk_inv",
    "params_universal",
    "model_k_param",
    "realize_Q_a",
    "classify_and_realize",
    "matching_Q0",
    "sign_flip_factor",
    "example3_factor",
    "special_Q_function",
    "special_Q_root",
]

UNIT_TOL = 1e-12


class Hypothesis(str, Enum):
    HYP1 = "Hyp1"
    HYP2 = "Hyp2"
    MIXED = "Mixed"


class ClassParams(NamedTuple):
    Q: float
    a: float
    b: float


def class_params(Q: float, a: float) -> ClassParams:
    return ClassParams(Q, a, Q * Q + a * a - 1.0)


@dataclass(frozen=True)
class RealizationParams:
    """``kappa``, ``U`` and the deficiency-basis multiplier they refer to.

    ``basis_phase`` is the factor applied to ``g_-``; ``1`` means the
    original deficiency basis.
    """

    kappa: complex
    U: complex
    basis_phase: complex
    hypothesis: Hypothesis

    def __post_init__(self) -> None:
        if not abs(self.kappa) < 1.0:
            raise ValidationError(f"|kappa| must be < 1, got {abs(self.kappa)!r}")
        for name in ("U", "basis_phase"):
            value = getattr(self, name)
            if abs(abs(value) - 1.0) > UNIT_TOL * 10:
                raise ValidationError(f"{name} must be unimodular, got |{name}| = {abs(value)!r}")

    def as_dict(self) -> dict:
        def pair(c: complex) -> list[float]:
            c = complex(c)
            return [c.real, c.imag]

        return {
            "kappa": pair(self.kappa),
            "U": pair(self.U),
            "basis_phase": pair(self.basis_phase),
            "hypothesis": self.hypothesis.value,
        }


def _check_Q(Q: float) -> float:
    Q = float(Q)
    if not math.isfinite(Q):
        raise ValidationError(f"Q must be finite, got {Q!r}")
    return Q


def _sgn(Q: float) -> float:
    return 1.0 if Q > 0 else -1.0


def params_class_M(Q: float) -> RealizationParams:
    """Parameters for ``a = 1``, expressed in the rotated deficiency basis.

    ``kappa = |Q|/sqrt(Q^2+4)``, ``U = sgn(Q)(-Q+2i)/sqrt(Q^2+4)`` and the
    basis multiplier is ``(Q-2i)/sqrt(Q^2+4)``.  ``Q = 0`` returns the
    unperturbed values ``kappa = 0``, ``U = -1`` in the original basis.
    """
    Q = _check_Q(Q)
    if Q == 0.0:
        return RealizationParams(0.0, -1.0 + 0j, 1.0 + 0j, Hypothesis.HYP1)
    r = math.hypot(Q, 2.0)
    return RealizationParams(
        abs(Q) / r,
        _sgn(Q) * complex(-Q, 2.0) / r,
        complex(Q, -2.0) / r,
        Hypothesis.MIXED,
    )


def params_class_M_original_basis(Q: float) -> RealizationParams:
    """Class-M parameters in the original basis (complex ``kappa``)."""
    Q = _check_Q(Q)
    if Q == 0.0:
        raise ValidationError("the original-basis form needs Q != 0")
    q2 = Q * Q + 4.0
    return RealizationParams(
        abs(Q) * complex(Q, -2.0) / q2,
        _sgn(Q) * complex(4.0 - Q * Q, 4.0 * Q) / q2,
        1.0 + 0j,
        Hypothesis.MIXED,
    )


def kappa_class_Mk(Q: float, a: float) -> float:
    """Real ``kappa`` for ``0 < a < 1`` (the quartic fraction with the minus root)."""
    Q = float(Q)
    if Q == 0.0:
        return (1.0 - a) / (1.0 + a)
    q2 = Q * Q
    d = _b_pm(Q, a, -1)  # b - sqrt(b^2 + 4Q^2)
    e = d - 2.0 * q2  # b - 2Q^2 - sqrt(b^2 + 4Q^2)
    num = e * e - a * d * d + 4.0 * q2 * a * (a - 1.0)
    den = e * e + a * d * d + 4.0 * q2 * a * (a + 1.0)
    return num / den


def kappa_class_Mk_inv(Q: float, a: float) -> float:
    """Real ``kappa`` for ``a > 1`` (the quartic fraction with the plus root)."""
    Q = float(Q)
    if Q == 0.0:
        return (a - 1.0) / (a + 1.0)
    q2 = Q * Q
    d = _b_pm(Q, a, 1)  # b + sqrt(b^2 + 4Q^2)
    e = d - 2.0 * q2
    num = a * d * d - e * e - 4.0 * q2 * a * (a - 1.0)
    den = e * e + a * d * d + 4.0 * q2 * a * (a + 1.0)
    return num / den


def _U_from_kappa(Q: float, a: float, kappa: float) -> complex:
    return (complex(a, Q) * (1.0 - kappa * kappa) - 1.0 - kappa * kappa) / (2.0 * kappa)


def _hyp_tag(Q: float, unperturbed: Hypothesis) -> Hypothesis:
    return unperturbed if Q == 0.0 else Hypothesis.MIXED


def params_class_Mk(Q: float, a: float) -> RealizationParams:
    """Parameters for ``0 < a < 1`` in the original basis.

    At ``Q = 0`` these reduce to ``kappa0 = (1-a)/(1+a)`` and ``U = -1``.
    """
    Q = _check_Q(Q)
    if not 0.0 < a < 1.0:
        raise ValidationError(f"class M_kappa needs 0 < a < 1, got {a!r}")
    kappa = kappa_class_Mk(Q, a)
    U = -1.0 + 0j if Q == 0.0 else _U_from_kappa(Q, a, kappa)
    return RealizationParams(kappa, U, 1.0 + 0j, _hyp_tag(Q, Hypothesis.HYP1))


def params_class_Mk_inv(Q: float, a: float) -> RealizationParams:
    """Parameters for ``a > 1`` in the original basis.

    At ``Q = 0`` these reduce to ``kappa0 = (a-1)/(a+1)`` and ``U = 1``.
    """
    Q = _check_Q(Q)
    if not a > 1.0:
        raise ValidationError(f"class M_kappa_inv needs a > 1, got {a!r}")
    kappa = kappa_class_Mk_inv(Q, a)
    U = 1.0 + 0j if Q == 0.0 else _U_from_kappa(Q, a, kappa)
    return RealizationParams(kappa, U, 1.0 + 0j, _hyp_tag(Q, Hypothesis.HYP2))


class UniversalParams(NamedTuple):
    """Universal-model parameters for a given ``(Q, a)``.

    ``kappa_complex`` and ``U_tilde`` refer to the basis twisted by
    ``phase``; ``kappa_original`` and ``U_original`` are the same
    parameters in the original deficiency basis.
    """

    kappa_tilde: float
    U_tilde: complex
    phase: complex
    kappa_complex: complex
    kappa_modulus: float
    kappa_original: complex
    U_original: complex


def params_universal(Q: float, a: float) -> UniversalParams:
    Q = _check_Q(Q)
    if Q == 0.0:
        raise ValidationError("the universal model needs Q != 0")
    if not a > 0.0:
        raise ValidationError(f"a must be positive, got {a!r}")
    r = math.hypot(Q, 2.0 * a)
    kappa_tilde = abs(Q) / r
    U_tilde = _sgn(Q) * complex(-Q, 2.0 * a) / r
    phase = complex(Q, -2.0 * a) / r
    den = complex((a - 1.0) * Q, -(Q * Q + 2.0 * a * a + 2.0 * a))
    kappa_complex = complex(a - 1.0, -Q) * r / den
    return UniversalParams(
        kappa_tilde,
        U_tilde,
        phase,
        kappa_complex,
        abs(kappa_complex),
        complex(a - 1.0, -Q) * complex(Q, -2.0 * a) / den,
        U_tilde * phase,
    )


def model_k_param(Q: float, a: float) -> complex:
    """Original-basis parameter of the universal model's main operator.

    ``(a - 1 - Qi)(Q - 2ai) / ((a - 1)Q - (Q^2 + 2a^2 + 2a)i)``; unlike
    :func:`params_universal` this also accepts ``Q = 0``.
    """
    Q = _check_Q(Q)
    if not a > 0.0:
        raise ValidationError(f"a must be positive, got {a!r}")
    den = complex((a - 1.0) * Q, -(Q * Q + 2.0 * a * a + 2.0 * a))
    return complex(a - 1.0, -Q) * complex(Q, -2.0 * a) / den


def realize_Q_a(Q: float, a: float) -> RealizationParams:
    """Dispatch on ``a``: below, at (relative 1e-12), or above one."""
    Q = _check_Q(Q)
    if not (math.isfinite(a) and a > 0.0):
        raise ValidationError(f"a must be positive, got {a!r}")
    if is_unit_normalization(a):
        return params_class_M(Q)
    if a < 1.0:
        return params_class_Mk(Q, a)
    return params_class_Mk_inv(Q, a)


def classify_and_realize(f: PerturbedHerglotz) -> RealizationParams:
    return realize_Q_a(f.Q, f.a)


def matching_Q0(kappa: float) -> float:
    """The ``Q0 > 0`` at which the class-M ``kappa`` equals the given value."""
    kappa = float(kappa)
    if not 0.0 < kappa < 1.0:
        raise ValidationError(f"kappa must lie in (0, 1), got {kappa!r}")
    return 2.0 * kappa / math.sqrt((1.0 - kappa) * (1.0 + kappa))


def sign_flip_factor(Q: float, a: float) -> complex:
    """Unimodular factor linking the systems realizing ``Q + ...`` and ``-Q + ...``."""
    Q = _check_Q(Q)
    if Q == 0.0:
        raise ValidationError("the sign-flip factor needs Q != 0")
    c = 1.0 - a * a - Q * Q
    return complex(c, -2.0 * Q) / complex(c, 2.0 * Q)


def example3_factor() -> complex:
    """Ratio of the transfer values of the two realizations in the worked matching example.

    The first system realizes ``Q0 + i`` with ``Q0`` matched to
    ``kappa = sqrt(65)/13``; the second realizes ``1 + i/2``.
    """
    q0 = matching_Q0(math.sqrt(65.0) / 13.0)
    return impedance_to_transfer(complex(q0, 1.0)) / impedance_to_transfer(complex(1.0, 0.5))


def special_Q_function(a: float):
    """``f(Q) = kappa_inv(Q, a) - Q/sqrt(Q^2 + 4)``."""
    if not a > 1.0:
        raise ValidationError(f"a must exceed 1, got {a!r}")
    return lambda Q: kappa_class_Mk_inv(Q, a) - Q / math.hypot(Q, 2.0)


def special_Q_root(a: float, tol: float = 1e-10) -> Optional[float]:
    """A ``Q > 0`` where the ``a > 1`` and ``a = 1`` kappa curves cross, if one is found.

    The bracket starts at ``[1, 3]`` and its right end doubles up to
    ``2**10``.  Whether a crossing exists for every ``a > 1`` is not known,
    so ``None`` is a legitimate answer.
    """
    from scipy.optimize import bisect

    f = special_Q_function(a)
    lo, hi = 1.0, 3.0
    f_lo = f(lo)
    while hi <= 2.0**10:
        f_hi = f(hi)
        if f_lo == 0.0:
            return lo
        if f_hi == 0.0:
            return hi
        if (f_lo > 0.0) != (f_hi > 0.0):
            root = bisect(f, lo, hi, xtol=1e-15, rtol=4 * 2.0**-52, maxiter=200)
            if abs(f(root)) < tol:
                return float(root)
            return None
        hi *= 2.0
    return None
