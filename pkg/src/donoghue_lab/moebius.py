"""Scalar fractional-linear maps.

Covers the Cayley-type link between impedance ``V`` and transfer ``W``
values, the rotation ``V -> V_alpha`` that realizes a unimodular change of
L-system, the angles that remove the constant ``Q`` from ``V(i)``, and the
branch algebra that decides which rotated class a perturbed function
lands in.

Every denominator is checked against :data:`POLE_EPS`; a trip raises
:class:`~donoghue_lab.errors.PoleError` carrying the offending magnitude.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import PoleError, ValidationError

__all__ = [
    "POLE_EPS",
    "RotationAngle",
    "impedance_to_transfer",
    "transfer_to_impedance",
    "rotate",
    "compose_angles",
    "solve_rotation_angles",
    "rotated_parameters",
    "lemma20_branch",
    "lemma20_objective",
    "lemma20_extremum",
    "lemma20_numeric_minimum",
    "limit_minus",
    "limit_plus",
]

POLE_EPS = 1e-12


def _guard(quantity: str, value: complex, eps: float = POLE_EPS) -> None:
    if abs(value) <= eps:
        raise PoleError(quantity, abs(value), eps)


def _normalize_alpha(alpha: float) -> float:
    if not math.isfinite(alpha):
        raise ValidationError(f"alpha must be finite, got {alpha!r}")
    alpha = math.fmod(alpha, math.pi)
    if alpha < 0.0:
        alpha += math.pi
    if alpha >= math.pi:
        alpha = 0.0
    return alpha


@dataclass(frozen=True)
class RotationAngle:
    """An angle in ``[0, pi)`` and its unimodular factor ``-exp(2i alpha)``.

    ``alpha = pi`` (and any other multiple of ``pi``) is stored as ``0``.
    Angles built with :meth:`from_tan` keep ``cos`` and ``sin`` derived
    from the tangent itself; going through ``atan`` and back would lose up
    to ``(1 + t^2)`` ulps, which matters where the rotated constant is
    ill-conditioned.
    """

    alpha: float
    tan_hint: Optional[float] = field(default=None, repr=False, compare=False)
    unimodular_factor: complex = field(init=False)
    cos: float = field(init=False, repr=False, compare=False)
    sin: float = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        alpha = _normalize_alpha(float(self.alpha))
        object.__setattr__(self, "alpha", alpha)
        if self.tan_hint is not None:
            c = 1.0 / math.hypot(1.0, self.tan_hint)
            s = self.tan_hint * c
        else:
            c, s = math.cos(alpha), math.sin(alpha)
        object.__setattr__(self, "cos", c)
        object.__setattr__(self, "sin", s)
        # (c, s) and (-c, -s) give the same factor, so either sign is fine.
        object.__setattr__(self, "unimodular_factor", -(complex(c, s) ** 2))

    @property
    def tan(self) -> float:
        return self.tan_hint if self.tan_hint is not None else math.tan(self.alpha)

    @classmethod
    def from_tan(cls, t: float) -> "RotationAngle":
        t = float(t)
        if not math.isfinite(t):
            raise ValidationError(f"tan(alpha) must be finite, got {t!r}")
        return cls(math.atan(t), tan_hint=t)


def impedance_to_transfer(v: complex) -> complex:
    """``W = (1 - iV) / (1 + iV)``; the pole sits at ``V = i``."""
    den = 1.0 + 1j * v
    _guard("1 + iV", den)
    return (1.0 - 1j * v) / den


def transfer_to_impedance(w: complex) -> complex:
    """``V = i (W - 1) / (W + 1)``; the pole sits at ``W = -1``."""
    den = w + 1.0
    _guard("W + 1", den)
    return 1j * (w - 1.0) / den


def rotate(v: complex, r: RotationAngle, eps: float = POLE_EPS) -> complex:
    """``V_alpha = (cos a + sin a V) / (sin a - cos a V)``."""
    c, s = r.cos, r.sin
    den = s - c * v
    _guard("sin(alpha) - cos(alpha) V", den, eps)
    return (c + s * v) / den


def compose_angles(first: RotationAngle, second: RotationAngle) -> RotationAngle:
    """Angle of ``rotate(rotate(v, first), second)``.

    Each rotation is the projective action of a planar rotation by
    ``alpha - pi/2``, so angles add with a ``pi/2`` offset, modulo ``pi``.
    """
    return RotationAngle(first.alpha + second.alpha - math.pi / 2)


def _tan_roots(Q: float, a: float) -> tuple[float, float]:
    """Roots of ``Q t^2 - (Q^2 + a^2 - 1) t - Q = 0`` as ``(plus, minus)``.

    The larger-magnitude root is formed directly and the other one from the
    Vieta product ``t_plus * t_minus = -1`` to avoid cancellation.
    """
    b = Q * Q + a * a - 1.0
    s = math.hypot(b, 2.0 * Q)
    if b >= 0.0:
        t_plus = (b + s) / (2.0 * Q)
        t_minus = -1.0 / t_plus
    else:
        t_minus = (b - s) / (2.0 * Q)
        t_plus = -1.0 / t_minus
    return t_plus, t_minus


def solve_rotation_angles(Q: float, a: float) -> tuple[RotationAngle, RotationAngle]:
    """Angles whose rotation sends ``Q + ia`` to a purely imaginary value.

    Returns ``(alpha_plus, alpha_minus)`` for the two signs in
    ``tan alpha = (b +- sqrt(b^2 + 4Q^2)) / (2Q)`` with ``b = Q^2 + a^2 - 1``.
    For ``Q > 0`` the first lies in ``(0, pi/2)`` and the second in
    ``(pi/2, pi)``; for ``Q < 0`` the placement is swapped.  Rotating by
    ``alpha_minus`` gives the normalization below one when ``a < 1``.
    """
    if Q == 0.0 or not math.isfinite(Q):
        raise ValidationError("rotation angles need a finite nonzero Q")
    if not a > 0.0:
        raise ValidationError(f"a must be positive, got {a!r}")
    t_plus, t_minus = _tan_roots(Q, a)
    return RotationAngle.from_tan(t_plus), RotationAngle.from_tan(t_minus)


def rotated_parameters(Q: float, a: float, r: RotationAngle) -> tuple[float, float]:
    """``(Q_alpha, a_alpha)`` with ``rotate(Q + ia, r) = Q_alpha + i a_alpha``."""
    if not a > 0.0:
        raise ValidationError(f"a must be positive, got {a!r}")
    c, s = r.cos, r.sin
    den = (s - Q * c) ** 2 + (a * c) ** 2
    _guard("(sin a - Q cos a)^2 + a^2 cos^2 a", den)
    q_alpha = ((c + Q * s) * (s - Q * c) - a * a * s * c) / den
    return q_alpha, a / den


def _b_pm(Q: float, a: float, sign: int) -> float:
    """``b + sign * sqrt(b^2 + 4 Q^2)`` without cancellation."""
    b = Q * Q + a * a - 1.0
    s = math.hypot(b, 2.0 * Q)
    if sign * b >= 0.0:
        return b + sign * s
    # b - s = -4Q^2/(b + s) when b > 0, and b + s = -4Q^2/(b - s) when b < 0.
    return -4.0 * Q * Q / (b - sign * s)


def lemma20_branch(a: float, Q: float, sign: int) -> float:
    """``[a d^2 + 4aQ^2] / [(d - 2Q^2)^2 + 4a^2Q^2]`` with ``d = b +- sqrt(b^2+4Q^2)``.

    The ``-`` branch is below one for ``0 < a < 1``, the ``+`` branch is above
    one for ``a > 1``, and the two branches multiply to one.
    """
    if sign not in (1, -1):
        raise ValidationError("sign must be +1 or -1")
    if Q == 0.0:
        raise ValidationError("the branch formula needs Q != 0")
    if not a > 0.0:
        raise ValidationError(f"a must be positive, got {a!r}")
    d = _b_pm(Q, a, sign)
    q2 = Q * Q
    return (a * d * d + 4.0 * a * q2) / ((d - 2.0 * q2) ** 2 + 4.0 * a * a * q2)


def lemma20_objective(a: float) -> Callable[[float], float]:
    """The function ``f(z)`` (``z = Q^2``) whose minimum controls the branch inequality.

    For ``a < 1``: ``f = ((1-a) d^2 - 4zd + 4z^2)/z`` with
    ``d = z + a^2 - 1 - sqrt((z + a^2 - 1)^2 + 4z)``.
    For ``a > 1``: ``f = ((a-1) d^2 + 4zd - 4z^2)/z`` with the ``+`` root.
    The inequality holds exactly when ``min f > 4a|1 - a|``.
    """
    if not a > 0.0 or a == 1.0:
        raise ValidationError("the objective is defined for a > 0, a != 1")
    sign = -1 if a < 1.0 else 1

    def f(z: float) -> float:
        b = z + a * a - 1.0
        s = math.hypot(b, 2.0 * math.sqrt(z))
        if sign * b >= 0.0:
            d = b + sign * s
        else:
            d = -4.0 * z / (b - sign * s)
        if sign < 0:
            return ((1.0 - a) * d * d - 4.0 * z * d + 4.0 * z * z) / z
        return ((a - 1.0) * d * d + 4.0 * z * d - 4.0 * z * z) / z

    return f


def lemma20_extremum(a: float) -> tuple[float, float]:
    """The stated minimizer ``z0 = a^2 + a + 1`` and minimum value.

    The value is ``(16 - 16a)(a^2 + a + 1)`` for ``a < 1`` and
    ``(8a - 8)(a^2 + a + 1)`` for ``a > 1``.  These are the closed forms
    as published; :func:`lemma20_numeric_minimum` gives the actual minimum
    of :func:`lemma20_objective`, which differs from them.
    """
    if not a > 0.0 or a == 1.0:
        raise ValidationError("the extremum is defined for a > 0, a != 1")
    z0 = a * a + a + 1.0
    value = (16.0 - 16.0 * a) * z0 if a < 1.0 else (8.0 * a - 8.0) * z0
    return z0, value


def lemma20_numeric_minimum(a: float, z_max: float = 100.0) -> tuple[float, float]:
    """Grid search plus bounded refinement of :func:`lemma20_objective` on ``(0, z_max]``."""
    from scipy.optimize import minimize_scalar

    f = lemma20_objective(a)
    grid = [z_max * (k / 4000.0) ** 2 for k in range(1, 4001)]
    values = [f(z) for z in grid]
    k = min(range(len(grid)), key=values.__getitem__)
    lo = grid[k - 1] if k > 0 else grid[0] * 1e-6
    hi = grid[k + 1] if k + 1 < len(grid) else z_max
    res = minimize_scalar(f, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    return float(res.x), float(res.fun)


def limit_minus(v: complex) -> complex:
    """``(1 + V) / (1 - V)``, the impedance reached as ``Q -> 0-``."""
    den = 1.0 - v
    _guard("1 - V", den)
    return (1.0 + v) / den


def limit_plus(v: complex) -> complex:
    """``-(1 - V) / (1 + V)``, the impedance reached as ``Q -> 0+``."""
    den = 1.0 + v
    _guard("1 + V", den)
    return -(1.0 - v) / den
