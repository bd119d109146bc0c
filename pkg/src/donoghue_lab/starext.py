"""Coefficient-level description of (*)-extensions.

A (*)-extension of a quasi-self-adjoint operator with von Neumann
parameter ``kappa`` whose real part has quasi-kernel parameter ``U`` is
fixed by a complex number ``H`` and two 2x2 matrices acting on the pair
``(phi, psi)`` of Riesz images of the deficiency vectors.  Its imaginary
part is rank one, ``(., chi) chi``, and the channel vector ``chi`` is
stored through its two coefficients.  Nothing here materializes an
operator: the basis vectors are labels only.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import PoleError, ValidationError

__all__ = [
    "StarExtensionData",
    "parameter_H",
    "bi_extension_matrices",
    "involution_delta",
    "channel_coefficients",
    "to_delta_basis",
    "impedance_system_matrix",
    "solve_impedance_system",
]

_EPS = 1e-12


def _validate(kappa: float, U: complex) -> tuple[float, complex]:
    if isinstance(kappa, complex):
        if abs(kappa.imag) > 0.0:
            raise ValidationError(
                "kappa must be real here; rotate the deficiency basis first"
            )
        kappa = kappa.real
    kappa = float(kappa)
    if not 0.0 <= kappa < 1.0:
        raise ValidationError(f"kappa must lie in [0, 1), got {kappa!r}")
    U = complex(U)
    if abs(abs(U) - 1.0) > 1e-10:
        raise ValidationError(f"U must be unimodular, got |U| = {abs(U)!r}")
    return kappa, U


@dataclass(frozen=True)
class StarExtensionData:
    H: complex
    S_A: np.ndarray
    S_Astar: np.ndarray
    c_phi: complex
    c_psi: complex


def parameter_H(kappa: float, U: complex) -> complex:
    """``H = i/(1-k^2) * ((k + conj U)/(1 + k conj U) + k)``."""
    kappa, U = _validate(kappa, U)
    den = 1.0 + kappa * U.conjugate()
    if abs(den) <= _EPS:
        raise PoleError("1 + kappa conj(U)", abs(den), _EPS)
    return 1j / (1.0 - kappa * kappa) * ((kappa + U.conjugate()) / den + kappa)


def bi_extension_matrices(kappa: float, U: complex) -> StarExtensionData:
    """``S_A = [[Hk, H], [k^2 H + ik, i + kH]]`` and its partner for the adjoint."""
    kappa, U = _validate(kappa, U)
    H = parameter_H(kappa, U)
    Hb = H.conjugate()
    k = kappa
    S_A = np.array([[H * k, H], [k * k * H + 1j * k, 1j + k * H]], dtype=complex)
    S_Astar = np.array([[k * Hb - 1j, k * k * Hb - 1j * k], [Hb, Hb * k]], dtype=complex)
    c_phi, c_psi = channel_coefficients(kappa, U)
    return StarExtensionData(H, S_A, S_Astar, c_phi, c_psi)


def involution_delta(kappa: float) -> np.ndarray:
    """``Delta = (1/(k^2-1)) [[k^2+1, 2k], [-2k, -k^2-1]]``; ``Delta @ Delta = I``."""
    kappa = float(kappa)
    if not -1.0 < kappa < 1.0:
        raise ValidationError(f"Delta needs |kappa| < 1, got {kappa!r}")
    k2 = kappa * kappa
    return np.array([[k2 + 1.0, 2.0 * kappa], [-2.0 * kappa, -k2 - 1.0]]) / (k2 - 1.0)


def _norm_factor(kappa: float, U: complex) -> float:
    return math.sqrt(2.0) * abs(1.0 + kappa * U) * math.sqrt((1.0 - kappa) * (1.0 + kappa))


def channel_coefficients(kappa: float, U: complex) -> tuple[complex, complex]:
    """Coefficients of ``chi`` on ``phi`` and ``psi``.

    ``c_phi = (k^2 + 1 + 2kU)/D`` and ``c_psi = (k^2 U + 2k + U)/D`` with
    ``D = sqrt(2) |1 + kU| sqrt(1 - k^2)``.
    """
    kappa, U = _validate(kappa, U)
    D = _norm_factor(kappa, U)
    k2 = kappa * kappa
    return (k2 + 1.0 + 2.0 * kappa * U) / D, (k2 * U + 2.0 * kappa + U) / D


def to_delta_basis(c_phi: complex, c_psi: complex, phase: complex) -> tuple[complex, complex]:
    """Re-express ``chi`` after ``psi`` has been replaced by ``phase * psi``."""
    phase = complex(phase)
    if abs(abs(phase) - 1.0) > 1e-10:
        raise ValidationError(f"phase must be unimodular, got modulus {abs(phase)!r}")
    return complex(c_phi), complex(c_psi) * phase


def impedance_system_matrix(kappa: float, U: complex) -> np.ndarray:
    """Coefficient matrix of the linear system for ``(a(z), b(z))``.

    It does not depend on ``z``; its determinant is ``i conj(U)``.
    """
    kappa, U = _validate(kappa, U)
    D = _norm_factor(kappa, U)
    k2 = kappa * kappa
    r = math.sqrt((1.0 - kappa) * (1.0 + kappa)) / (math.sqrt(2.0) * abs(1.0 + kappa * U))
    return np.array(
        [
            [(k2 + 1.0 + 2.0 * kappa * U).conjugate() / D, (k2 * U + 2.0 * kappa + U).conjugate() / D],
            [-1j * r, 1j * r * U.conjugate()],
        ],
        dtype=complex,
    )


def solve_impedance_system(
    kappa: float,
    U: complex,
    V_value: complex,
    z_tag: Literal["plus", "minus"] = "plus",
) -> tuple[complex, complex]:
    """Solve for the von Neumann coordinates ``(a(z), b(z))`` of ``(Re A - z)^{-1} chi``.

    ``V_value`` is the impedance already evaluated at ``z``; ``z_tag``
    records the half-plane of ``z`` and is kept only for the caller's
    bookkeeping because the system has the same form in both.
    """
    if z_tag not in ("plus", "minus"):
        raise ValidationError(f"z_tag must be 'plus' or 'minus', got {z_tag!r}")
    A = impedance_system_matrix(kappa, U)
    sol = np.linalg.solve(A, np.array([complex(V_value), 1.0 + 0j]))
    return complex(sol[0]), complex(sol[1])
