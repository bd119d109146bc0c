"""Finite-dimensional model triple over a discrete measure.

The state space is ``L^2(mu)`` for an atomic ``mu``, i.e. ``C^n`` with the
weighted inner product ``<u, v> = sum w_i u_i conj(v_i)``.  The
self-adjoint operator is multiplication by the atom positions, the
deficiency vectors are ``g_z(l) = 1/(l - z)``, and the dissipative main
operator enters only through the rank-one resolvent correction.

Operators are returned as matrices acting on coefficient vectors; their
adjoints must be taken with respect to the weighted inner product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

import numpy as np

from .errors import PoleError, ValidationError
from .measure import DiscreteMeasure, normalization, real_part_constant, rescale_to
from .moebius import transfer_to_impedance

__all__ = [
    "ModelSystem",
    "make_model",
    "inner",
    "deficiency_vector",
    "weyl_function",
    "weyl_function_form",
    "livsic_function",
    "characteristic_function",
    "transfer_and_impedance",
    "resolvent_multiplier",
    "dissipative_resolvent",
    "recover_main_operator",
    "weighted_hermitian_part",
    "LivsicVanishing",
    "livsic_vanishing_test",
    "DEFAULT_GRID",
]

SPECTRUM_GUARD = 1e-10
HypothesisTag = Literal["Hyp1", "Hyp2"]

DEFAULT_GRID: tuple[complex, ...] = tuple(
    complex(x, y) for x in (-2.0, -0.5, 0.5, 2.0) for y in (0.5, 2.0)
) + (2j, 0.1 + 5j)


@dataclass(frozen=True)
class ModelSystem:
    """The model triple data: measure, ``kappa`` of the main operator and ``U``.

    ``B`` is the diagonal matrix of atom positions and ``C`` the real
    moment ``sum w l/(1 + l^2)``.
    """

    measure: DiscreteMeasure
    kappa: complex = 0.0
    U: complex = -1.0
    B: np.ndarray = field(init=False, repr=False, compare=False)
    C: float = field(init=False)

    def __post_init__(self) -> None:
        if not abs(self.kappa) < 1.0:
            raise ValidationError(f"|kappa| must be < 1, got {abs(self.kappa)!r}")
        if abs(abs(self.U) - 1.0) > 1e-10:
            raise ValidationError(f"U must be unimodular, got |U| = {abs(self.U)!r}")
        object.__setattr__(self, "kappa", complex(self.kappa))
        object.__setattr__(self, "U", complex(self.U))
        object.__setattr__(self, "B", np.diag(self.measure.lambdas()))
        object.__setattr__(self, "C", real_part_constant(self.measure))

    @property
    def a(self) -> float:
        return normalization(self.measure)

    @property
    def weights(self) -> np.ndarray:
        return self.measure.weight_array()

    @property
    def lambdas(self) -> np.ndarray:
        return self.measure.lambdas()


def make_model(measure: DiscreteMeasure, kappa: complex = 0.0, U: complex = -1.0) -> ModelSystem:
    return ModelSystem(measure, kappa, U)


def inner(ms: ModelSystem, u: np.ndarray, v: np.ndarray) -> complex:
    """Weighted inner product, linear in the first slot."""
    return complex(np.sum(ms.weights * np.asarray(u) * np.conj(np.asarray(v))))


def _check_off_axis(z: complex, upper: bool = False) -> complex:
    z = complex(z)
    if upper and not z.imag > 0.0:
        raise ValidationError(f"z must lie in the upper half-plane, got {z!r}")
    if z.imag == 0.0:
        raise ValidationError(f"z must be non-real, got {z!r}")
    return z


def deficiency_vector(ms: ModelSystem, z: complex) -> np.ndarray:
    z = _check_off_axis(z)
    return 1.0 / (ms.lambdas - z)


def weyl_function(ms: ModelSystem, z: complex) -> complex:
    """Donoghue-normalized Weyl function, ``M(i) = i``.

    Equals ``(1/a) sum w (1/(l - z) - l/(1 + l^2))``.
    """
    z = _check_off_axis(z, upper=True)
    lam, w = ms.lambdas, ms.weights
    raw = np.sum(w * (1.0 + lam * z) / ((lam - z) * (1.0 + lam * lam)))
    return complex(raw) / ms.a


def weyl_function_form(ms: ModelSystem, z: complex) -> complex:
    """Same value via ``((Bz + I)(B - z)^{-1} e, e)`` with ``e = g_i/||g_i||``."""
    z = _check_off_axis(z, upper=True)
    gp = deficiency_vector(ms, 1j)
    lam = ms.lambdas
    image = (lam * z + 1.0) / (lam - z) * gp
    return inner(ms, image, gp) / inner(ms, gp, gp).real


def livsic_function(ms: ModelSystem, z: complex) -> complex:
    """``s(z) = ((z - i)/(z + i)) <g_z, g_-> / <g_z, g_+>``."""
    z = _check_off_axis(z, upper=True)
    gz = deficiency_vector(ms, z)
    num = inner(ms, gz, deficiency_vector(ms, -1j))
    den = inner(ms, gz, deficiency_vector(ms, 1j))
    if abs(den) <= SPECTRUM_GUARD:
        raise PoleError("<g_z, g_+>", abs(den), SPECTRUM_GUARD)
    return (z - 1j) / (z + 1j) * num / den


def _characteristic(s: complex, kappa: complex) -> complex:
    den = kappa.conjugate() * s - 1.0
    if abs(den) <= SPECTRUM_GUARD:
        raise PoleError("conj(kappa) s - 1", abs(den), SPECTRUM_GUARD)
    return (s - kappa) / den


def characteristic_function(ms: ModelSystem, z: complex) -> complex:
    """``S(z) = (s - kappa) / (conj(kappa) s - 1)``."""
    return _characteristic(livsic_function(ms, z), ms.kappa)


def transfer_and_impedance(
    ms: ModelSystem, z: complex, hypothesis: HypothesisTag = "Hyp1"
) -> tuple[complex, complex]:
    """Transfer value ``W = 1/S`` and the impedance obtained from it.

    Under ``Hyp1`` the quasi-kernel is the multiplication operator itself,
    and the chain gives ``V = ((1 - k)/(1 + k)) M``.  Under ``Hyp2`` the
    quasi-kernel contains ``g_+ + g_-``; relative to the basis in which the
    multiplication operator is the quasi-kernel the main operator then has
    parameter ``-kappa``, and the chain gives ``V = ((1 + k)/(1 - k)) M``.
    """
    if hypothesis not in ("Hyp1", "Hyp2"):
        raise ValidationError(f"hypothesis must be Hyp1 or Hyp2, got {hypothesis!r}")
    kappa = ms.kappa if hypothesis == "Hyp1" else -ms.kappa
    S = _characteristic(livsic_function(ms, z), kappa)
    if abs(S) <= SPECTRUM_GUARD:
        raise PoleError("S(z)", abs(S), SPECTRUM_GUARD)
    W = 1.0 / S
    return W, transfer_to_impedance(W)


def _model_measure(ms: ModelSystem) -> DiscreteMeasure:
    # The resolvent formula is stated for the Donoghue normalization a = 1.
    if abs(ms.a - 1.0) <= 1e-12:
        return ms.measure
    return rescale_to(ms.measure, 1.0)


def _k_term(k_param: complex) -> complex:
    k_param = complex(k_param)
    if not abs(k_param) < 1.0:
        raise ValidationError(f"|k| must be < 1, got {abs(k_param)!r}")
    return 1j * (k_param + 1.0) / (k_param - 1.0)


def resolvent_multiplier(ms: ModelSystem, k_param: complex, z: complex) -> complex:
    """``p(z) = 1 / (M(z) + i (k + 1)/(k - 1))``."""
    z = _check_off_axis(z)
    model = ModelSystem(_model_measure(ms), ms.kappa, ms.U)
    lam, w = model.lambdas, model.weights
    M = complex(np.sum(w * (1.0 + lam * z) / ((lam - z) * (1.0 + lam * lam))))
    den = M + _k_term(k_param)
    if abs(den) <= SPECTRUM_GUARD:
        raise PoleError("M(z) + i(k+1)/(k-1)", abs(den), SPECTRUM_GUARD)
    return 1.0 / den


def dissipative_resolvent(ms: ModelSystem, k_param: complex, z: complex) -> np.ndarray:
    """Matrix of ``(T - z)^{-1} = (B - z)^{-1} - p(z) (., g_conj(z)) g_z``.

    The measure is rescaled to ``a = 1`` first, and the inner product in
    the rank-one term carries those weights: ``(f, g_conj(z)) = sum w f g_z``.
    """
    z = _check_off_axis(z)
    model = ModelSystem(_model_measure(ms), ms.kappa, ms.U)
    gap = float(np.min(np.abs(model.lambdas - z)))
    if gap <= SPECTRUM_GUARD:
        raise PoleError("distance from z to an atom", gap, SPECTRUM_GUARD)
    gz = 1.0 / (model.lambdas - z)
    p = resolvent_multiplier(model, k_param, z)
    return np.diag(gz) - p * np.outer(gz, model.weights * gz)


def recover_main_operator(ms: ModelSystem, k_param: complex) -> np.ndarray:
    """``T = B + (1/d) (., 1) 1`` with ``d = -C + i (k + 1)/(k - 1)``.

    Its resolvent coincides with :func:`dissipative_resolvent`, which makes
    it an independent check of that formula.
    """
    model = ModelSystem(_model_measure(ms), ms.kappa, ms.U)
    d = -model.C + _k_term(k_param)
    if abs(d) <= SPECTRUM_GUARD:
        raise PoleError("d", abs(d), SPECTRUM_GUARD)
    n = model.measure.size
    return model.B.astype(complex) + np.outer(np.ones(n), model.weights) / d


def weighted_hermitian_part(ms: ModelSystem, T: np.ndarray, imaginary: bool = True) -> np.ndarray:
    """``(T - T*)/(2i)`` (or ``(T + T*)/2``) in orthonormal coordinates.

    With ``W = diag(w)`` the weighted adjoint is ``W^{-1} T^H W``; the
    similarity by ``W^{1/2}`` turns it into an ordinary Hermitian matrix.
    """
    measure = _model_measure(ms)
    root = np.sqrt(measure.weight_array())
    X = (root[:, None] * T) / root[None, :]
    if imaginary:
        return (X - X.conj().T) / 2j
    return (X + X.conj().T) / 2


@dataclass(frozen=True)
class LivsicVanishing:
    vanishes: bool
    degenerate: bool
    max_abs: float

    def __bool__(self) -> bool:
        return self.vanishes


def livsic_vanishing_test(
    ms: ModelSystem, grid: Sequence[complex] = DEFAULT_GRID, tol: float = 1e-12
) -> LivsicVanishing:
    """Decide whether ``s`` vanishes identically on the sample grid.

    A single atom leaves no room for a nontrivial symmetric operator, so
    that case is reported as degenerate and, by convention, vanishing.
    """
    grid = list(grid)
    if not grid:
        raise ValidationError("the grid must be nonempty")
    if any(not complex(z).imag > 0.0 for z in grid):
        raise ValidationError("grid points must lie in the upper half-plane")
    if ms.measure.size == 1:
        return LivsicVanishing(True, True, float("nan"))
    peak = max(abs(livsic_function(ms, z)) for z in grid)
    return LivsicVanishing(bool(peak < tol), False, float(peak))
