"""Reference values of the three worked examples, replayed by ``examples``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from . import moebius, realize, starext

SQ2, SQ5, SQ10, SQ13, SQ65 = (math.sqrt(x) for x in (2, 5, 10, 13, 65))


@dataclass(frozen=True)
class Golden:
    example: int
    name: str
    compute: Callable[[], complex]
    expected: complex


def _ex1_chi() -> tuple[complex, complex]:
    p = realize.params_class_M(1.0)
    return starext.to_delta_basis(*starext.channel_coefficients(p.kappa, p.U), p.basis_phase)


def _ex2_real() -> realize.RealizationParams:
    return realize.params_class_Mk(1.0, 0.5)


def _ex3_U() -> complex:
    return realize.params_class_M(realize.matching_Q0(SQ65 / 13)).U


GOLDENS: tuple[Golden, ...] = (
    Golden(1, "kappa", lambda: realize.params_class_M(1.0).kappa, 1 / SQ5),
    Golden(1, "U", lambda: realize.params_class_M(1.0).U, complex(-1, 2) / SQ5),
    Golden(1, "basis_phase", lambda: realize.params_class_M(1.0).basis_phase, complex(1, -2) / SQ5),
    Golden(1, "chi_phi", lambda: _ex1_chi()[0], complex(1, 1) / SQ2),
    Golden(1, "chi_psi_delta_basis", lambda: _ex1_chi()[1], complex(7, 1) / (5 * SQ2)),
    Golden(2, "kappa_tilde", lambda: realize.params_universal(1.0, 0.5).kappa_tilde, 1 / SQ2),
    Golden(2, "U_tilde", lambda: realize.params_universal(1.0, 0.5).U_tilde, complex(-1, 1) / SQ2),
    Golden(2, "kappa_complex", lambda: realize.params_universal(1.0, 0.5).kappa_complex, SQ2 * complex(11, -3) / 26),
    Golden(2, "kappa_modulus", lambda: realize.params_universal(1.0, 0.5).kappa_modulus, SQ65 / 13),
    Golden(2, "kappa_real_basis", lambda: _ex2_real().kappa, SQ65 / 13),
    Golden(2, "U_real_basis", lambda: _ex2_real().U, complex(-7, 4) / SQ65),
    Golden(2, "chi_phi", lambda: starext.channel_coefficients(_ex2_real().kappa, _ex2_real().U)[0], complex(1, 2) / 2),
    Golden(2, "chi_psi", lambda: starext.channel_coefficients(_ex2_real().kappa, _ex2_real().U)[1], complex(1, 18) / (2 * SQ65)),
    Golden(2, "W_from_V", lambda: moebius.impedance_to_transfer(complex(1, 0.5)), -complex(1, 8) / 5),
    Golden(3, "Q0", lambda: realize.matching_Q0(SQ65 / 13), math.sqrt(2.5)),
    Golden(3, "U_at_Q0", _ex3_U, complex(-SQ5, 2 * SQ2) / SQ13),
    Golden(3, "chi2_phi", lambda: starext.channel_coefficients(SQ65 / 13, _ex3_U())[0], complex(math.sqrt(26), SQ65) / (2 * SQ13)),
    Golden(3, "chi2_psi", lambda: starext.channel_coefficients(SQ65 / 13, _ex3_U())[1], complex(SQ10, 9) / (2 * SQ13)),
    Golden(3, "unimodular_factor", realize.example3_factor, complex(5, 2 * SQ10) / complex(1, 8)),
    Golden(3, "unimodular_factor_modulus", lambda: abs(realize.example3_factor()), 1.0),
)


def replay(tol: float = 1e-10) -> list[dict]:
    rows = []
    for g in GOLDENS:
        got = complex(g.compute())
        dev = abs(got - complex(g.expected))
        rows.append(
            {
                "example": g.example,
                "check": g.name,
                "expected": [complex(g.expected).real, complex(g.expected).imag],
                "got": [got.real, got.imag],
                "deviation": dev,
                "passed": dev < tol,
            }
        )
    return rows
