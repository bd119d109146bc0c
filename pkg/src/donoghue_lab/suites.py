"""Randomized invariant suites behind the ``verify`` command.

Each suite draws its cases from a seeded generator, so a given seed always
produces the same report.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import moebius, realize, starext
from .measure import make_measure, rescale_to
from .model import (
    ModelSystem,
    dissipative_resolvent,
    recover_main_operator,
    transfer_and_impedance,
    weighted_hermitian_part,
    weyl_function,
)


@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: int
    max_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def as_dict(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        return out


class _Tally:
    def __init__(self, name: str, tolerance: float) -> None:
        self.name, self.tolerance = name, tolerance
        self.cases = self.failures = 0
        self.worst = 0.0

    def case(self, *deviations: float, ok: bool = True) -> None:
        dev = max(deviations) if deviations else 0.0
        self.cases += 1
        self.worst = max(self.worst, dev)
        if not ok or not dev < self.tolerance:
            self.failures += 1

    def result(self) -> SuiteResult:
        return SuiteResult(self.name, self.cases, self.failures, self.worst, self.tolerance)


def _random_Qa(rng: np.random.Generator) -> tuple[float, float]:
    # One draw in three lands exactly on a = 1 so the class-M branch is covered.
    a = 1.0 if rng.random() < 1 / 3 else 10.0 ** rng.uniform(-3, 3)
    Q = rng.uniform(-100, 100)
    return Q, a


def symmetry_suite(rng: np.random.Generator, n: int) -> SuiteResult:
    t = _Tally("symmetry", 1e-11)
    for _ in range(n):
        Q, a = _random_Qa(rng)
        p, m = realize.realize_Q_a(Q, a), realize.realize_Q_a(-Q, a)
        t.case(
            abs(p.kappa - m.kappa),
            abs(p.U - m.U.conjugate()),
            abs(abs(p.U) - 1.0),
            ok=0.0 <= p.kappa < 1.0,
        )
    return t.result()


def lemma_suite(rng: np.random.Generator, n: int) -> SuiteResult:
    t = _Tally("lemma_branches", 1e-10)
    for _ in range(n):
        Q = rng.uniform(-10, 10) or 1.0
        a = rng.uniform(1e-3, 1 - 1e-3) if rng.random() < 0.5 else rng.uniform(1 + 1e-3, 10)
        lo, hi = moebius.lemma20_branch(a, Q, -1), moebius.lemma20_branch(a, Q, 1)
        ok = lo < 1.0 if a < 1.0 else hi > 1.0
        t.case(abs(lo * hi - 1.0), ok=ok)
    return t.result()


def rotation_suite(rng: np.random.Generator, n: int) -> SuiteResult:
    t = _Tally("rotation", 1e-10)
    for _ in range(n):
        Q = rng.uniform(-10, 10) or 1.0
        a = 1.0 if rng.random() < 0.25 else 10.0 ** rng.uniform(-1, 1)
        r1, r2 = moebius.solve_rotation_angles(Q, a)
        q1, a1 = moebius.rotated_parameters(Q, a, r1)
        q2, a2 = moebius.rotated_parameters(Q, a, r2)
        devs = [abs(q1), abs(q2), abs(a1 * a2 - 1.0)]
        if a == 1.0:
            devs += [abs(r1.tan**2 - a1), abs(r2.tan**2 - a2)]
        v = complex(rng.normal(), abs(rng.normal()) + 0.1)
        devs.append(abs(moebius.rotate(v, r1) * moebius.rotate(v, r2) + 1.0))
        t.case(*devs)
    return t.result()


def star_extension_suite(rng: np.random.Generator, n: int) -> SuiteResult:
    t = _Tally("star_extension", 1e-11)
    for _ in range(n):
        k = rng.uniform(0.0, 0.95)
        U = complex(np.exp(1j * rng.uniform(0, 2 * np.pi)))
        data = starext.bi_extension_matrices(k, U)
        D = starext.involution_delta(k)
        SA, SS = data.S_A, data.S_Astar
        e209 = np.abs((SA + SS) / 2 - 1j * ((SA - SS) / 2j) @ D).max()
        c = np.array([data.c_phi, data.c_psi])
        rank_one = np.abs((SA - SS) / 2j - np.outer(c, c.conj())).max()
        det = abs(np.linalg.det(starext.impedance_system_matrix(k, U)) - 1j * U.conjugate())
        t.case(np.abs(D @ D - np.eye(2)).max(), e209, rank_one, det)
    return t.result()


def _random_measure(rng: np.random.Generator, n: int):
    return make_measure(zip(rng.normal(scale=3.0, size=n), rng.uniform(0.1, 2.0, size=n)))


def model_chain_suite(rng: np.random.Generator, n: int) -> SuiteResult:
    t = _Tally("model_chain", 1e-8)
    for _ in range(n):
        k = rng.uniform(0.0, 0.9)
        m = rescale_to(_random_measure(rng, int(rng.integers(2, 21))), (1 - k) / (1 + k))
        ms = ModelSystem(m, k, -1.0)
        devs = []
        for _z in range(20):
            z = complex(rng.normal(scale=3.0), rng.uniform(0.1, 3.0))
            _, V = transfer_and_impedance(ms, z)
            devs.append(abs(V - (1 - k) / (1 + k) * weyl_function(ms, z)))
        t.case(*devs)
    return t.result()


def resolvent_suite(rng: np.random.Generator, n: int) -> SuiteResult:
    t = _Tally("resolvent", 1e-8)
    zs = (2j, 1 + 1j, -3j, 0.5 + 0.5j, -1 - 2j)
    for _ in range(n):
        size = int(rng.integers(1, 21))
        m = _random_measure(rng, size)
        k = complex(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7))
        ms = ModelSystem(m)
        T = recover_main_operator(ms, k)
        eye = np.eye(size)
        devs = []
        for z in zs:
            R = dissipative_resolvent(ms, k, z)
            devs.append(np.abs(R - np.linalg.inv(T - z * eye)).max())
            devs.append(np.linalg.norm(z * eye + np.linalg.inv(R) - T))
        R1, R2 = dissipative_resolvent(ms, k, zs[0]), dissipative_resolvent(ms, k, zs[1])
        devs.append(np.abs(R1 - R2 - (zs[0] - zs[1]) * R1 @ R2).max())
        lam_min = float(np.linalg.eigvalsh(weighted_hermitian_part(ms, T)).min())
        t.case(*devs, ok=lam_min >= -1e-10)
    return t.result()


SUITES: dict[str, Callable[[np.random.Generator, int], SuiteResult]] = {
    "symmetry": symmetry_suite,
    "lemma_branches": lemma_suite,
    "rotation": rotation_suite,
    "star_extension": star_extension_suite,
    "model_chain": model_chain_suite,
    "resolvent": resolvent_suite,
}


def run_suites(seed: int, cases: int, names: list[str] | None = None) -> list[SuiteResult]:
    """Run the named suites (all by default), each on its own child generator."""
    names = list(SUITES) if names is None else names
    children = np.random.SeedSequence(seed).spawn(len(SUITES))
    streams = dict(zip(SUITES, children))
    heavy = {"model_chain", "resolvent"}
    out = []
    for name in names:
        rng = np.random.default_rng(streams[name])
        count = max(1, cases // 10) if name in heavy else cases
        out.append(SUITES[name](rng, count))
    return out
