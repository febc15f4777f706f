"""
The end-to-end verification suite behind ``qwrca verify`` and the acceptance tests.

Every check returns a :class:`CheckResult` with the worst measured deviation
and the tolerance it is held to. Results depend only on the seed, so reports
are byte-for-byte reproducible.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .coin_and_state import InitialTriple, make_qubit, make_theta_coin
from .qw_engine import (
    chirality_norms,
    iter_qw_states,
    qw_distribution,
    qw_evolve,
    qw_to_rca_triple,
)
from .rca_engine import (
    closed_moments,
    first_moment,
    iter_rca_rows,
    rca_evolve,
    rca_initial,
    rca_step_back,
    rca_step_theta,
    small_n_norms,
    squared_norm,
)
from .spectral import closed_form_norm, h_n_value, parseval_norm
from .state_classes import (
    check_corollary4,
    check_theorem2,
    check_theorem3,
    sample_phi_star,
    spawn_seeds,
)

__all__ = ["CheckResult", "CHECKS", "THETA_GRID", "run_suite", "windowed_mean"]

# interior grids; the landmark angles π/6, π/4, π/3 sit among them
THETA_GRID = (math.pi / 12, math.pi / 6, math.pi / 4, math.pi / 3, 5 * math.pi / 12)
LIMIT_WINDOW = 100


@dataclass(frozen=True)
class CheckResult:
    id: int
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""

    def to_dict(self) -> dict:
        return asdict(self)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"[{status}] {self.id:2d} {self.name}: measured {self.measured:.3e} "
            f"(tol {self.tolerance:.0e}) {self.detail}".rstrip()
        )


def _result(id_, name, measured, tol, detail="") -> CheckResult:
    measured = float(measured)
    return CheckResult(id_, name, bool(measured < tol), measured, tol, detail)


def _random_qubit(rng: np.random.Generator):
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    v /= np.linalg.norm(v)
    return make_qubit(complex(v[0]), complex(v[1]))


def _random_triple(rng: np.random.Generator) -> InitialTriple:
    r = np.sqrt(rng.uniform(0.0, 1.0, 3))
    return InitialTriple(*(r * np.exp(1j * rng.uniform(0.0, 2 * math.pi, 3))))


def windowed_mean(values, start: int, width: int = LIMIT_WINDOW) -> float:
    """Mean of values[start : start + width]; an even width cancels (-1)ⁿ terms."""
    return float(np.mean(values[start : start + width]))


# --------------------------------------------------------------------------- #


def check_unitarity(seed: int, quick: bool) -> CheckResult:
    rng = np.random.default_rng(seed)
    thetas = [(j + 0.5) * math.pi / 20 for j in range(10)]
    n_qubits, n_steps = (3, 200) if quick else (20, 1000)
    worst = 0.0
    for theta in thetas:
        coin = make_theta_coin(theta)
        for _ in range(n_qubits):
            for st in iter_qw_states(_random_qubit(rng), coin, n_steps):
                worst = max(worst, abs(chirality_norms(st).total - 1.0))
    return _result(1, "unitarity conservation", worst, 1e-12,
                   f"{len(thetas)} thetas x {n_qubits} qubits, n <= {n_steps}")


def check_coupling(seed: int, quick: bool) -> CheckResult:
    rng = np.random.default_rng(seed)
    n_qubits = 2 if quick else 4
    worst = 0.0
    for theta in THETA_GRID:
        coin = make_theta_coin(theta)
        for _ in range(n_qubits):
            qubit = _random_qubit(rng)
            states = list(iter_qw_states(qubit, coin, 100))
            for chirality, attr in (("left", "left_row"), ("right", "right_row")):
                rows = rca_evolve(qw_to_rca_triple(qubit, coin, chirality), theta, 100)
                for row, st in zip(rows, states):
                    worst = max(worst, row.max_abs_diff(getattr(st, attr)))
    return _result(2, "chirality coupling QW -> RCA", worst, 1e-12, "n <= 100")


def check_hadamard(seed: int, quick: bool) -> CheckResult:
    state = qw_evolve(make_qubit(1, 0), make_theta_coin(math.pi / 4), 2)
    dist = qw_distribution(state)
    expected = {-2: 0.25, -1: 0.0, 0: 0.5, 1: 0.0, 2: 0.25}
    worst = max(abs(dist.get(k, 0.0) - v) for k, v in expected.items())
    worst = max(worst, sum(p for k, p in dist.items() if k not in expected))
    return _result(3, "Hadamard two-step distribution", worst, 1e-15)


def check_symmetry_class(seed: int, quick: bool) -> CheckResult:
    n_samples = 20 if quick else 100
    worst_member = 0.0
    min_witness = math.inf
    moment_gap = 0.0
    mismatches = 0
    for theta, s in zip(THETA_GRID, spawn_seeds(seed, len(THETA_GRID))):
        reports = check_theorem2(theta, 100, n_samples, s)
        mismatches += sum(not r.consistent for r in reports)
        members, others = reports[:n_samples], reports[n_samples:]
        worst_member = max(worst_member, max(r.max_violation for r in members))
        min_witness = min(min_witness, min(r.max_violation for r in others))
        for r in reports:
            rows = rca_evolve(r.triple, theta, 3)
            for m, row in zip(closed_moments(r.triple, theta), rows[1:]):
                moment_gap = max(moment_gap, abs(m - first_moment(row)))
    passed = mismatches == 0 and worst_member < 1e-10 and min_witness > 1e-10 and moment_gap < 1e-12
    return CheckResult(
        4, "symmetric class: symmetric and zero first moment", passed, worst_member, 1e-10,
        f"min non-member witness {min_witness:.3e}, closed-form moment gap {moment_gap:.3e}, "
        f"{mismatches} mismatches",
    )


def check_conservation_class(seed: int, quick: bool) -> CheckResult:
    n_samples, n_max = (10, 200) if quick else (50, 500)
    seeds = spawn_seeds(seed, len(THETA_GRID) + 1)
    worst = 0.0
    mismatches = 0
    for theta, s in zip(THETA_GRID, seeds):
        reports = check_theorem3(theta, 0.5, n_max, n_samples, s)
        mismatches += sum(not r.consistent for r in reports)
        worst = max(worst, max(r.max_violation for r in reports[:n_samples]))
    rng = np.random.default_rng(seeds[-1])
    norm_gap = 0.0
    for _ in range(100):
        triple, theta = _random_triple(rng), rng.uniform(0.01, math.pi / 2 - 0.01)
        rows = rca_evolve(triple, theta, 3)
        for v, row in zip(small_n_norms(triple, theta), rows):
            norm_gap = max(norm_gap, abs(v - squared_norm(row)))
    passed = mismatches == 0 and worst < 1e-10 and norm_gap < 1e-12
    return CheckResult(
        5, "conserving class c=1/2: constant squared norm", passed, worst, 1e-10,
        f"n <= {n_max}, small-n closed-form gap {norm_gap:.3e}, {mismatches} mismatches",
    )


def check_closed_form(seed: int, quick: bool) -> CheckResult:
    n_triples, n_max = (5, 20) if quick else (50, 50)
    seeds = spawn_seeds(seed, len(THETA_GRID))
    worst = 0.0
    worst_osc = 0.0
    for theta, s in zip(THETA_GRID, seeds):
        rng = np.random.default_rng(s)
        for _ in range(n_triples):
            triple = _random_triple(rng)
            for n, row in enumerate(rca_evolve(triple, theta, n_max)):
                worst = max(worst, abs(closed_form_norm(triple, theta, n).total - squared_norm(row)))
        for _ in range(5):
            member = sample_phi_star(0.5, theta, rng)
            for n in range(n_max + 1):
                worst_osc = max(worst_osc, abs(closed_form_norm(member, theta, n).oscillatory))
    passed = worst < 1e-8 and worst_osc < 1e-8
    return CheckResult(
        6, "closed-form norm vs direct summation", passed, max(worst, worst_osc), 1e-8,
        f"total gap {worst:.3e}, phi_star oscillatory part {worst_osc:.3e}",
    )


def check_h_n(seed: int, quick: bool) -> CheckResult:
    x = np.linspace(-math.pi / 2, 0.0, 10_000)
    worst = max(float(np.max(np.abs(h_n_value(x, n)))) for n in range(201))
    return _result(7, "h_n identity", worst, 1e-13, "10^4 points x n <= 200")


def check_parseval(seed: int, quick: bool) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for theta in THETA_GRID:
        for _ in range(1 if quick else 3):
            triple = _random_triple(rng)
            for n, row in enumerate(rca_evolve(triple, theta, 100)):
                worst = max(worst, abs(parseval_norm(triple, theta, n) - squared_norm(row)))
    return _result(8, "Parseval spectral vs spatial norm", worst, 1e-11, "n <= 100")


def check_limits(seed: int, quick: bool) -> CheckResult:
    start = 2000
    worst_window = 0.0
    for theta in (math.pi / 6, math.pi / 4, math.pi / 3):
        coin = make_theta_coin(theta)
        left = [
            chirality_norms(st).left_sq
            for st in iter_qw_states(make_qubit(1, 0), coin, start + LIMIT_WINDOW)
        ]
        target = 1.0 - math.sin(theta) / 2.0
        worst_window = max(worst_window, abs(windowed_mean(left, start) - target))
    worst_sym = 0.0
    sym = make_qubit(1 / math.sqrt(2), 1j / math.sqrt(2))
    for theta in THETA_GRID:
        for st in iter_qw_states(sym, make_theta_coin(theta), 200):
            norms = chirality_norms(st)
            worst_sym = max(worst_sym, abs(norms.left_sq - 0.5), abs(norms.right_sq - 0.5))
    passed = worst_window < 1e-3 and worst_sym < 1e-12
    return CheckResult(
        9, "chirality limits", passed, worst_window, 1e-3,
        f"window [{start}, {start + LIMIT_WINDOW}); symmetric qubit deviation {worst_sym:.3e} (tol 1e-12)",
    )


def check_class_disjointness(seed: int, quick: bool) -> CheckResult:
    n_samples = 100 if quick else 1000
    counterexamples = 0
    cases = [(c, th) for c in (0.25, 0.5, 1.0) for th in THETA_GRID]
    for (c, theta), s in zip(cases, spawn_seeds(seed, len(cases))):
        rep = check_corollary4(c, theta, n_samples, s)
        counterexamples += len(rep.perp_in_star) + len(rep.star_in_perp)
    return CheckResult(
        10, "symmetric and conserving classes disjoint", counterexamples == 0,
        float(counterexamples), 1.0, f"{len(cases)} (c, theta) cases x {n_samples} per side",
    )


def check_reversibility(seed: int, quick: bool) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(5 if quick else 20):
        triple, theta = _random_triple(rng), rng.uniform(0.0, math.pi / 2)
        start = rca_initial(triple)
        state = start
        for _ in range(100):
            state = rca_step_theta(state, theta)
        for _ in range(100):
            state = rca_step_back(state, theta)
        worst = max(worst, state.row_n.max_abs_diff(start.row_n),
                    state.row_np1.max_abs_diff(start.row_np1))
    return _result(11, "reversibility round trip", worst, 1e-9, "100 steps each way")


def check_family_reflections(seed: int, quick: bool) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for theta in THETA_GRID:
        for _ in range(2 if quick else 5):
            alpha, beta = _random_triple(rng).alpha, _random_triple(rng).beta
            for n, row in enumerate(iter_rca_rows(InitialTriple(alpha, beta, -beta), theta, 100)):
                _, v = row.symmetric_window()
                worst = max(worst, float(np.max(np.abs(v - (-1) ** n * v[::-1]))))
            b, xi = rng.uniform(-1, 1), rng.uniform(0, 2 * math.pi)
            phase = complex(np.exp(1j * xi))
            for n, row in enumerate(iter_rca_rows(InitialTriple(0, b, phase * b), theta, 100)):
                _, v = row.symmetric_window()
                rhs = (-1) ** (n + 1) * phase * np.conj(v[::-1])
                worst = max(worst, float(np.max(np.abs(v - rhs))))
    return _result(12, "initial-family reflection relations", worst, 1e-13, "n <= 100")


CHECKS: tuple[Callable[[int, bool], CheckResult], ...] = (
    check_unitarity,
    check_coupling,
    check_hadamard,
    check_symmetry_class,
    check_conservation_class,
    check_closed_form,
    check_h_n,
    check_parseval,
    check_limits,
    check_class_disjointness,
    check_reversibility,
    check_family_reflections,
)


def run_suite(seed: int = 0, quick: bool = False) -> list[CheckResult]:
    """Run every check; check i uses the i-th child of ``seed``."""
    seeds = spawn_seeds(seed, len(CHECKS))
    return [check(s, quick) for check, s in zip(CHECKS, seeds)]

