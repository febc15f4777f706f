"""
Initial-state classes of the H(θ) automaton and their simulation-backed checkers.

``phi_perp``
    β + γ = 0; or |β| = |γ| > 0 with α = 0; or |β| = |γ| > 0, α ≠ 0 and
    θ_β + θ_γ - 2θ_α ≡ π (mod 2π). Exactly the triples whose distribution
    stays mirror-symmetric, equivalently whose first moment stays zero.
``phi_star(c)``
    |α|² = c, |β|² + |γ|² = c, βγ̄ + β̄γ = 0 and
    α(β̄ - γ̄) + ᾱ(β - γ) = 2c cos θ. Exactly the triples with ‖X(n)‖² = c
    for every n.

The two classes are disjoint for c > 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .coin_and_state import COMPLEX_TOL, InitialTriple, check_theta
from .rca_engine import (
    closed_moments,
    first_moment,
    iter_rca_rows,
    small_n_norms,
    squared_norm,
)

__all__ = [
    "ClassSpec",
    "CorollaryReport",
    "TheoremReport",
    "check_corollary4",
    "check_theorem2",
    "check_theorem3",
    "empirical_conserved",
    "empirical_symmetric",
    "empirical_zero_moment",
    "in_phi_perp",
    "in_phi_star",
    "phi_star_residuals",
    "sample_non_member",
    "sample_phi_perp",
    "sample_phi_star",
    "spawn_seeds",
]

EMPIRICAL_TOL = 1e-10


@dataclass(frozen=True)
class ClassSpec:
    kind: Literal["phi_perp", "phi_star"]
    theta: float
    c: float = 0.0

    def __post_init__(self) -> None:
        if self.c < 0:
            raise ValueError(f"c must be non-negative, got {self.c}")

    def contains(self, triple: InitialTriple) -> bool:
        if self.kind == "phi_perp":
            return in_phi_perp(triple)
        return in_phi_star(triple, self.c, self.theta)


@dataclass(frozen=True)
class TheoremReport:
    triple: InitialTriple
    predicted_member: bool
    empirical_member: bool
    max_violation: float
    steps_checked: int
    seed: int | None = None

    @property
    def consistent(self) -> bool:
        return self.predicted_member == self.empirical_member

    def to_dict(self) -> dict:
        return {
            "triple": self.triple.as_reals(),
            "predicted_member": self.predicted_member,
            "empirical_member": self.empirical_member,
            "max_violation": self.max_violation,
            "steps_checked": self.steps_checked,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class CorollaryReport:
    c: float
    theta: float
    samples_per_side: int
    perp_in_star: list[InitialTriple] = field(default_factory=list)
    star_in_perp: list[InitialTriple] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.perp_in_star and not self.star_in_perp

    def to_dict(self) -> dict:
        return {
            "c": self.c,
            "theta": self.theta,
            "samples_per_side": self.samples_per_side,
            "perp_in_star": [t.as_reals() for t in self.perp_in_star],
            "star_in_perp": [t.as_reals() for t in self.star_in_perp],
            "passed": self.passed,
        }


# --------------------------------------------------------------------------- #
# membership
# --------------------------------------------------------------------------- #


def in_phi_perp(triple: InitialTriple, tol: float = COMPLEX_TOL) -> bool:
    alpha, beta, gamma = triple
    if abs(beta + gamma) < tol:
        return True
    rb, rg, ra = abs(beta), abs(gamma), abs(alpha)
    if not (abs(rb - rg) < tol and rb > tol):
        return False
    if ra < tol:
        return True
    # e^{i(θ_β + θ_γ - 2θ_α)} = -1 without extracting arguments
    phase = beta * gamma * alpha.conjugate() ** 2 / (rb * rg * ra * ra)
    return abs(phase + 1.0) < tol


def phi_star_residuals(triple: InitialTriple, c: float, theta: float) -> dict[str, float]:
    """Absolute residual of each of the four defining equalities."""
    theta = check_theta(theta, open_interval=True)
    alpha, beta, gamma = triple
    return {
        "alpha_norm": abs(abs(alpha) ** 2 - c),
        "beta_gamma_norm": abs(abs(beta) ** 2 + abs(gamma) ** 2 - c),
        "beta_gamma_cross": abs(2.0 * (beta * gamma.conjugate()).real),
        "alpha_coupling": abs(
            2.0 * (alpha * (beta - gamma).conjugate()).real - 2.0 * c * math.cos(theta)
        ),
    }


def in_phi_star(
    triple: InitialTriple, c: float, theta: float, tol: float = COMPLEX_TOL
) -> bool:
    if c < 0:
        raise ValueError(f"c must be non-negative, got {c}")
    if c == 0:
        check_theta(theta, open_interval=True)
        return all(abs(z) < tol for z in triple)
    return all(r < tol for r in phi_star_residuals(triple, c, theta).values())


# --------------------------------------------------------------------------- #
# empirical counterparts (finite horizon)
# --------------------------------------------------------------------------- #


def empirical_symmetric(
    triple: InitialTriple, theta: float, n_max: int
) -> tuple[bool, float]:
    """max over n ≤ n_max and k of ||X_k(n)| - |X_{-k}(n)||, against 1e-10."""
    worst = 0.0
    for row in iter_rca_rows(triple, theta, n_max):
        _, vals = row.symmetric_window()
        mags = np.abs(vals)
        if len(mags):
            worst = max(worst, float(np.max(np.abs(mags - mags[::-1]))))
    return worst < EMPIRICAL_TOL, worst


def empirical_zero_moment(
    triple: InitialTriple, theta: float, n_max: int
) -> tuple[bool, float]:
    worst = max(abs(first_moment(r)) for r in iter_rca_rows(triple, theta, n_max))
    return worst < EMPIRICAL_TOL, worst


def empirical_conserved(
    triple: InitialTriple, theta: float, c: float, n_max: int
) -> tuple[bool, float]:
    worst = max(abs(squared_norm(r) - c) for r in iter_rca_rows(triple, theta, n_max))
    return worst < EMPIRICAL_TOL, worst


# --------------------------------------------------------------------------- #
# samplers
# --------------------------------------------------------------------------- #


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def spawn_seeds(seed: int | None, count: int) -> list[int]:
    """Independent per-sample integer seeds derived from one parent seed."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(ch.generate_state(1, dtype=np.uint64)[0]) for ch in children]


def _polar(rng: np.random.Generator, r: float) -> complex:
    return cmath.rect(r, rng.uniform(0.0, 2 * math.pi))


def sample_phi_perp(seed=None) -> InitialTriple:
    """Draw a member of ``phi_perp``; each of the three branches has probability 1/3."""
    rng = _rng(seed)
    branch = int(rng.integers(3))
    if branch == 0:
        alpha = _polar(rng, rng.uniform(0.0, 1.0))
        beta = _polar(rng, rng.uniform(0.0, 1.0))
        return InitialTriple(alpha, beta, -beta)
    r = rng.uniform(0.05, 1.0)
    th_b = rng.uniform(0.0, 2 * math.pi)
    if branch == 1:
        return InitialTriple(0j, cmath.rect(r, th_b), _polar(rng, r))
    th_a = rng.uniform(0.0, 2 * math.pi)
    a = rng.uniform(0.05, 1.0)
    th_g = math.pi + 2.0 * th_a - th_b
    return InitialTriple(cmath.rect(a, th_a), cmath.rect(r, th_b), cmath.rect(r, th_g))


def sample_phi_star(c: float, theta: float, seed=None, max_tries: int = 100) -> InitialTriple:
    """
    Draw a member of ``phi_star(c)`` at angle ``theta``.

    β and γ are placed a quarter turn apart so βγ̄ is imaginary, with
    |β|² + |γ|² = c. Then |β - γ|² = c and the last condition reduces to
    cos(θ_α - θ_{β-γ}) = cos θ, fixing the phase of α up to a sign.
    """
    theta = check_theta(theta, open_interval=True)
    if not c > 0:
        raise ValueError(f"c must be positive, got {c}")
    rng = _rng(seed)
    root_c = math.sqrt(c)
    for _ in range(max_tries):
        split = rng.uniform(0.0, math.pi / 2)
        th_b = rng.uniform(0.0, 2 * math.pi)
        turn = math.pi / 2 if rng.integers(2) else -math.pi / 2
        beta = cmath.rect(root_c * math.cos(split), th_b)
        gamma = cmath.rect(root_c * math.sin(split), th_b + turn)
        diff = beta - gamma
        required_cos = 2.0 * c * math.cos(theta) / (2.0 * root_c * abs(diff))
        if abs(required_cos) > 1.0:
            continue
        sign = 1.0 if rng.integers(2) else -1.0
        th_a = math.atan2(diff.imag, diff.real) + sign * math.acos(required_cos)
        triple = InitialTriple(cmath.rect(root_c, th_a), beta, gamma)
        if in_phi_star(triple, c, theta):
            return triple
    raise RuntimeError(f"no phi_star({c}) member found in {max_tries} draws")


def sample_non_member(
    seed=None,
    *,
    exclude_perp: bool = True,
    c: float | None = None,
    theta: float | None = None,
) -> InitialTriple:
    """Uniform draw from the unit polydisc, rejecting accidental class members."""
    rng = _rng(seed)
    while True:
        r = np.sqrt(rng.uniform(0.0, 1.0, 3))
        ph = rng.uniform(0.0, 2 * math.pi, 3)
        triple = InitialTriple(*(r * np.exp(1j * ph)))
        if exclude_perp and in_phi_perp(triple):
            continue
        if c is not None and theta is not None and in_phi_star(triple, c, theta):
            continue
        return triple


# --------------------------------------------------------------------------- #
# class checkers
# --------------------------------------------------------------------------- #


def check_theorem2(
    theta: float, n_max: int, num_samples: int, seed: int | None = None
) -> list[TheoremReport]:
    """
    Sample members and non-members of ``phi_perp`` and test both against simulation.

    Members must keep a symmetric distribution and zero first moment through
    ``n_max``; non-members must show a non-zero moment by n = 3, witnessed by
    the closed-form m(1), m(2), m(3).
    """
    theta = check_theta(theta, open_interval=True)
    seeds = spawn_seeds(seed, 2 * num_samples)
    reports: list[TheoremReport] = []
    for s in seeds[:num_samples]:
        triple = sample_phi_perp(s)
        sym_ok, sym_v = empirical_symmetric(triple, theta, n_max)
        mom_ok, mom_v = empirical_zero_moment(triple, theta, n_max)
        reports.append(
            TheoremReport(triple, in_phi_perp(triple), sym_ok and mom_ok,
                          max(sym_v, mom_v), n_max, s)
        )
    for s in seeds[num_samples:]:
        triple = sample_non_member(s)
        witness = max(abs(m) for m in closed_moments(triple, theta))
        mom_ok, _ = empirical_zero_moment(triple, theta, min(n_max, 3))
        reports.append(
            TheoremReport(triple, in_phi_perp(triple),
                          mom_ok and witness < EMPIRICAL_TOL, witness, min(n_max, 3), s)
        )
    return reports


def check_theorem3(
    theta: float, c: float, n_max: int, num_samples: int, seed: int | None = None
) -> list[TheoremReport]:
    """
    Members of ``phi_star(c)`` must conserve ‖X(n)‖² = c through ``n_max``;
    non-members must deviate by n = 3 (closed forms for n ≤ 3 as witness).
    """
    theta = check_theta(theta, open_interval=True)
    if not c > 0:
        raise ValueError(f"c must be positive, got {c}")
    seeds = spawn_seeds(seed, 2 * num_samples)
    reports: list[TheoremReport] = []
    for s in seeds[:num_samples]:
        triple = sample_phi_star(c, theta, s)
        ok, worst = empirical_conserved(triple, theta, c, n_max)
        reports.append(
            TheoremReport(triple, in_phi_star(triple, c, theta), ok, worst, n_max, s)
        )
    for s in seeds[num_samples:]:
        triple = sample_non_member(s, exclude_perp=False, c=c, theta=theta)
        witness = max(abs(v - c) for v in small_n_norms(triple, theta))
        ok, _ = empirical_conserved(triple, theta, c, min(n_max, 3))
        reports.append(
            TheoremReport(triple, in_phi_star(triple, c, theta),
                          ok and witness < EMPIRICAL_TOL, witness, min(n_max, 3), s)
        )
    return reports


def check_corollary4(
    c: float, theta: float, num_samples: int, seed: int | None = None
) -> CorollaryReport:
    theta = check_theta(theta, open_interval=True)
    if not c > 0:
        raise ValueError(f"c must be positive, got {c}")
    seeds = spawn_seeds(seed, 2 * num_samples)
    perp = [sample_phi_perp(s) for s in seeds[:num_samples]]
    star = [sample_phi_star(c, theta, s) for s in seeds[num_samples:]]
    return CorollaryReport(
        c=c,
        theta=theta,
        samples_per_side=num_samples,
        perp_in_star=[t for t in perp if in_phi_star(t, c, theta)],
        star_in_perp=[t for t in star if in_phi_perp(t)],
    )
