"""
Reversible cellular automaton obtained by uncoupling the walk's chiralities.

General form::

    X_k(n+2) = a X_{k+1}(n+1) + d X_{k-1}(n+1) - Δ X_k(n)

and for the H(θ) coin (a = cos θ, d = -cos θ, Δ = -1)::

    X_k(n+2) = cos θ [X_{k+1}(n+1) - X_{k-1}(n+1)] + X_k(n)

A state holds two consecutive rows. Each forward step widens the stored
window by one cell per side; a backward step narrows it by one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

from .coin_and_state import AmplitudeRow, InitialTriple, UnitaryCoin, check_theta

__all__ = [
    "MomentReport",
    "RcaCoefficients",
    "RcaState",
    "closed_moments",
    "first_moment",
    "iter_rca_rows",
    "moment_report",
    "rca_evolve",
    "rca_initial",
    "rca_step_back",
    "rca_step_general",
    "rca_step_theta",
    "small_n_norms",
    "squared_norm",
]


@dataclass(frozen=True)
class RcaState:
    time: int
    row_n: AmplitudeRow
    row_np1: AmplitudeRow


@dataclass(frozen=True)
class RcaCoefficients:
    a: complex
    d: complex
    delta: complex

    @classmethod
    def from_theta(cls, theta: float) -> RcaCoefficients:
        c = math.cos(check_theta(theta))
        return cls(complex(c), complex(-c), -1 + 0j)

    @classmethod
    def from_coin(cls, coin: UnitaryCoin) -> RcaCoefficients:
        return cls(coin.a, coin.d, coin.delta)


@dataclass(frozen=True)
class MomentReport:
    n: int
    norm_sq: float
    first_moment: float


def rca_initial(triple: InitialTriple) -> RcaState:
    return RcaState(
        0,
        AmplitudeRow(0, np.array([triple.alpha])),
        AmplitudeRow(-1, np.array([triple.beta, 0j, triple.gamma])),
    )


def rca_step_general(state: RcaState, coeffs: RcaCoefficients) -> RcaState:
    prev, cur = state.row_n, state.row_np1
    lo, hi = cur.lo - 1, cur.hi + 1
    nxt = (
        coeffs.a * cur.window(lo + 1, hi + 1)
        + coeffs.d * cur.window(lo - 1, hi - 1)
        - coeffs.delta * prev.window(lo, hi)
    )
    return RcaState(state.time + 1, cur, AmplitudeRow(lo, nxt))


def rca_step_theta(state: RcaState, theta: float) -> RcaState:
    return rca_step_general(state, RcaCoefficients.from_theta(theta))


def rca_step_back(state: RcaState, theta: float) -> RcaState:
    """
    Rewind one step: X_k(n) = X_k(n+2) - cos θ [X_{k+1}(n+1) - X_{k-1}(n+1)].

    The recovered row is stored on the window of ``row_n`` shrunk by one cell
    per side, mirroring the widening done by the forward step.
    """
    if state.time < 1:
        raise ValueError("cannot step back from time 0")
    c = math.cos(check_theta(theta))
    mid, top = state.row_n, state.row_np1
    lo, hi = mid.lo + 1, mid.hi - 1
    prev = top.window(lo, hi) - c * (mid.window(lo + 1, hi + 1) - mid.window(lo - 1, hi - 1))
    return RcaState(state.time - 1, AmplitudeRow(lo, prev), mid)


Coefficients = Union[float, RcaCoefficients]


def _coefficients(theta_or_coeffs: Coefficients) -> RcaCoefficients:
    if isinstance(theta_or_coeffs, RcaCoefficients):
        return theta_or_coeffs
    return RcaCoefficients.from_theta(theta_or_coeffs)


def iter_rca_rows(
    triple: InitialTriple, theta_or_coeffs: Coefficients, n: int
) -> Iterator[AmplitudeRow]:
    """Yield rows X(0), X(1), ..., X(n) without holding the whole trajectory."""
    if n < 0:
        raise ValueError(f"step count must be non-negative, got {n}")
    coeffs = _coefficients(theta_or_coeffs)
    state = rca_initial(triple)
    yield state.row_n
    if n == 0:
        return
    yield state.row_np1
    for _ in range(n - 1):
        state = rca_step_general(state, coeffs)
        yield state.row_np1


def rca_evolve(
    triple: InitialTriple, theta_or_coeffs: Coefficients, n: int
) -> list[AmplitudeRow]:
    """Rows X(0) .. X(n); ``theta_or_coeffs`` is an angle or general coefficients."""
    return list(iter_rca_rows(triple, theta_or_coeffs, n))


def squared_norm(row: AmplitudeRow) -> float:
    return float(np.sum(row.probabilities()))


def first_moment(row: AmplitudeRow) -> float:
    """m = Σ_k k |X_k|²."""
    k = np.arange(row.lo, row.hi + 1, dtype=np.float64)
    return float(np.sum(k * row.probabilities()))


def moment_report(n: int, row: AmplitudeRow) -> MomentReport:
    return MomentReport(n, squared_norm(row), first_moment(row))


def _cross_terms(triple: InitialTriple) -> tuple[float, float, float]:
    """(α(β̄−γ̄)+c.c., βγ̄+c.c., α(β̄+γ̄)+c.c.), all real."""
    alpha, beta, gamma = triple
    p_minus = 2.0 * (alpha * (beta - gamma).conjugate()).real
    q = 2.0 * (beta * gamma.conjugate()).real
    p_plus = 2.0 * (alpha * (beta + gamma).conjugate()).real
    return p_minus, q, p_plus


def closed_moments(triple: InitialTriple, theta: float) -> tuple[float, float, float]:
    """Closed forms of the first moment m(1), m(2), m(3)."""
    theta = check_theta(theta)
    c = math.cos(theta)
    c2 = math.cos(2.0 * theta)
    skew = abs(triple.gamma) ** 2 - abs(triple.beta) ** 2
    _, _, p_plus = _cross_terms(triple)
    m1 = skew
    m2 = 2.0 * c * c * skew
    m3 = 0.5 * (3.0 * c2 * c2 + 2.0 * c2 + 1.0) * skew - 0.5 * math.sin(theta) * math.sin(
        2.0 * theta
    ) * p_plus
    return m1, m2, m3


def small_n_norms(
    triple: InitialTriple, theta: float
) -> tuple[float, float, float, float]:
    """Closed forms of ‖X(n)‖² for n = 0, 1, 2, 3."""
    theta = check_theta(theta)
    c = math.cos(theta)
    cc = c * c
    pa = abs(triple.alpha) ** 2
    pbg = abs(triple.beta) ** 2 + abs(triple.gamma) ** 2
    p_minus, q, _ = _cross_terms(triple)
    n0 = pa
    n1 = pbg
    n2 = pa + 2.0 * cc * pbg - cc * q - c * p_minus
    n3 = (
        2.0 * cc * pa
        + (2.0 * cc * cc + (1.0 - 2.0 * cc) ** 2) * pbg
        + 2.0 * cc * (1.0 - 2.0 * cc) * q
        + c * (1.0 - 3.0 * cc) * p_minus
    )
    return n0, n1, n2, n3
