"""
Discrete-time quantum walk on the line.

One step maps

    Ψ_k^L(n+1) = a Ψ_{k+1}^L(n) + b Ψ_{k+1}^R(n)
    Ψ_k^R(n+1) = c Ψ_{k-1}^L(n) + d Ψ_{k-1}^R(n)

so the left component moves one site left and the right component one site
right. Both rows of a step-n state are stored on the window [-n, n].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Literal

import numpy as np

from .coin_and_state import (
    AmplitudeRow,
    InitialTriple,
    Qubit,
    UnitaryCoin,
    check_theta,
)

__all__ = [
    "ChiralityNorms",
    "QwState",
    "chirality_limits",
    "chirality_norms",
    "iter_qw_states",
    "qw_distribution",
    "qw_evolve",
    "qw_initial",
    "qw_step",
    "qw_to_rca_triple",
]

Chirality = Literal["left", "right"]


@dataclass(frozen=True)
class QwState:
    time: int
    left_row: AmplitudeRow
    right_row: AmplitudeRow


@dataclass(frozen=True)
class ChiralityNorms:
    left_sq: float
    right_sq: float

    @property
    def total(self) -> float:
        return self.left_sq + self.right_sq


def qw_initial(qubit: Qubit) -> QwState:
    """State at time 0 with the whole qubit at the origin."""
    return QwState(
        0,
        AmplitudeRow(0, np.array([qubit.alpha_l])),
        AmplitudeRow(0, np.array([qubit.alpha_r])),
    )


def qw_step(state: QwState, coin: UnitaryCoin) -> QwState:
    lo, hi = state.left_row.lo, state.left_row.hi
    if (state.right_row.lo, state.right_row.hi) != (lo, hi):
        lo, hi = min(lo, state.right_row.lo), max(hi, state.right_row.hi)
    psi_l = state.left_row.window(lo, hi)
    psi_r = state.right_row.window(lo, hi)

    # new window [lo-1, hi+1]: left movers land at index j, right movers at j+2
    width = hi - lo + 3
    new_l = np.zeros(width, dtype=np.complex128)
    new_r = np.zeros(width, dtype=np.complex128)
    new_l[:-2] = coin.a * psi_l + coin.b * psi_r
    new_r[2:] = coin.c * psi_l + coin.d * psi_r
    return QwState(
        state.time + 1, AmplitudeRow(lo - 1, new_l), AmplitudeRow(lo - 1, new_r)
    )


def iter_qw_states(qubit: Qubit, coin: UnitaryCoin, n: int) -> Iterator[QwState]:
    """Yield the states at times 0, 1, ..., n."""
    if n < 0:
        raise ValueError(f"step count must be non-negative, got {n}")
    state = qw_initial(qubit)
    yield state
    for _ in range(n):
        state = qw_step(state, coin)
        yield state


def qw_evolve(qubit: Qubit, coin: UnitaryCoin, n: int) -> QwState:
    state = None
    for state in iter_qw_states(qubit, coin, n):
        pass
    return state


def qw_distribution(state: QwState) -> dict[int, float]:
    """Per-site probability |Ψ^L|² + |Ψ^R|² over the stored window."""
    lo = min(state.left_row.lo, state.right_row.lo)
    hi = max(state.left_row.hi, state.right_row.hi)
    prob = (
        np.abs(state.left_row.window(lo, hi)) ** 2
        + np.abs(state.right_row.window(lo, hi)) ** 2
    )
    return {k: float(p) for k, p in zip(range(lo, hi + 1), prob)}


def chirality_norms(state: QwState) -> ChiralityNorms:
    return ChiralityNorms(
        float(np.sum(state.left_row.probabilities())),
        float(np.sum(state.right_row.probabilities())),
    )


def qw_to_rca_triple(
    qubit: Qubit, coin: UnitaryCoin, chirality: Chirality
) -> InitialTriple:
    """
    RCA initial triple whose evolution reproduces one chirality row of the walk.

    The left row is seeded by (Ψ₀^L(0), aΨ₀^L(0) + bΨ₀^R(0), 0), the right row
    by (Ψ₀^R(0), 0, cΨ₀^L(0) + dΨ₀^R(0)).
    """
    psi_l, psi_r = qubit.alpha_l, qubit.alpha_r
    if chirality == "left":
        return InitialTriple(psi_l, coin.a * psi_l + coin.b * psi_r, 0j)
    if chirality == "right":
        return InitialTriple(psi_r, 0j, coin.c * psi_l + coin.d * psi_r)
    raise ValueError(f"chirality must be 'left' or 'right', got {chirality!r}")


def chirality_limits(qubit: Qubit, theta: float) -> tuple[float, float]:
    """
    Long-time limits of ‖Ψ^L(n)‖² and ‖Ψ^R(n)‖² for the H(θ) walk.

    Parameters
    ----------
    qubit : Qubit
        Initial qubit at the origin.
    theta : float
        Coin angle in (0, π/2).

    Returns
    -------
    (float, float)
        Left and right limits; they sum to one.
    """
    theta = check_theta(theta, open_interval=True)
    s, c = math.sin(theta), math.cos(theta)
    ratio = (1.0 - s) / c
    pl = abs(qubit.alpha_l) ** 2
    pr = abs(qubit.alpha_r) ** 2
    cross = 2.0 * (qubit.alpha_l * qubit.alpha_r.conjugate()).real

    left = (
        (1.0 + c * c) * pl + s * s * pr + s * c * cross - (2.0 * c * pl + s * cross) * ratio
    ) / (2.0 * s)
    right = (
        (1.0 + c * c) * pr + s * s * pl - s * c * cross - (2.0 * c * pr - s * cross) * ratio
    ) / (2.0 * s)
    return left, right
