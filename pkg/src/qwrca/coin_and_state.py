"""
Core value types: coins, qubits, lattice rows and RCA initial triples.

Amplitudes are plain Python ``complex`` scalars (double precision). Lattice
rows are dense ``complex128`` arrays anchored at an integer origin offset;
cells outside the stored window read as exact zeros.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "COMPLEX_TOL",
    "AmplitudeRow",
    "InitialTriple",
    "Qubit",
    "UnitarityReport",
    "UnitaryCoin",
    "check_theta",
    "make_qubit",
    "make_theta_coin",
    "validate_unitary",
]

COMPLEX_TOL = 1e-12


def _as_complex(value: complex, name: str) -> complex:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{name} must be finite, got {z!r}")
    return z


def check_theta(theta: float, *, open_interval: bool = False) -> float:
    """
    Validate a coin angle.

    Engines accept the closed range [0, π/2]; spectral and classification
    code requires the open range (0, π/2).
    """
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError(f"theta must be finite, got {theta!r}")
    if open_interval:
        if not 0.0 < theta < math.pi / 2:
            raise ValueError(f"theta must lie in (0, pi/2), got {theta!r}")
    elif not 0.0 <= theta <= math.pi / 2:
        raise ValueError(f"theta must lie in [0, pi/2], got {theta!r}")
    return theta


@dataclass(frozen=True)
class UnitaryCoin:
    """2×2 coin ``[[a, b], [c, d]]``; ``delta`` caches det = ad − bc.

    Construction does not enforce unitarity; use :func:`validate_unitary`.
    """

    a: complex
    b: complex
    c: complex
    d: complex
    delta: complex = field(init=False)

    def __post_init__(self) -> None:
        for name in "abcd":
            object.__setattr__(self, name, _as_complex(getattr(self, name), name))
        object.__setattr__(self, "delta", self.a * self.d - self.b * self.c)

    def matrix(self) -> NDArray[np.complex128]:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=np.complex128)


@dataclass(frozen=True)
class UnitarityReport:
    residuals: dict[str, float]
    tol: float

    @property
    def passed(self) -> bool:
        return all(r < self.tol for r in self.residuals.values())

    @property
    def failures(self) -> list[str]:
        return [name for name, r in self.residuals.items() if not r < self.tol]


def validate_unitary(coin: UnitaryCoin, tol: float = COMPLEX_TOL) -> UnitarityReport:
    """
    Check the four unitarity identities of a 2×2 coin.

    Parameters
    ----------
    coin : UnitaryCoin
    tol : float
        Residual threshold for every identity.

    Returns
    -------
    UnitarityReport
        Residuals keyed by ``columns_normalized`` (|a|²+|c|² = |b|²+|d|² = 1),
        ``columns_orthogonal`` (a c̄ + b d̄ = 0), ``delta_relations``
        (c = −Δ b̄, d = Δ ā) and ``det_unit_modulus`` (|Δ| = 1).
    """
    a, b, c, d, delta = coin.a, coin.b, coin.c, coin.d, coin.delta
    residuals = {
        "columns_normalized": max(
            abs(abs(a) ** 2 + abs(c) ** 2 - 1.0), abs(abs(b) ** 2 + abs(d) ** 2 - 1.0)
        ),
        "columns_orthogonal": abs(a * c.conjugate() + b * d.conjugate()),
        "delta_relations": max(
            abs(c + delta * b.conjugate()), abs(d - delta * a.conjugate())
        ),
        "det_unit_modulus": abs(abs(delta) - 1.0),
    }
    return UnitarityReport(residuals=residuals, tol=tol)


def make_theta_coin(theta: float) -> UnitaryCoin:
    """Return H(θ) = [[cos θ, sin θ], [sin θ, −cos θ]] for θ ∈ [0, π/2]."""
    theta = check_theta(theta)
    c, s = math.cos(theta), math.sin(theta)
    return UnitaryCoin(c, s, s, -c)


@dataclass(frozen=True)
class Qubit:
    alpha_l: complex
    alpha_r: complex

    def __iter__(self) -> Iterator[complex]:
        yield self.alpha_l
        yield self.alpha_r


def make_qubit(alpha_l: complex, alpha_r: complex, tol: float = COMPLEX_TOL) -> Qubit:
    """Build a normalized qubit; raises ``ValueError`` if |α_l|²+|α_r|² ≠ 1."""
    alpha_l = _as_complex(alpha_l, "alpha_l")
    alpha_r = _as_complex(alpha_r, "alpha_r")
    norm = abs(alpha_l) ** 2 + abs(alpha_r) ** 2
    if abs(norm - 1.0) > tol:
        raise ValueError(f"qubit norm must be 1 (tol {tol:g}), got {norm!r}")
    return Qubit(alpha_l, alpha_r)


@dataclass(frozen=True)
class InitialTriple:
    """RCA initial data (α, β, γ) = (X₀(0), X₋₁(1), X₁(1))."""

    alpha: complex
    beta: complex
    gamma: complex

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, _as_complex(getattr(self, name), name))

    def __iter__(self) -> Iterator[complex]:
        yield self.alpha
        yield self.beta
        yield self.gamma

    def scaled(self, s: complex) -> InitialTriple:
        return InitialTriple(s * self.alpha, s * self.beta, s * self.gamma)

    def as_reals(self) -> list[float]:
        return [p for z in self for p in (z.real, z.imag)]


@dataclass(frozen=True, eq=False)
class AmplitudeRow:
    """
    Amplitudes on a finite window of the integer lattice.

    ``values[j]`` holds the amplitude at site ``origin_offset + j``. The
    array is copied and frozen on construction.
    """

    origin_offset: int
    values: NDArray[np.complex128]

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=np.complex128, copy=True).reshape(-1)
        if not np.all(np.isfinite(arr)):
            raise ValueError("row amplitudes must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "origin_offset", int(self.origin_offset))

    @classmethod
    def from_sites(cls, amplitudes: dict[int, complex]) -> AmplitudeRow:
        if not amplitudes:
            return cls(0, np.zeros(0))
        lo, hi = min(amplitudes), max(amplitudes)
        vals = np.zeros(hi - lo + 1, dtype=np.complex128)
        for k, z in amplitudes.items():
            vals[k - lo] = z
        return cls(lo, vals)

    @classmethod
    def zeros(cls, lo: int, hi: int) -> AmplitudeRow:
        return cls(lo, np.zeros(max(hi - lo + 1, 0)))

    @property
    def lo(self) -> int:
        return self.origin_offset

    @property
    def hi(self) -> int:
        return self.origin_offset + len(self.values) - 1

    def sites(self) -> range:
        return range(self.lo, self.hi + 1)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int) -> complex:
        j = k - self.origin_offset
        if 0 <= j < len(self.values):
            return complex(self.values[j])
        return 0j

    def window(self, lo: int, hi: int) -> NDArray[np.complex128]:
        """Dense copy of sites lo..hi inclusive, zero-filled outside storage."""
        out = np.zeros(max(hi - lo + 1, 0), dtype=np.complex128)
        src_lo, src_hi = max(lo, self.lo), min(hi, self.hi)
        if src_lo <= src_hi:
            out[src_lo - lo : src_hi - lo + 1] = self.values[
                src_lo - self.lo : src_hi - self.lo + 1
            ]
        return out

    def symmetric_window(self) -> tuple[int, NDArray[np.complex128]]:
        """Return (m, values on sites −m..m) covering the stored support."""
        m = max(abs(self.lo), abs(self.hi)) if len(self) else 0
        return m, self.window(-m, m)

    def _combine(self, other: AmplitudeRow, sign: float) -> AmplitudeRow:
        if len(self) == 0:
            return AmplitudeRow(other.lo, sign * other.values)
        if len(other) == 0:
            return self
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        return AmplitudeRow(lo, self.window(lo, hi) + sign * other.window(lo, hi))

    def __add__(self, other: AmplitudeRow) -> AmplitudeRow:
        return self._combine(other, 1.0)

    def __sub__(self, other: AmplitudeRow) -> AmplitudeRow:
        return self._combine(other, -1.0)

    def __mul__(self, s: complex) -> AmplitudeRow:
        return AmplitudeRow(self.origin_offset, complex(s) * self.values)

    __rmul__ = __mul__

    def probabilities(self) -> NDArray[np.float64]:
        return np.abs(self.values) ** 2

    def as_dict(self) -> dict[int, complex]:
        return {k: complex(v) for k, v in zip(self.sites(), self.values)}

    def max_abs_diff(self, other: AmplitudeRow) -> float:
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        if hi < lo:
            return 0.0
        return float(np.max(np.abs(self.window(lo, hi) - other.window(lo, hi))))

