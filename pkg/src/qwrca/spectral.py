"""
Fourier-side analysis of the H(θ) automaton.

With X̃_n(ξ) = Σ_k e^{iξk} X_k(n) the automaton becomes the scalar recurrence

    X̃_{n+2} = cos θ (e^{-iξ} - e^{iξ}) X̃_{n+1} + X̃_n,

solved by X̃_n = A λ₊ⁿ + B λ₋ⁿ with unit-modulus roots λ₊ = e^{iφ},
λ₋ = -e^{-iφ}. The squared norm ‖X(n)‖² then splits into an n-independent
steady part and a (-1)ⁿ-signed block of four integrals over [θ - π/2, 0].

Those integrals carry a 1/√(cos²x - sin²θ) singularity at the lower end.
Substituting sin x = -cos θ sin u (u ∈ [0, π/2]) turns the measure
dx / (cos x √(cos²x - sin²θ)) into du / cos²x, which is smooth, and
√(cos²x - sin²θ) into cos θ cos u.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from .coin_and_state import InitialTriple, check_theta

__all__ = [
    "FourierCoefficients",
    "NormDecomposition",
    "QuadratureError",
    "SpectralPoint",
    "closed_form_norm",
    "coefficient_norms",
    "fourier_coefficients",
    "fourier_initial",
    "h_n_value",
    "norm_limit",
    "oscillatory_integrals",
    "parseval_grid_size",
    "parseval_norm",
    "spectral_point",
    "xt_closed",
    "xt_recurrence",
]

QUAD_TOL = 1e-10


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach its target accuracy."""

    def __init__(self, message: str, error_estimate: float):
        super().__init__(f"{message} (error estimate {error_estimate:.3e})")
        self.error_estimate = error_estimate


@dataclass(frozen=True)
class SpectralPoint:
    xi: float
    phi: float
    lambda_plus: complex
    lambda_minus: complex


@dataclass(frozen=True)
class FourierCoefficients:
    A: complex
    B: complex


@dataclass(frozen=True)
class NormDecomposition:
    """``steady`` is n-independent; ``oscillatory`` already includes (-1)ⁿ/π."""

    n: int
    steady: float
    oscillatory: float
    error_estimate: float

    @property
    def total(self) -> float:
        return self.steady + self.oscillatory


def spectral_point(xi: float, theta: float) -> SpectralPoint:
    theta = check_theta(theta, open_interval=True)
    sin_phi = -math.cos(theta) * math.sin(xi)
    cos_phi = math.sqrt(1.0 - sin_phi * sin_phi)
    return SpectralPoint(
        xi=float(xi),
        phi=math.atan2(sin_phi, cos_phi),
        lambda_plus=complex(cos_phi, sin_phi),
        lambda_minus=complex(-cos_phi, sin_phi),
    )


def fourier_initial(triple: InitialTriple, xi: float) -> tuple[complex, complex]:
    """Seeds X̃₀(ξ) = α and X̃₁(ξ) = e^{-iξ}β + e^{iξ}γ."""
    return triple.alpha, cmath.exp(-1j * xi) * triple.beta + cmath.exp(1j * xi) * triple.gamma


def fourier_coefficients(
    triple: InitialTriple, theta: float, xi: float
) -> FourierCoefficients:
    pt = spectral_point(xi, theta)
    x0, x1 = fourier_initial(triple, xi)
    e_plus = pt.lambda_plus
    e_minus = e_plus.conjugate()
    denom = e_plus + e_minus  # 2 cos φ > 0 for θ > 0
    return FourierCoefficients(
        A=(x0 * e_minus + x1) / denom,
        B=(x0 * e_plus - x1) / denom,
    )


def xt_closed(triple: InitialTriple, theta: float, xi: float, n: int) -> complex:
    """X̃_n(ξ) = A λ₊ⁿ + B λ₋ⁿ."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    pt = spectral_point(xi, theta)
    coef = fourier_coefficients(triple, theta, xi)
    if n == 0:
        return triple.alpha
    return coef.A * cmath.exp(1j * n * pt.phi) + coef.B * (-1) ** n * cmath.exp(
        -1j * n * pt.phi
    )


def xt_recurrence(triple: InitialTriple, theta: float, xi, n: int):
    """
    Iterate the ξ-space recurrence directly; ``xi`` may be a scalar or array.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    theta = check_theta(theta)
    xi_arr = np.asarray(xi, dtype=np.float64)
    mult = math.cos(theta) * (np.exp(-1j * xi_arr) - np.exp(1j * xi_arr))
    x_prev = np.full(xi_arr.shape, triple.alpha, dtype=np.complex128)
    x_cur = np.exp(-1j * xi_arr) * triple.beta + np.exp(1j * xi_arr) * triple.gamma
    if n == 0:
        out = x_prev
    else:
        for _ in range(n - 1):
            x_prev, x_cur = x_cur, mult * x_cur + x_prev
        out = x_cur
    return complex(out) if out.ndim == 0 else out


def parseval_grid_size(n: int) -> int:
    """Smallest power of two ≥ 2n + 4."""
    return 1 << max(2 * n + 3, 1).bit_length()


def parseval_norm(
    triple: InitialTriple, theta: float, n: int, grid_size: int | None = None
) -> float:
    """
    ‖X(n)‖² as (1/2π)∫|X̃_n(ξ)|² dξ on a uniform periodic grid.

    |X̃_n|² is a trigonometric polynomial of degree ≤ 2n + 2, so the
    trapezoid rule is exact once ``grid_size`` ≥ 2n + 4.
    """
    if grid_size is None:
        grid_size = parseval_grid_size(n)
    if grid_size < 2 * n + 4:
        raise ValueError(f"grid_size must be >= 2n+4 = {2 * n + 4}, got {grid_size}")
    xi = 2.0 * np.pi * np.arange(grid_size) / grid_size
    values = xt_recurrence(triple, theta, xi, n)
    return float(np.mean(np.abs(values) ** 2))


def coefficient_norms(
    triple: InitialTriple, theta: float, grid_size: int = 4096
) -> tuple[float, float]:
    """(‖A‖*², ‖B‖*²) by the periodic trapezoid rule (smooth integrands)."""
    xi = 2.0 * np.pi * np.arange(grid_size) / grid_size
    c = math.cos(check_theta(theta, open_interval=True))
    sin_phi = -c * np.sin(xi)
    cos_phi = np.sqrt(1.0 - sin_phi**2)
    e_plus = cos_phi + 1j * sin_phi
    x1 = np.exp(-1j * xi) * triple.beta + np.exp(1j * xi) * triple.gamma
    denom = 2.0 * cos_phi
    a_vals = (triple.alpha * np.conj(e_plus) + x1) / denom
    b_vals = (triple.alpha * e_plus - x1) / denom
    return float(np.mean(np.abs(a_vals) ** 2)), float(np.mean(np.abs(b_vals) ** 2))


def _invariants(triple: InitialTriple) -> tuple[float, float, float, float, float]:
    alpha, beta, gamma = triple
    pa = abs(alpha) ** 2
    pbg = abs(beta) ** 2 + abs(gamma) ** 2
    p_minus = 2.0 * (alpha * (beta - gamma).conjugate()).real
    q = 2.0 * (beta * gamma.conjugate()).real
    return pa, pbg, pa + pbg, p_minus, q


def norm_limit(triple: InitialTriple, theta: float) -> float:
    """n → ∞ limit of ‖X(n)‖² (the steady part of the decomposition)."""
    theta = check_theta(theta, open_interval=True)
    s, c = math.sin(theta), math.cos(theta)
    ratio = (1.0 - s) / c
    _, _, total, p_minus, q = _invariants(triple)
    return (total - p_minus * ratio - q * ratio * ratio) / (2.0 * s)


def _substituted_integral(theta: float, kernel, budget: int) -> tuple[float, float]:
    c = math.cos(theta)

    def integrand(u: float) -> float:
        sin_x = -c * math.sin(u)
        x = math.asin(sin_x)
        return kernel(x, u) / (1.0 - sin_x * sin_x)

    # roundoff warnings are expected once the estimate sits near 1e-13
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        value, err = integrate.quad(
            integrand, 0.0, math.pi / 2, epsabs=1e-13, epsrel=1e-12, limit=budget
        )
    if not err <= QUAD_TOL:
        detail = f": {caught[0].message}" if caught else ""
        raise QuadratureError(f"quadrature missed its 1e-10 target{detail}", err)
    return value, err


@lru_cache(maxsize=4096)
def oscillatory_integrals(theta: float, n: int) -> tuple[tuple[float, ...], float]:
    """
    The four integrals of the oscillatory block, after the endpoint substitution.

    Returns ``((I1, I2, I3, I4), max_error)`` where, over x ∈ [θ - π/2, 0] with
    w(x) = 1 / (cos x √(cos²x - sin²θ)),

    - I1 = ∫ cos(2(n-1)x) w dx
    - I2 = ∫ sin x sin((2n-1)x) w dx
    - I3 = ∫ cos(2nx) w dx
    - I4 = ∫ cos(2nx) √(cos²x - sin²θ) / cos x dx
    """
    theta = check_theta(theta, open_interval=True)
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    c = math.cos(theta)
    budget = 100 + 10 * n
    kernels = (
        lambda x, u: math.cos(2 * (n - 1) * x),
        lambda x, u: math.sin(x) * math.sin((2 * n - 1) * x),
        lambda x, u: math.cos(2 * n * x),
        lambda x, u: c * c * math.cos(2 * n * x) * math.cos(u) ** 2,
    )
    results = [_substituted_integral(theta, k, budget) for k in kernels]
    return tuple(v for v, _ in results), max(e for _, e in results)


def closed_form_norm(triple: InitialTriple, theta: float, n: int) -> NormDecomposition:
    """
    Exact ‖X(n)‖² split into steady and (-1)ⁿ-signed oscillatory parts.

    Raises
    ------
    QuadratureError
        If an integral fails to converge to 1e-10.
    """
    theta = check_theta(theta, open_interval=True)
    c = math.cos(theta)
    pa, pbg, _, p_minus, q = _invariants(triple)
    (i1, i2, i3, i4), err = oscillatory_integrals(theta, n)
    block = pa * i1 - p_minus / c * i2 - pbg * i3 - q * (2.0 / (c * c) * i4 - i3)
    weight = abs(pa) + abs(p_minus) / c + pbg + abs(q) * (2.0 / (c * c) + 1.0)
    return NormDecomposition(
        n=n,
        steady=norm_limit(triple, theta),
        oscillatory=(-1) ** n * block / math.pi,
        error_estimate=weight * err / math.pi,
    )


def _two_product(a, b):
    """Dekker's error-free product: a*b == p + e exactly."""
    p = a * b
    split = 134217729.0  # 2**27 + 1
    t = split * a
    a_hi = t - (t - a)
    a_lo = a - a_hi
    t = split * b
    b_hi = t - (t - b)
    b_lo = b - b_hi
    e = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return p, e


def _cos_mul(m: int, x):
    p, e = _two_product(float(m), x)
    return np.cos(p) - e * np.sin(p)


def _sin_mul(m: int, x):
    p, e = _two_product(float(m), x)
    return np.sin(p) + e * np.cos(p)


def h_n_value(x, n: int):
    """
    cos(2(n-1)x) - 2 sin x sin((2n-1)x) - cos(2nx), which vanishes identically.

    Each multiple-angle argument is formed without rounding error, so the
    result stays at roundoff level even for large n.
    """
    x = np.asarray(x, dtype=np.float64)
    out = _cos_mul(2 * (n - 1), x) - 2.0 * np.sin(x) * _sin_mul(2 * n - 1, x) - _cos_mul(
        2 * n, x
    )
    return float(out) if out.ndim == 0 else out
