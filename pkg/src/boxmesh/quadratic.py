"""Closed-form interpolation errors for diagonal quadratic forms.

Everything here is exact arithmetic on the model ``Q(x) = sum_i A_i x_i^2``:
the sup-norm error of its multilinear interpolant on a centered box, the
box shape minimising that error at fixed volume, and the dimensional
constant that the sharp convergence theory is built from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .geometry import Signature


@dataclass(frozen=True)
class QuadraticModel:
    """Diagonal quadratic form with positive coefficients listed first."""

    coeffs: tuple[float, ...]
    signature: Signature

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        k, d = self.signature.k, self.signature.d
        if len(coeffs) != d:
            raise ConfigurationError(f"expected {d} coefficients, got {len(coeffs)}")
        for i, c in enumerate(coeffs):
            if c == 0 or not math.isfinite(c):
                raise ConfigurationError(f"coefficient {i} must be finite and nonzero")
            if i < k and c <= 0:
                raise ConfigurationError(f"coefficient {i} must be positive for signature k={k}")
            if i >= k and c >= 0:
                raise ConfigurationError(f"coefficient {i} must be negative for signature k={k}")

    def __call__(self, x) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        return x**2 @ np.asarray(self.coeffs)


def gamma(sig: Signature) -> float:
    """Sharp asymptotic constant of the sup-norm error for signature (k, d)."""
    k, d = sig.k, sig.d
    if k in (0, d):
        return d / 8.0
    return 0.125 * k ** (k / d) * (d - k) ** (1.0 - k / d)


def interpolant_constant(q: QuadraticModel, halfwidths) -> float:
    """Value of the multilinear interpolant of ``q`` on a centered box.

    The interpolant of a diagonal quadratic on ``prod [-h_i, h_i]`` is the
    constant ``sum_i A_i h_i^2``.
    """
    h = np.asarray(halfwidths, dtype=float)
    return float(np.asarray(q.coeffs) @ h**2)


def quad_error_on_centered_box(q: QuadraticModel, halfwidths) -> float:
    """Exact sup-norm interpolation error of ``q`` on ``prod [-h_i, h_i]``.

    Equals ``max(sum_{i<k} A_i h_i^2, sum_{i>=k} |A_i| h_i^2)``; either sum
    may be empty.  Zero halfwidths (collapsed boxes) are allowed.
    """
    h = np.asarray(halfwidths, dtype=float)
    if h.shape != (q.signature.d,):
        raise ConfigurationError("one halfwidth per axis required")
    if np.any(h < 0):
        raise ConfigurationError("halfwidths must be nonnegative")
    a = np.asarray(q.coeffs)
    k = q.signature.k
    s_pos = float(np.sum(a[:k] * h[:k] ** 2))
    s_neg = float(np.sum(-a[k:] * h[k:] ** 2))
    return max(s_pos, s_neg)


def optimal_box_halfwidths(sig: Signature, volume: float) -> np.ndarray:
    """Halfwidths minimising the unit-coefficient error at fixed box volume.

    For mixed signature the optimum splits into one halfwidth for the k
    positive axes and another for the rest; for definite forms it is a cube.
    ``2^d * prod(h)`` equals ``volume`` exactly up to roundoff.
    """
    if volume <= 0:
        raise ConfigurationError("volume must be positive")
    k, d = sig.k, sig.d
    v_root = volume ** (1.0 / d)
    if sig.definite:
        return np.full(d, 0.5 * v_root)
    r = (d - k) / k
    h_pos = 0.5 * r ** ((d - k) / (2.0 * d)) * v_root
    h_neg = 0.5 * r ** (-k / (2.0 * d)) * v_root
    return np.concatenate([np.full(k, h_pos), np.full(d - k, h_neg)])


def min_error_fixed_volume(q: QuadraticModel, volume: float) -> float:
    """Minimal sup-norm interpolation error of ``q`` over boxes of a volume.

    Mixed signature: ``(1/4) k^(k/d) (d-k)^(1-k/d) (V sqrt(prod|A_i|))^(2/d)``;
    definite: ``(d/4) (V sqrt(prod|A_i|))^(2/d)``.
    """
    if volume <= 0:
        raise ConfigurationError("volume must be positive")
    k, d = q.signature.k, q.signature.d
    scaled = volume * math.sqrt(float(np.prod(np.abs(q.coeffs))))
    if q.signature.definite:
        return (d / 4.0) * scaled ** (2.0 / d)
    return 0.25 * k ** (k / d) * (d - k) ** (1.0 - k / d) * scaled ** (2.0 / d)


def rescaled_optimal_halfwidths(q: QuadraticModel, volume: float) -> np.ndarray:
    """Optimal box shape for ``q`` at fixed volume, via per-axis rescaling.

    Axis ``i`` of the unit-coefficient optimum is stretched by
    ``|A_i|^(-1/2)``; the unit-form optimum is taken at the rescaled volume so
    that the result has volume ``volume`` again.
    """
    scale = 1.0 / np.sqrt(np.abs(np.asarray(q.coeffs)))
    unit_volume = volume / float(np.prod(scale))
    unit = optimal_box_halfwidths(q.signature, unit_volume)
    return unit * scale


def hessian_product(q: QuadraticModel) -> float:
    """Signed product of the pure second derivatives ``2 A_i``."""
    return float(np.prod(2.0 * np.asarray(q.coeffs)))
