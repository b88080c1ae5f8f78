"""Legendre polynomials and associated Legendre functions.

Two independent computational paths are provided.  ``legendre_poly`` and
``assoc_legendre`` are the production implementations, built on the standard
stable three-term recurrences.  ``rodrigues_oracle`` rebuilds the same
functions literally from the closed form: expand (x^2 - 1)^l with exact
integer binomial coefficients, differentiate the coefficient list l + m
times, and scale by (1 - x^2)^(m/2) / (2^l l!).  The oracle is slower and
capped at degree 30, but contains no recurrence, so the two paths can be
checked against each other without external tables.

Sign convention: the all-positive prefactor is used throughout, i.e. there
is NO Condon-Shortley (-1)^m phase.  ``scipy.special.lpmv`` and many texts
include that phase; comparisons against them must flip the sign for odd m.
Only m >= 0 is implemented; negative-order functions are proportional to
the positive-order ones and are not needed here.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

__all__ = [
    "CapabilityError",
    "NORMALIZATION_MAX_DEGREE",
    "RODRIGUES_MAX_DEGREE",
    "assoc_legendre",
    "legendre_coefficients",
    "legendre_poly",
    "rodrigues_oracle",
    "theta_normalization",
]

# Beyond degree 30 the expanded polynomial coefficients leave the range
# doubles resolve faithfully; the recurrence path has no such cap.
RODRIGUES_MAX_DEGREE = 30
# Factorial-ratio normalization stays inside double range up to here.
NORMALIZATION_MAX_DEGREE = 150


class CapabilityError(ValueError):
    """Input is valid but outside the range this implementation supports."""


def _as_float_array(x) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _check_unit_interval(arr: np.ndarray) -> None:
    if np.any(np.abs(arr) > 1.0):
        raise ValueError("argument must satisfy |x| <= 1")


def _check_degrees(l: int, m: int | None = None) -> None:
    if l < 0:
        raise ValueError(f"degree must be nonnegative, got l={l}")
    if m is not None and m < 0:
        raise ValueError(f"order must be nonnegative, got m={m}")


def legendre_poly(l: int, x: float | np.ndarray) -> float | np.ndarray:
    """Evaluate the Legendre polynomial P_l(x) for x in [-1, 1].

    Uses the three-term recurrence (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1},
    which keeps the endpoint identity P_l(1) = 1 exact in floating point.
    """
    _check_degrees(l)
    arr, scalar = _as_float_array(x)
    _check_unit_interval(arr)
    p_prev = np.ones_like(arr)
    if l == 0:
        return float(p_prev) if scalar else p_prev
    p = arr.copy()
    for k in range(1, l):
        p, p_prev = ((2 * k + 1) * arr * p - k * p_prev) / (k + 1), p
    return float(p) if scalar else p


def _expanded_pair_power(l: int) -> list[Fraction]:
    """Exact coefficients of (x^2 - 1)^l; index = power of x."""
    coeffs = [Fraction(0)] * (2 * l + 1)
    for k in range(l + 1):
        coeffs[2 * k] = Fraction((-1) ** (l - k) * math.comb(l, k))
    return coeffs


def _differentiated(coeffs: list[Fraction], times: int) -> list[Fraction]:
    for _ in range(times):
        coeffs = [k * c for k, c in enumerate(coeffs)][1:]
        if not coeffs:
            return [Fraction(0)]
    return coeffs


def _rodrigues_coefficients(l: int, m: int) -> list[Fraction]:
    scale = Fraction(1, 2**l * math.factorial(l))
    return [scale * c for c in _differentiated(_expanded_pair_power(l), l + m)]


def legendre_coefficients(l: int) -> np.ndarray:
    """Coefficients of P_l from the closed-form construction; index = power.

    The returned polynomial has degree exactly l and parity (-1)^l, so
    every other entry is identically zero.
    """
    _check_degrees(l)
    if l > RODRIGUES_MAX_DEGREE:
        raise CapabilityError(
            f"exact-coefficient path is limited to l <= {RODRIGUES_MAX_DEGREE}, got l={l}"
        )
    return np.array([float(c) for c in _rodrigues_coefficients(l, 0)])


def rodrigues_oracle(l: int, m: int, x: float | np.ndarray) -> float | np.ndarray:
    """Associated Legendre P_l^m by literal differentiation of (x^2 - 1)^l.

    All coefficient arithmetic is exact rational, so no recurrence enters;
    this is the independent reference the production path is tested
    against.  Degrees above ``RODRIGUES_MAX_DEGREE`` are refused.
    """
    _check_degrees(l, m)
    if l > RODRIGUES_MAX_DEGREE:
        raise CapabilityError(
            f"exact-coefficient path is limited to l <= {RODRIGUES_MAX_DEGREE}, got l={l}"
        )
    arr, scalar = _as_float_array(x)
    _check_unit_interval(arr)
    coeffs = [float(c) for c in _rodrigues_coefficients(l, m)]
    value = np.zeros_like(arr)
    for c in reversed(coeffs):
        value = value * arr + c
    if m:
        value = value * np.sqrt((1.0 - arr) * (1.0 + arr)) ** m
    return float(value) if scalar else value


def assoc_legendre(l: int, m: int, x: float | np.ndarray) -> float | np.ndarray:
    """Associated Legendre P_l^m(x) via the stable upward recurrence in l.

    Seeds with P_m^m = (2m-1)!! (1-x^2)^(m/2) (all-positive convention, no
    Condon-Shortley phase) and climbs
    (l-m) P_l^m = (2l-1) x P_{l-1}^m - (l+m-1) P_{l-2}^m.
    Returns 0 for m > l.
    """
    _check_degrees(l, m)
    arr, scalar = _as_float_array(x)
    _check_unit_interval(arr)
    if m > l:
        zero = np.zeros_like(arr)
        return float(zero) if scalar else zero
    p_prev = np.ones_like(arr)
    if m:
        s = np.sqrt((1.0 - arr) * (1.0 + arr))
        for k in range(1, m + 1):
            p_prev = p_prev * ((2 * k - 1) * s)
    if l == m:
        return float(p_prev) if scalar else p_prev
    p = (2 * m + 1) * arr * p_prev
    for k in range(m + 2, l + 1):
        p, p_prev = ((2 * k - 1) * arr * p - (k + m - 1) * p_prev) / (k - m), p
    return float(p) if scalar else p


def theta_normalization(l: int, m: int) -> float:
    """Constant N with integral_0^pi (N P_l^m(cos t))^2 sin t dt = 1.

    Closed form sqrt((2l+1)/2 * (l-m)!/(l+m)!), evaluated as a running
    product of 1/sqrt(k) so the factorial ratio never overflows.
    """
    _check_degrees(l, m)
    if m > l:
        raise ValueError(f"normalization requires m <= l, got m={m}, l={l}")
    if l > NORMALIZATION_MAX_DEGREE:
        raise CapabilityError(
            f"normalization is limited to l <= {NORMALIZATION_MAX_DEGREE}, got l={l}"
        )
    value = math.sqrt((2 * l + 1) / 2.0)
    for k in range(l - m + 1, l + m + 1):
        value /= math.sqrt(k)
    return value
