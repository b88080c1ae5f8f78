"""Quantum-number bookkeeping, the confining potential family on (0, pi),
and the exact spectrum and eigenfunctions it supports.

Natural units hbar = mass = 1 are used everywhere, and ``m`` always means
the magnetic quantum number, never a mass.  Levels of the fixed-m problem
are labeled n = 0, 1, 2, ... from the ground state; the orbital number is
l = m + n, so m <= l holds by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .legendre import (
    NORMALIZATION_MAX_DEGREE,
    CapabilityError,
    assoc_legendre,
    theta_normalization,
)

__all__ = [
    "AnalyticState",
    "PotentialSpec",
    "QuantumNumbers",
    "analytic_eigenfunction",
    "analytic_energy",
    "azimuthal_mode",
    "effective_radial_potential",
    "from_schrodinger_form",
    "polar_potential",
    "quantum_lattice",
    "to_schrodinger_form",
]


def _as_float_array(x) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _check_open_interval(arr: np.ndarray) -> None:
    if np.any(arr <= 0.0) or np.any(arr >= math.pi):
        raise ValueError("theta must lie strictly inside (0, pi)")


def _check_closed_interval(arr: np.ndarray) -> None:
    if np.any(arr < 0.0) or np.any(arr > math.pi):
        raise ValueError("theta must lie in [0, pi]")


@dataclass(frozen=True)
class QuantumNumbers:
    """Level (m, n) of the fixed-m problem; the orbital number is l = m + n."""

    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError(f"magnetic quantum number must be nonnegative, got m={self.m}")
        if self.n < 0:
            raise ValueError(f"level index must be nonnegative, got n={self.n}")

    @property
    def l(self) -> int:
        return self.m + self.n

    @classmethod
    def from_orbital(cls, m: int, l: int) -> "QuantumNumbers":
        """Build from the conventional (m, l) labels; requires m <= l."""
        if l < m:
            raise ValueError(f"requires m <= l, got m={m}, l={l}")
        return cls(m, l - m)


@dataclass(frozen=True)
class PotentialSpec:
    """An evaluable 1D potential on the open interval (0, pi)."""

    evaluator: Callable[[float | np.ndarray], float | np.ndarray]
    label: str


@dataclass(frozen=True)
class AnalyticState:
    """A closed-form level: quantum numbers, energy, and unit-norm y(theta)."""

    qn: QuantumNumbers
    energy: float
    wavefunction: Callable[[float | np.ndarray], float | np.ndarray]


def polar_potential(m: int) -> PotentialSpec:
    """The confining potential (m^2 - 1/4) / (2 sin^2 theta) on (0, pi).

    For m >= 1 the walls diverge to +infinity at both endpoints; for m = 0
    the prefactor is negative and the potential dives to -infinity instead.
    Evaluation outside the open interval raises.
    """
    if m < 0:
        raise ValueError(f"magnetic quantum number must be nonnegative, got m={m}")
    strength = (m * m - 0.25) / 2.0

    def evaluate(theta: float | np.ndarray) -> float | np.ndarray:
        arr, scalar = _as_float_array(theta)
        _check_open_interval(arr)
        value = strength / np.square(np.sin(arr))
        return float(value) if scalar else value

    return PotentialSpec(evaluate, f"polar confinement m={m}")


def analytic_energy(qn: QuantumNumbers) -> float:
    """Exact level energy (1/2)(n + m + 1/2)^2.

    Algebraically identical to (1/2)(l(l+1) + 1/4) with l = m + n, which is
    why all levels sharing l are degenerate across m.
    """
    return 0.5 * (qn.n + qn.m + 0.5) ** 2


def analytic_eigenfunction(qn: QuantumNumbers) -> AnalyticState:
    """Closed-form level (m, n): y(theta) = N sqrt(sin theta) P_{m+n}^m(cos theta).

    The result is unit-normalized (integral of y^2 over (0, pi) is 1), its
    first lobe is positive, and it has exactly n interior sign changes.
    The wavefunction accepts the closed interval [0, pi]; it vanishes
    continuously at both endpoints.
    """
    l = qn.l
    if l > NORMALIZATION_MAX_DEGREE:
        raise CapabilityError(
            f"analytic eigenfunctions are limited to l <= {NORMALIZATION_MAX_DEGREE}, got l={l}"
        )
    norm = theta_normalization(l, qn.m)
    m = qn.m

    def wavefunction(theta: float | np.ndarray) -> float | np.ndarray:
        arr, scalar = _as_float_array(theta)
        _check_closed_interval(arr)
        value = norm * np.sqrt(np.sin(arr)) * assoc_legendre(l, m, np.cos(arr))
        return float(value) if scalar else value

    return AnalyticState(qn, analytic_energy(qn), wavefunction)


def to_schrodinger_form(theta_wavefunction: Callable) -> Callable:
    """Map an angular amplitude Theta(theta) to y(theta) = sqrt(sin theta) Theta."""

    def y(theta: float | np.ndarray) -> float | np.ndarray:
        arr, scalar = _as_float_array(theta)
        _check_open_interval(arr)
        value = np.sqrt(np.sin(arr)) * theta_wavefunction(arr)
        return float(value) if scalar else value

    return y


def from_schrodinger_form(y: Callable) -> Callable:
    """Inverse of :func:`to_schrodinger_form`: Theta(theta) = y / sqrt(sin theta).

    The division is why evaluation is restricted to the open interval.
    """

    def theta_wavefunction(theta: float | np.ndarray) -> float | np.ndarray:
        arr, scalar = _as_float_array(theta)
        _check_open_interval(arr)
        value = y(arr) / np.sqrt(np.sin(arr))
        return float(value) if scalar else value

    return theta_wavefunction


def azimuthal_mode(m: int, phi: float | np.ndarray) -> complex | np.ndarray:
    """Azimuthal factor e^{i m phi}; single-valuedness restricts m to integers."""
    if not float(m).is_integer():
        raise ValueError(f"single-valuedness requires integer m, got {m}")
    arr, scalar = _as_float_array(phi)
    value = np.exp(1j * int(m) * arr)
    return complex(value) if scalar else value


def effective_radial_potential(potential: Callable[[float], float], l: int, r: float) -> float:
    """Radial potential plus the centripetal barrier: V(r) + l(l+1)/(2 r^2)."""
    if l < 0:
        raise ValueError(f"orbital quantum number must be nonnegative, got l={l}")
    r = float(r)
    if r <= 0.0:
        raise ValueError(f"radius must be positive, got r={r}")
    return float(potential(r)) + l * (l + 1) / (2.0 * r * r)


def quantum_lattice(l_max: int) -> list[QuantumNumbers]:
    """All levels with 0 <= m <= l <= l_max, ordered by (l, m).

    The count is the triangular number (l_max + 1)(l_max + 2) / 2; the
    ground state of each fixed-m column sits on the diagonal l = m.
    """
    if l_max < 0:
        raise ValueError(f"l_max must be nonnegative, got {l_max}")
    return [
        QuantumNumbers.from_orbital(m, l)
        for l in range(l_max + 1)
        for m in range(l + 1)
    ]
