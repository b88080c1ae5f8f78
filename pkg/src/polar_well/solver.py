"""Finite-difference eigensolver for -(1/2) y'' + V(theta) y = E y on (0, pi)
with Dirichlet boundaries y(0) = y(pi) = 0.

The Hamiltonian is discretized with the symmetric three-point stencil on a
uniform interior grid; boundary unknowns are simply omitted, so a potential
that diverges at the endpoints is never evaluated there.  Eigenvalues come
from Sturm-sequence bisection (the count of negative pivots in the shifted
LDL^T factorization equals the number of eigenvalues below the shift), which
extracts only the lowest k levels with guaranteed brackets.  Eigenvectors
come from shifted inverse iteration with a fixed random seed so repeated
runs are bit-for-bit reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from numba import njit
from scipy.linalg import solve_banded

from .model import PotentialSpec, polar_potential

__all__ = [
    "EigenSolution",
    "Grid",
    "INVERSE_ITERATION_SEED",
    "TridiagonalOperator",
    "discretize",
    "eigenvector",
    "lowest_eigenvalues",
    "observables",
    "richardson_extrapolate",
    "solve_polar",
    "sturm_count",
]

# Fixed so verification reports are reproducible run to run.
INVERSE_ITERATION_SEED = 1318


@dataclass(frozen=True)
class Grid:
    """Uniform interior nodes theta_i = i h, i = 1..n_interior, h = pi/(n+1)."""

    n_interior: int

    def __post_init__(self) -> None:
        if self.n_interior < 1:
            raise ValueError(f"grid needs at least one interior node, got {self.n_interior}")

    @property
    def spacing(self) -> float:
        return math.pi / (self.n_interior + 1)

    @property
    def nodes(self) -> np.ndarray:
        return self.spacing * np.arange(1, self.n_interior + 1)


@dataclass(frozen=True)
class TridiagonalOperator:
    """Symmetric tridiagonal matrix stored as its diagonal and off-diagonal."""

    diagonal: np.ndarray
    off_diagonal: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "diagonal", np.ascontiguousarray(self.diagonal, dtype=float))
        object.__setattr__(
            self, "off_diagonal", np.ascontiguousarray(self.off_diagonal, dtype=float)
        )
        if self.off_diagonal.shape != (max(self.diagonal.size - 1, 0),):
            raise ValueError("off-diagonal must be one entry shorter than the diagonal")

    @property
    def size(self) -> int:
        return self.diagonal.size

    def apply(self, vector: np.ndarray) -> np.ndarray:
        """Matrix-vector product (Dirichlet ends: missing neighbors are zero)."""
        out = self.diagonal * vector
        out[:-1] += self.off_diagonal * vector[1:]
        out[1:] += self.off_diagonal * vector[:-1]
        return out


@dataclass(frozen=True)
class EigenSolution:
    """One level: energy, unit-norm grid vector, node count, and provenance."""

    energy: float
    vector: np.ndarray
    node_count: int
    provenance: str  # "analytic" or "numeric"


def discretize(potential: PotentialSpec, grid: Grid) -> TridiagonalOperator:
    """Three-point central-difference Hamiltonian on the interior nodes.

    diagonal_i = 1/h^2 + V(theta_i), off-diagonal = -1/(2 h^2) uniformly.
    """
    values = np.asarray(potential.evaluator(grid.nodes), dtype=float)
    if not np.all(np.isfinite(values)):
        raise ValueError(f"potential '{potential.label}' is not finite at every grid node")
    h2 = grid.spacing**2
    diagonal = 1.0 / h2 + values
    off_diagonal = np.full(grid.n_interior - 1, -0.5 / h2)
    return TridiagonalOperator(diagonal, off_diagonal)


@njit(cache=True)
def _negative_pivot_count(
    diagonal: np.ndarray, off_sq: np.ndarray, shift: float, pivmin: float
) -> int:
    # Pivots smaller than pivmin are replaced by -pivmin: counted as negative
    # (an exact hit on a leading-minor eigenvalue sits "just below" the
    # shift), and sized so off_sq / pivmin cannot overflow.
    count = 0
    d = diagonal[0] - shift
    if abs(d) < pivmin:
        d = -pivmin
    if d < 0.0:
        count += 1
    for i in range(1, diagonal.shape[0]):
        d = (diagonal[i] - shift) - off_sq[i - 1] / d
        if abs(d) < pivmin:
            d = -pivmin
        if d < 0.0:
            count += 1
    return count


def _pivot_floor(off_sq: np.ndarray) -> float:
    largest = float(off_sq.max()) if off_sq.size else 1.0
    return max(largest, 1.0) * np.finfo(np.float64).tiny


def sturm_count(op: TridiagonalOperator, shift: float) -> int:
    """Number of eigenvalues of `op` strictly below `shift`."""
    off_sq = np.ascontiguousarray(op.off_diagonal * op.off_diagonal)
    return int(_negative_pivot_count(op.diagonal, off_sq, float(shift), _pivot_floor(off_sq)))


def lowest_eigenvalues(op: TridiagonalOperator, k: int, tol: float) -> np.ndarray:
    """The k smallest eigenvalues, ascending, by Sturm-sequence bisection.

    Each eigenvalue is bracketed to a width <= tol (absolute), starting from
    the Gershgorin enclosure of the whole spectrum.
    """
    n = op.size
    if not 1 <= k <= n:
        raise ValueError(f"k must be between 1 and {n}, got {k}")
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    diagonal = op.diagonal
    off_sq = np.ascontiguousarray(op.off_diagonal * op.off_diagonal)
    pivmin = _pivot_floor(off_sq)
    reach = np.zeros(n)
    if n > 1:
        off_abs = np.abs(op.off_diagonal)
        reach[:-1] += off_abs
        reach[1:] += off_abs
    lower = float(np.min(diagonal - reach))
    upper = float(np.max(diagonal + reach)) + tol  # strictly above the top eigenvalue
    out = np.empty(k)
    a = lower
    for j in range(1, k + 1):
        b = upper
        # invariant: count(a) < j <= count(b)
        while b - a > tol:
            mid = 0.5 * (a + b)
            if not a < mid < b:
                break  # interval narrower than the local float resolution
            if _negative_pivot_count(diagonal, off_sq, mid, pivmin) >= j:
                b = mid
            else:
                a = mid
        out[j - 1] = 0.5 * (a + b)
    return out


def _sign_changes(vector: np.ndarray, rel_floor: float = 1e-10) -> int:
    """Sign changes ignoring entries below rel_floor * max|v| (solver noise)."""
    significant = np.abs(vector) > rel_floor * np.max(np.abs(vector))
    signs = np.sign(vector[significant])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def eigenvector(
    op: TridiagonalOperator,
    eigenvalue: float,
    grid: Grid,
    *,
    seed: int = INVERSE_ITERATION_SEED,
    max_iterations: int = 20,
) -> EigenSolution:
    """Shifted inverse iteration for the eigenvector at `eigenvalue`.

    Needs the eigenvalue isolated from its neighbors by more than the
    bracketing tolerance; typically converges in 2-3 iterations.  The result
    is unit-normalized in the trapezoidal dtheta measure, sign-fixed so the
    first above-noise component is positive, and carries its interior
    sign-change count.
    """
    n = op.size
    if grid.n_interior != n:
        raise ValueError(f"grid has {grid.n_interior} nodes but operator has {n}")
    banded = np.zeros((3, n))
    banded[0, 1:] = op.off_diagonal
    banded[1] = op.diagonal - eigenvalue
    banded[2, :-1] = op.off_diagonal
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n)
    v /= np.linalg.norm(v)
    for _ in range(max_iterations):
        try:
            w = solve_banded((1, 1), banded, v)
        except np.linalg.LinAlgError:
            # exactly singular shift: nudge the diagonal and retry
            banded[1] += 1e-14 * max(abs(eigenvalue), 1.0)
            continue
        w /= np.linalg.norm(w)
        overlap = float(np.dot(w, v))
        v = w if overlap >= 0.0 else -w
        if 1.0 - abs(overlap) < 1e-13:
            break
    else:
        raise RuntimeError(
            f"inverse iteration did not converge in {max_iterations} iterations; "
            "the eigenvalue is likely mis-bracketed or degenerate"
        )
    v /= math.sqrt(grid.spacing * float(np.dot(v, v)))
    significant = np.abs(v) > 1e-10 * np.max(np.abs(v))
    if v[int(np.argmax(significant))] < 0.0:
        v = -v
    return EigenSolution(float(eigenvalue), v, _sign_changes(v), "numeric")


def richardson_extrapolate(coarse: float, fine: float) -> float:
    """Cancel the leading O(h^2) error of paired runs at spacings h and h/2."""
    return (4.0 * fine - coarse) / 3.0


def observables(sol: EigenSolution, grid: Grid) -> tuple[float, float]:
    """Mean angle and variance about pi/2 in the trapezoidal measure."""
    weights = grid.spacing * np.square(sol.vector)
    theta = grid.nodes
    mean = float(np.dot(theta, weights))
    variance = float(np.dot(np.square(theta - 0.5 * math.pi), weights))
    return mean, variance


def solve_polar(
    m: int,
    n_levels: int,
    grid_size: int,
    extrapolate: bool = False,
    *,
    tol: float = 1e-10,
) -> list[EigenSolution]:
    """Lowest n_levels states of the index-m confining potential.

    With `extrapolate`, energies are Richardson-combined from runs at
    grid_size // 2 and grid_size; eigenvectors always come from the fine
    grid.  Solutions are ascending in energy with node counts 0, 1, ...
    """
    if n_levels < 1:
        raise ValueError(f"n_levels must be positive, got {n_levels}")
    if n_levels > grid_size:
        raise ValueError(f"n_levels={n_levels} exceeds grid_size={grid_size}")
    potential = polar_potential(m)
    grid = Grid(grid_size)
    op = discretize(potential, grid)
    energies = lowest_eigenvalues(op, n_levels, tol)
    solutions = [eigenvector(op, e, grid) for e in energies]
    if extrapolate:
        coarse = Grid(grid_size // 2)
        coarse_energies = lowest_eigenvalues(discretize(potential, coarse), n_levels, tol)
        solutions = [
            replace(sol, energy=richardson_extrapolate(ec, ef))
            for sol, ec, ef in zip(solutions, coarse_energies, energies)
        ]
    return solutions
