"""Angular confinement toolkit.

The polar angle equation of the central-force problem, rewritten as a 1D
Schrödinger problem on (0, pi) with the confining potential family
V_m(theta) = (m^2 - 1/4) / (2 sin^2 theta).  The package provides the exact
spectrum E = (1/2)(n + m + 1/2)^2 and eigenfunctions built on associated
Legendre functions, an independent finite-difference eigensolver, and
verification suites that cross-check the two against each other.
"""

from .legendre import (
    CapabilityError,
    assoc_legendre,
    legendre_coefficients,
    legendre_poly,
    rodrigues_oracle,
    theta_normalization,
)
from .model import (
    AnalyticState,
    PotentialSpec,
    QuantumNumbers,
    analytic_eigenfunction,
    analytic_energy,
    azimuthal_mode,
    effective_radial_potential,
    from_schrodinger_form,
    polar_potential,
    quantum_lattice,
    to_schrodinger_form,
)
from .solver import (
    EigenSolution,
    Grid,
    TridiagonalOperator,
    discretize,
    eigenvector,
    lowest_eigenvalues,
    observables,
    richardson_extrapolate,
    solve_polar,
    sturm_count,
)
from .verify import (
    CaseResult,
    VerificationReport,
    analytic_variance,
    verify_confinement,
    verify_degeneracy,
    verify_orthonormality,
    verify_residual,
    verify_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticState",
    "CapabilityError",
    "CaseResult",
    "EigenSolution",
    "Grid",
    "PotentialSpec",
    "QuantumNumbers",
    "TridiagonalOperator",
    "VerificationReport",
    "__version__",
    "analytic_eigenfunction",
    "analytic_energy",
    "analytic_variance",
    "assoc_legendre",
    "azimuthal_mode",
    "discretize",
    "effective_radial_potential",
    "eigenvector",
    "from_schrodinger_form",
    "legendre_coefficients",
    "legendre_poly",
    "lowest_eigenvalues",
    "observables",
    "polar_potential",
    "quantum_lattice",
    "richardson_extrapolate",
    "rodrigues_oracle",
    "solve_polar",
    "sturm_count",
    "theta_normalization",
    "to_schrodinger_form",
    "verify_confinement",
    "verify_degeneracy",
    "verify_orthonormality",
    "verify_residual",
    "verify_spectrum",
]
