"""Certified eigenvalue brackets for the cutoff Coulomb potential.

The library brackets every discrete eigenvalue of

    H = -omega * Delta - v / (r + b)

between rigorous lower and upper bounds assembled from potential
comparisons and envelope representations, and accompanies the bracket
with a semiclassical mean estimate.  Two independent checks are built
in: a high-order radial shooting solver (:mod:`ccbounds.oracle`) and,
for S states, the exact eigencondition in terms of Tricomi's confluent
function (:mod:`ccbounds.exact_swave`).
"""
from .envelope import (
    LOWER_ENVELOPE,
    LOWER_HYDROGENIC,
    REFERENCE_P_TABLE,
    UPPER_COULOMB_TAIL,
    UPPER_ENVELOPE,
    UPPER_LINEAR,
    CurvePoint,
    EnergyBracket,
    PNumbers,
    bracket,
    coulomb_bounds,
    envelope_energy,
    envelope_minimizer,
    kinetic_potential,
    linear_upper,
    p_number_from_linear,
    p_numbers,
    p_table,
    parametric_curve,
    tangent_line,
)
from .errors import ComputationError, DomainError
from .exact_swave import SWaveRoot, UArguments, swave_exact, tricomi_u
from .model import (
    ProblemParams,
    QuantumNumbers,
    ScaledProblem,
    comparison_potentials,
    effective_potential,
    lambda_eff,
    potential,
    potential_decomposition,
    scale_reduce,
)
from .oracle import RadialSolution, SolverConfig, solve_cutoff_coulomb, solve_linear

__version__ = "0.1.0"

__all__ = [
    "ComputationError",
    "CurvePoint",
    "DomainError",
    "EnergyBracket",
    "LOWER_ENVELOPE",
    "LOWER_HYDROGENIC",
    "PNumbers",
    "ProblemParams",
    "QuantumNumbers",
    "RadialSolution",
    "REFERENCE_P_TABLE",
    "SWaveRoot",
    "ScaledProblem",
    "SolverConfig",
    "UArguments",
    "UPPER_COULOMB_TAIL",
    "UPPER_ENVELOPE",
    "UPPER_LINEAR",
    "bracket",
    "comparison_potentials",
    "coulomb_bounds",
    "effective_potential",
    "envelope_energy",
    "envelope_minimizer",
    "kinetic_potential",
    "lambda_eff",
    "linear_upper",
    "p_number_from_linear",
    "p_numbers",
    "p_table",
    "parametric_curve",
    "potential",
    "potential_decomposition",
    "scale_reduce",
    "solve_cutoff_coulomb",
    "solve_linear",
    "swave_exact",
    "tangent_line",
    "tricomi_u",
    "__version__",
]
