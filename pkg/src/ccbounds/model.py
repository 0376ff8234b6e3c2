"""Problem definition for the cutoff Coulomb Hamiltonian.

The Hamiltonian family treated by this package is

    H = -omega * Laplacian - v / (r + b),    omega, v > 0,  b >= 0,

acting on  L2(R^3).  Everything downstream works in the reduced
convention omega = 1; the kinetic coefficient enters only through the
scaling reduction implemented by :func:`scale_reduce`, which maps the
three-parameter family onto the one-parameter family of cutoff shapes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class ProblemParams:
    """Kinetic coefficient, coupling strength, and cutoff radius.

    ``b == 0`` is admitted as the pure Coulomb limit even though the
    physical model has b > 0; every formula below degenerates to its
    hydrogenic counterpart continuously there, and the limit anchors
    the exactness regression tests.
    """

    omega: float = 1.0
    v: float = 1.0
    b: float = 0.0

    def __post_init__(self) -> None:
        if not self.omega > 0:
            raise DomainError(f"kinetic coefficient must be positive, got {self.omega}")
        if not self.v > 0:
            raise DomainError(f"coupling must be positive, got {self.v}")
        if self.b < 0:
            raise DomainError(f"cutoff radius must be non-negative, got {self.b}")


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial quantum number n >= 1 and angular momentum ell >= 0."""

    n: int
    ell: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"radial quantum number must be an integer >= 1, got {self.n}")
        if not isinstance(self.ell, int) or self.ell < 0:
            raise DomainError(f"angular momentum must be an integer >= 0, got {self.ell}")


@dataclass(frozen=True)
class ScaledProblem:
    """Outcome of the scaling reduction.

    Any eigenvalue of the original Hamiltonian equals ``energy_factor``
    times the matching eigenvalue of  -Laplacian - 1/(r + b_reduced).
    """

    b_reduced: float
    energy_factor: float

    def __post_init__(self) -> None:
        if self.b_reduced < 0:
            raise DomainError(f"reduced cutoff must be non-negative, got {self.b_reduced}")
        if not self.energy_factor > 0:
            raise DomainError(f"energy factor must be positive, got {self.energy_factor}")


def _check_radius(r) -> None:
    if np.any(np.asarray(r) <= 0):
        raise DomainError("radius must be positive")


def potential(params: ProblemParams, r):
    """Central potential -v/(r+b); strictly negative, increasing in r."""
    _check_radius(r)
    return -params.v / (r + params.b)


def potential_decomposition(params: ProblemParams, r):
    """Split -v/(r+b) into Coulomb, repulsive 1/r^2, and remainder parts.

    Returns the triple

        ( -v/r,  v b / r^2,  -v b^2 / (r^2 (r+b)) )

    whose sum is the potential exactly (up to roundoff).  The first two
    pieces form a solvable comparison Hamiltonian; the remainder is
    non-positive, which is what makes the second piece an upper
    envelope.  At b = 0 the split collapses to (-v/r, 0, 0).
    """
    _check_radius(r)
    v, b = params.v, params.b
    coulomb = -v / r
    repulsive = v * b / r**2
    remainder = -v * b**2 / (r**2 * (r + b))
    return coulomb, repulsive, remainder


def effective_potential(params: ProblemParams, ell: int, r):
    """Radial effective potential -v/(r+b) + ell(ell+1)/r^2."""
    _check_radius(r)
    return potential(params, r) + ell * (ell + 1) / r**2


def comparison_potentials(params: ProblemParams, ell: int, r):
    """Hydrogenic envelopes sandwiching the effective potential.

    Returns ``(below, above)`` where

        below(r) = -v/r + ell(ell+1)/r^2
        above(r) = -v/r + lam(lam+1)/r^2,   lam = lambda_eff(ell, v, b).

    For b > 0 the effective potential lies strictly between the two for
    every r > 0: the lower envelope drops the cutoff, the upper one
    absorbs it into a stronger centrifugal term, using
    lam(lam+1) = ell(ell+1) + v b.
    """
    _check_radius(r)
    v = params.v
    lam = lambda_eff(ell, v, params.b)
    below = -v / r + ell * (ell + 1) / r**2
    above = -v / r + lam * (lam + 1) / r**2
    return below, above


def lambda_eff(ell: int, v: float, b: float) -> float:
    """Effective angular momentum sqrt((ell + 1/2)^2 + v b) - 1/2.

    Chosen so that lam(lam+1) = ell(ell+1) + v b, i.e. the repulsive
    1/r^2 piece of the decomposition merges into the centrifugal term.
    Equals ell exactly at b = 0 and grows strictly with v*b.
    """
    if not v > 0:
        raise DomainError(f"coupling must be positive, got {v}")
    if b < 0:
        raise DomainError(f"cutoff radius must be non-negative, got {b}")
    return math.sqrt((ell + 0.5) ** 2 + v * b) - 0.5


def scale_reduce(params: ProblemParams) -> ScaledProblem:
    """Reduce (omega, v, b) to the unit-coupling problem.

    The substitution r -> (omega/v) r turns
    -omega Lap - v/(r+b) into (v^2/omega) [ -Lap - 1/(r + v b/omega) ],
    so the spectrum of the original operator is v^2/omega times the
    spectrum at omega = v = 1 with cutoff v b/omega.
    """
    return ScaledProblem(
        b_reduced=params.v * params.b / params.omega,
        energy_factor=params.v**2 / params.omega,
    )
