"""Exact S-wave eigencondition via Tricomi's confluent function U.

For ell = 0 the radial problem for -Delta - v/(r+b) is solvable in
closed form: substituting u = w e^{-kappa (r+b)} with kappa = sqrt(-E)
turns the radial equation into Kummer's equation in the shifted
variable 2 kappa (r+b), and the decaying-at-infinity solution is
Tricomi's U.  The Dirichlet condition u(0) = 0 then reads

    U( 1 - v/(2 sqrt(-E)),  2,  2 b sqrt(-E) ) = 0,

an exact quantization condition whose roots this module locates inside
the closed-form hydrogenic brackets.  It serves as the second,
fully independent cross-check of the shooting solver.

U itself is evaluated on the slice y = 2, z > 0 only, by three routes:

* x a non-positive integer: U reduces to the terminating series
  U(-m, 2, z) = z^m * sum_k (-m)_k (-m-1)_k (-1/z)^k / k!,
  a polynomial evaluated exactly;
* x >= 1/2: the Laplace integral
  U(x, 2, z) = (1/Gamma(x)) Int_0^inf e^{-zt} t^{x-1} (1+t)^{1-x} dt
  by adaptive quadrature, with the algebraic endpoint singularity
  handled by a weighted rule on [0, 1];
* otherwise: the three-term recurrence in x,
  U(a-1, 2, z) = (z + 2a - 2) U(a, 2, z) - a(a-1) U(a+1, 2, z),
  run downward from two quadrature seeds in [1/2, 5/2).  Downward is
  the dominant direction here (|U| grows rapidly as x decreases), so
  the recurrence is stable for the whole x range the eigencondition
  visits.

Never expanding around z = 0 sidesteps the logarithmic Kummer basis
that the integer second parameter y = 2 would otherwise force.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import gammaln

from .errors import ComputationError, DomainError
from .model import lambda_eff

_QUAD_RELERR_CAP = 1e-8


@dataclass(frozen=True)
class UArguments:
    """Argument triple for tricomi_u; only the y = 2 slice is supported."""

    x: float
    z: float
    y: float = 2.0

    def __post_init__(self) -> None:
        if not self.z > 0:
            raise DomainError(f"U argument z must be positive, got {self.z}")
        if self.y != 2.0:
            raise DomainError(f"only the y = 2 slice is supported, got y={self.y}")


@dataclass(frozen=True)
class SWaveRoot:
    """One root of the S-wave eigencondition."""

    n: int
    energy: float
    residual: float
    bracket_used: tuple[float, float]


def _u_integral(x: float, z: float) -> float:
    """Laplace-integral evaluation, valid for x > 0.

    Split at t = 1: the [0, 1] piece carries the t^(x-1) endpoint
    singularity and uses a quadrature rule with that algebraic weight
    built in; the tail piece is smooth.  The 1/Gamma(x) prefactor is
    applied in log space.
    """
    def head(t: float) -> float:
        return math.exp(-z * t) * (1.0 + t) ** (1.0 - x)

    def tail(t: float) -> float:
        return math.exp(-z * t) * t ** (x - 1.0) * (1.0 + t) ** (1.0 - x)

    p1, e1 = quad(head, 0.0, 1.0, weight="alg", wvar=(x - 1.0, 0.0),
                  epsabs=0.0, epsrel=1e-13, limit=300)
    p2, e2 = quad(tail, 1.0, np.inf, epsabs=1e-300, epsrel=1e-13, limit=300)
    scale = math.exp(-gammaln(x))
    value = (p1 + p2) * scale
    err = (e1 + e2) * scale
    if err > _QUAD_RELERR_CAP * max(abs(value), 1e-280):
        raise ComputationError(
            "quadrature for U did not converge to the accuracy target",
            details={"x": x, "z": z, "value": value, "abserr": err},
        )
    return value


def _u_terminating(m: int, z: float) -> float:
    """Exact polynomial U(-m, 2, z) through its terminating series."""
    total = 1.0
    term = 1.0
    for k in range(m):
        term *= (-m + k) * (-m - 1 + k) * (-1.0 / z) / (k + 1)
        total += term
    return z**m * total


def _u_recurrence(x: float, z: float) -> float:
    """Downward recurrence from quadrature seeds, for x < 2."""
    m = max(1, math.ceil(0.5 - x))
    a = x + m
    above = _u_integral(a + 1.0, z)
    cur = _u_integral(a, z)
    for _ in range(m):
        nxt = (z + 2.0 * a - 2.0) * cur - a * (a - 1.0) * above
        above, cur = cur, nxt
        a -= 1.0
    return cur


def tricomi_u(args: UArguments) -> float:
    """U(x, 2, z) on the domain needed by the eigencondition.

    Accurate to about 1e-9 relative over x in (-50, 2), z in (0, 1e3);
    exact (up to roundoff) when x is a non-positive integer.
    """
    x, z = args.x, args.z
    nearest = round(x)
    if nearest <= 0 and abs(x - nearest) <= 1e-12 * max(1.0, abs(nearest)):
        return _u_terminating(-int(nearest), z)
    if x >= 0.5:
        return _u_integral(x, z)
    return _u_recurrence(x, z)


def _eigencondition(energy: float, v: float, b: float) -> float:
    kappa = math.sqrt(-energy)
    return tricomi_u(UArguments(x=1.0 - v / (2.0 * kappa), z=2.0 * b * kappa))


def swave_exact(n: int, v: float, b: float, tol: float = 1e-12) -> SWaveRoot:
    """n-th root (in energy order) of the exact S-wave condition.

    Each level m is isolated inside its hydrogenic bracket
    [-v^2/(4 m^2), -v^2/(4 (m+lam)^2)].  For v*b > 2 consecutive
    brackets overlap, so levels are located sequentially and each
    search starts just above the previous root; the lowest sign change
    in the (possibly clipped) interval is the sought level.  Finding no
    sign change, or more than one, is reported as an error with the
    endpoint diagnostics rather than guessed around.
    """
    if n < 1:
        raise DomainError(f"radial index must be >= 1, got {n}")
    if not v > 0:
        raise DomainError(f"coupling must be positive, got {v}")
    if not b > 0:
        raise DomainError(f"exact S-wave condition requires b > 0, got {b}")
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    lam = lambda_eff(0, v, b)
    previous = -math.inf
    root = math.nan
    residual = math.nan
    bracket_used = (math.nan, math.nan)
    for m in range(1, n + 1):
        lo_full = -(v * v) / (4.0 * m * m)
        hi_full = -(v * v) / (4.0 * (m + lam) ** 2)
        bracket_used = (lo_full, hi_full)
        lo = max(lo_full, previous + abs(previous) * 1e-10)
        root, residual = _isolate_root(lo, hi_full, v, b, tol, level=m)
        previous = root
    return SWaveRoot(n=n, energy=root, residual=residual, bracket_used=bracket_used)


def _isolate_root(
    lo: float, hi: float, v: float, b: float, tol: float, level: int
) -> tuple[float, float]:
    """Locate the single sign change of the eigencondition in [lo, hi]."""
    scan_n = 256
    energies = np.linspace(lo, hi, scan_n + 1)
    values = [_eigencondition(e, v, b) for e in energies]
    crossings = [
        k
        for k in range(scan_n)
        if values[k] != 0.0 and np.sign(values[k + 1]) != np.sign(values[k])
    ]
    if not crossings:
        raise ComputationError(
            "no sign change of the S-wave eigencondition inside the bracket",
            details={
                "level": level,
                "bracket": (lo, hi),
                "endpoint_values": (values[0], values[-1]),
            },
        )
    if len(crossings) > 1:
        raise ComputationError(
            "ambiguous root isolation: multiple sign changes in one bracket",
            details={
                "level": level,
                "bracket": (lo, hi),
                "crossing_energies": [float(energies[k]) for k in crossings],
            },
        )
    k = crossings[0]
    a, fa = float(energies[k]), values[k]
    c, fc = float(energies[k + 1]), values[k + 1]
    for _ in range(200):
        mid = 0.5 * (a + c)
        fm = _eigencondition(mid, v, b)
        if fm == 0.0:
            a = c = mid
            fa = fm
            break
        if np.sign(fm) == np.sign(fa):
            a, fa = mid, fm
        else:
            c, fc = mid, fm
        if c - a <= max(tol, 4.0 * abs(mid) * np.finfo(float).eps):
            break
    else:
        raise ComputationError(
            "S-wave bisection exceeded its iteration cap",
            details={"level": level, "bracket": (a, c)},
        )
    energy = 0.5 * (a + c)
    best_val = _eigencondition(energy, v, b)
    # Newton polish with a centered-difference slope; keep the best
    # residual and never leave the certified interval.
    for _ in range(2):
        delta = max(1e-6 * abs(energy), 10.0 * (c - a), 1e-300)
        slope = (_eigencondition(energy + delta, v, b)
                 - _eigencondition(energy - delta, v, b)) / (2.0 * delta)
        if slope == 0.0:
            break
        candidate = energy - best_val / slope
        if not (a <= candidate <= c):
            break
        cand_val = _eigencondition(candidate, v, b)
        if abs(cand_val) >= abs(best_val):
            break
        energy, best_val = candidate, cand_val
    return energy, abs(best_val)
