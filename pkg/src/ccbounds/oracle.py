"""Independent radial Schroedinger solver (Numerov shooting).

Solves the reduced radial problem

    -u'' + [ ell(ell+1)/r^2 + V(r) ] u = E u,    u(0) = 0,  u(r_max) = 0,

for V(r) = -v/(r+b) (cutoff Coulomb) or V(r) = r (linear), by a fixed
fourth-order Numerov sweep combined with bisection on the interior node
count.  By Sturm oscillation theory the number of interior sign changes
of the shooting solution at trial energy E equals the number of
eigenvalues below E, so the predicate "node count >= n" flips exactly
at the n-th Dirichlet eigenvalue and bisection on it cannot be fooled
by stiff or nearly degenerate spectra.

This module is deliberately independent of the envelope machinery: it
shares only the closed-form hydrogenic bracket used to seed the
bisection, so agreement between the two routes is a genuine
cross-check rather than a tautology.

Accuracy notes, encoded in the domain-sizing helpers below:

* ``u`` develops the Coulomb tail r^(v/kappa) e^(-kappa r), so the
  outer box must absorb both the exponential decay margin and the
  polynomial growth factor; ignoring the latter costs orders of
  magnitude for higher states (the box error dominates the h^4
  discretization error long before the grid does).
* near r = 0 the centrifugal term makes h^2 q / 12 of order
  ell(ell+1)/(12 i^2) at the i-th grid point, independent of h, and
  the scheme's first steps break down for ell >= 3; the sweep therefore
  starts a few points out, where that factor is small, seeded by the
  Frobenius series of the regular solution.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .errors import ComputationError, DomainError
from .model import lambda_eff

#: Ceiling on the grid step; the auto grid uses npts = r_max / H_TARGET.
H_TARGET = 0.002
#: e-folds of |u|^2 decay demanded beyond the outer turning point.
BOX_MARGIN = 26.0


@dataclass(frozen=True)
class SolverConfig:
    """Discretization and convergence controls.

    ``r_max = None`` (default) sizes the domain automatically from the
    decay rate of the target state; an explicit value overrides it.
    ``grid_points`` is a lower bound on the number of grid intervals;
    the solver raises it as needed to keep the step below H_TARGET.
    ``energy_tol`` is the relative width at which bisection stops.
    """

    r_max: float | None = None
    grid_points: int = 1000
    energy_tol: float = 1e-12
    max_iterations: int = 200

    def __post_init__(self) -> None:
        if self.r_max is not None and not self.r_max > 0:
            raise DomainError(f"r_max must be positive, got {self.r_max}")
        if self.grid_points < 1000:
            raise DomainError(f"grid_points must be at least 1000, got {self.grid_points}")
        if not self.energy_tol > 0:
            raise DomainError(f"energy_tol must be positive, got {self.energy_tol}")
        if self.max_iterations < 1:
            raise DomainError(f"max_iterations must be at least 1, got {self.max_iterations}")


@dataclass(frozen=True, eq=False)
class RadialSolution:
    """Converged eigenpair of one radial problem.

    ``wavefunction`` is the reduced radial function u sampled on
    ``r_grid`` (which starts at r = 0 with u = 0), normalized to unit
    L2 norm; ``node_count`` is its number of interior zeros, always
    n - 1 for the n-th state.
    """

    energy: float
    node_count: int
    r_grid: np.ndarray = field(repr=False)
    wavefunction: np.ndarray = field(repr=False)
    converged: bool


@njit(cache=True)
def _sweep_nodes(q, h, i0, u1, u2):
    """Count sign changes of the Numerov solution of u'' = -q u.

    q[i] belongs to r_i = i*h; the sweep starts from the two seeds
    u1 = u(i0*h), u2 = u((i0+1)*h) and runs to the last grid point.
    Zeros of u are not counted as crossings, and overflow is kept at
    bay by rescaling (which cannot change the count).
    """
    npts = q.shape[0] - 1
    h2 = h * h
    nodes = 0
    prev = u1
    cur = u2
    sign_prev = 1 if prev > 0 else (-1 if prev < 0 else 0)
    s = 1 if cur > 0 else (-1 if cur < 0 else 0)
    if s != 0 and sign_prev != 0 and s != sign_prev:
        nodes += 1
    if s != 0:
        sign_prev = s
    for i in range(i0 + 1, npts):
        c_next = 1.0 + h2 * q[i + 1] / 12.0
        c_cur = 2.0 * (1.0 - 5.0 * h2 * q[i] / 12.0)
        c_prev = 1.0 + h2 * q[i - 1] / 12.0
        nxt = (c_cur * cur - c_prev * prev) / c_next
        prev = cur
        cur = nxt
        if abs(cur) > 1e250:
            cur *= 1e-250
            prev *= 1e-250
        s = 1 if cur > 0 else (-1 if cur < 0 else 0)
        if s != 0 and sign_prev != 0 and s != sign_prev:
            nodes += 1
        if s != 0:
            sign_prev = s
    return nodes


@njit(cache=True)
def _sweep_record(q, h, i0, u1, u2, out):
    """Same sweep as _sweep_nodes but records u into ``out``.

    Rescaling against overflow is applied retroactively to the filled
    prefix so the recorded array stays one consistent solution.
    """
    npts = q.shape[0] - 1
    h2 = h * h
    out[i0] = u1
    out[i0 + 1] = u2
    prev = u1
    cur = u2
    for i in range(i0 + 1, npts):
        c_next = 1.0 + h2 * q[i + 1] / 12.0
        c_cur = 2.0 * (1.0 - 5.0 * h2 * q[i] / 12.0)
        c_prev = 1.0 + h2 * q[i - 1] / 12.0
        nxt = (c_cur * cur - c_prev * prev) / c_next
        prev = cur
        cur = nxt
        if abs(cur) > 1e250:
            cur *= 1e-250
            prev *= 1e-250
            for k in range(i + 1):
                out[k] *= 1e-250
        out[i + 1] = cur


def _frobenius_start(ell: int, energy: float, vm1: float, v0: float, v1: float, r: float) -> float:
    """Regular solution near r = 0 for V = vm1/r + v0 + v1*r (+ centrifugal).

    Series u = r^(ell+1) (1 + c1 r + c2 r^2 + c3 r^3) with coefficients
    from matching powers in the radial equation.
    """
    c1 = vm1 / (2.0 * ell + 2.0)
    c2 = (vm1 * c1 + (v0 - energy)) / (2.0 * (2.0 * ell + 3.0))
    c3 = (vm1 * c2 + (v0 - energy) * c1 + v1) / (3.0 * (2.0 * ell + 4.0))
    return r ** (ell + 1) * (1.0 + c1 * r + c2 * r**2 + c3 * r**3)


def _start_index(ell: int, vm1: float, h: float) -> int:
    """First grid index where the Numerov coefficients are trustworthy.

    Keeps h^2 |q| / 12 below about 0.05 for both the centrifugal and
    any 1/r singular part at the starting points.
    """
    ell_term = math.sqrt(ell * (ell + 1) / 0.06) if ell > 0 else 0.0
    coul_term = abs(vm1) * h / 0.06
    return max(1, math.ceil(ell_term), math.ceil(coul_term))


def _clean_tail(u: np.ndarray, q: np.ndarray) -> None:
    """Zero out the exponentially amplified garbage beyond the turnaround.

    A one-sided shooting solution at a bisection-converged energy still
    carries an admixture of the growing mode; past the outer classical
    turning point |u| first decays and then turns around and blows up
    again, often past the physical peak (the long safety box amplifies
    the admixture by many orders of magnitude).  All oscillation lives
    in the classically allowed region q >= 0, so the |u| minimum beyond
    the last allowed point is the noise crossover; everything after it
    is removed before normalization.
    """
    allowed = np.flatnonzero(q[1:] >= 0.0)
    if allowed.size == 0:
        return
    turn = int(allowed[-1]) + 1
    cut = turn + int(np.argmin(np.abs(u[turn:])))
    u[cut + 1 :] = 0.0


def _count_nodes(u: np.ndarray) -> int:
    """Interior sign changes of a sampled function, ignoring exact zeros."""
    signs = np.sign(u[1:])
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def _coulomb_box(ell: int, v: float, b: float, e_up: float) -> float:
    """Automatic outer radius for a cutoff-Coulomb state.

    Measures from (an overestimate of) the outer turning point of the
    shallowest admissible energy and adds a margin chosen so that

        2 kappa margin - (v/kappa) log(r_max)  >=  BOX_MARGIN,

    i.e. the Dirichlet box perturbs |u|^2 ~ r^(v/kappa) e^(-2 kappa r)
    by less than e^(-BOX_MARGIN) even after the polynomial factor has
    eaten its share.  Solved by a short fixed-point iteration.
    """
    kappa = math.sqrt(-e_up)
    turning = v / (-e_up) + b + math.sqrt(ell * (ell + 1)) / kappa
    r_max = turning + 0.5 * BOX_MARGIN / kappa
    for _ in range(4):
        margin = (BOX_MARGIN + (v / kappa) * max(0.0, math.log(r_max))) / (2.0 * kappa)
        r_max = turning + margin
    return r_max


def _grid_size(r_max: float, config: SolverConfig) -> int:
    return max(config.grid_points, int(math.ceil(r_max / H_TARGET)))


def _bisect_nodes(
    nodes_at,
    n: int,
    lo: float,
    hi: float,
    config: SolverConfig,
    context: dict,
) -> tuple[float, float]:
    """Shrink [lo, hi] around the n-th eigenvalue by node-count bisection."""
    if nodes_at(lo) >= n:
        raise ComputationError(
            "lower bracket already contains the target state",
            details=dict(context, lo=lo, hi=hi),
        )
    if nodes_at(hi) < n:
        raise ComputationError(
            "upper bracket does not reach the target state",
            details=dict(context, lo=lo, hi=hi),
        )
    for _ in range(config.max_iterations):
        mid = 0.5 * (lo + hi)
        if nodes_at(mid) >= n:
            hi = mid
        else:
            lo = mid
        if abs(hi - lo) <= config.energy_tol * max(abs(lo), abs(hi), 1e-30):
            return lo, hi
    raise ComputationError(
        "energy bisection exceeded max_iterations",
        details=dict(context, lo=lo, hi=hi, max_iterations=config.max_iterations),
    )


def _finish(
    n: int,
    ell: int,
    lo: float,
    hi: float,
    vgrid: np.ndarray,
    h: float,
    i0: int,
    series_args: tuple[float, float, float],
    context: dict,
) -> RadialSolution:
    """Record, clean, and package the solution at the certified energy."""
    vm1, v0, v1 = series_args
    npts = vgrid.shape[0] - 1
    u = np.zeros(npts + 1)
    # Record at the low side of the final bracket: its node count is
    # n - 1 by the bisection invariant.
    q = lo - vgrid
    q[0] = 0.0
    for i in range(1, i0 + 2):
        u[i] = _frobenius_start(ell, lo, vm1, v0, v1, i * h)
    _sweep_record(q, h, i0, u[i0], u[i0 + 1], u)
    _clean_tail(u, q)
    norm = math.sqrt(float(np.trapezoid(u * u, dx=h)))
    if norm > 0:
        u /= norm
    nodes = _count_nodes(u)
    if nodes != n - 1:
        raise ComputationError(
            "recorded wavefunction has the wrong node count",
            details=dict(context, expected=n - 1, found=nodes),
        )
    r = np.arange(npts + 1) * h
    return RadialSolution(
        energy=0.5 * (lo + hi),
        node_count=nodes,
        r_grid=r,
        wavefunction=u,
        converged=True,
    )


def solve_cutoff_coulomb(
    n: int,
    ell: int,
    v: float,
    b: float,
    config: SolverConfig = SolverConfig(),
) -> RadialSolution:
    """n-th eigenvalue of -Delta - v/(r+b) in the ell sector.

    The initial energy bracket is the closed-form hydrogenic one
    (slightly widened so the degenerate b = 0 case keeps a nonzero
    search interval); the result always lies inside the unwidened
    bracket for b > 0.
    """
    if n < 1 or ell < 0:
        raise DomainError(f"need n >= 1 and ell >= 0, got n={n}, ell={ell}")
    if not v > 0 or b < 0:
        raise DomainError(f"need v > 0 and b >= 0, got v={v}, b={b}")
    lam = lambda_eff(ell, v, b)
    lo = -(v * v) / (4.0 * (n + ell) ** 2) * (1.0 + 1e-5)
    hi = -(v * v) / (4.0 * (n + lam) ** 2) * (1.0 - 1e-5)
    r_max = config.r_max if config.r_max is not None else _coulomb_box(ell, v, b, hi)
    npts = _grid_size(r_max, config)
    h = r_max / npts

    if b == 0.0:
        series_args = (-v, 0.0, 0.0)
    else:
        series_args = (0.0, -v / b, v / b**2)
    vm1, v0, v1 = series_args
    i0 = _start_index(ell, vm1, h)
    r = np.arange(1, npts + 1) * h
    vgrid = np.empty(npts + 1)
    vgrid[0] = 0.0
    vgrid[1:] = -v / (r + b) + ell * (ell + 1) / r**2

    def nodes_at(energy: float) -> int:
        q = energy - vgrid
        q[0] = 0.0
        u1 = _frobenius_start(ell, energy, vm1, v0, v1, i0 * h)
        u2 = _frobenius_start(ell, energy, vm1, v0, v1, (i0 + 1) * h)
        return _sweep_nodes(q, h, i0, u1, u2)

    context = {"problem": "cutoff-coulomb", "n": n, "ell": ell, "v": v, "b": b}
    lo, hi = _bisect_nodes(nodes_at, n, lo, hi, config, context)
    return _finish(n, ell, lo, hi, vgrid, h, i0, series_args, context)


def solve_linear(
    n: int,
    ell: int,
    config: SolverConfig = SolverConfig(),
) -> RadialSolution:
    """n-th eigenvalue of -Delta + r in the ell sector.

    The lower bracket is the rigorous Coulomb-basis envelope bound
    3 ((n+ell)^2/4)^(1/3); the upper end starts from a heuristic guess
    and is geometrically expanded (rebuilding the grid, since the box
    must cover the larger turning point) until it captures the state.
    """
    if n < 1 or ell < 0:
        raise DomainError(f"need n >= 1 and ell >= 0, got n={n}, ell={ell}")
    p_lo = float(n + ell)
    lo = 3.0 * (p_lo * p_lo / 4.0) ** (1.0 / 3.0) * (1.0 - 1e-9)
    hi = 3.0 * ((p_lo + 1.0) ** 2 / 4.0) ** (1.0 / 3.0) * 1.1
    series_args = (0.0, 0.0, 1.0)
    context = {"problem": "linear", "n": n, "ell": ell}

    for _ in range(60):
        # Linear-potential states decay like exp(-(2/3) s^(3/2)) past
        # the turning point at s = E - (centrifugal), so a fixed margin
        # of 8 beyond E is plenty for any state considered here.
        r_max = config.r_max if config.r_max is not None else hi + 8.0
        npts = _grid_size(r_max, config)
        h = r_max / npts
        i0 = _start_index(ell, 0.0, h)
        r = np.arange(1, npts + 1) * h
        vgrid = np.empty(npts + 1)
        vgrid[0] = 0.0
        vgrid[1:] = r + ell * (ell + 1) / r**2

        def nodes_at(energy: float) -> int:
            q = energy - vgrid
            q[0] = 0.0
            u1 = _frobenius_start(ell, energy, 0.0, 0.0, 1.0, i0 * h)
            u2 = _frobenius_start(ell, energy, 0.0, 0.0, 1.0, (i0 + 1) * h)
            return _sweep_nodes(q, h, i0, u1, u2)

        if nodes_at(hi) >= n:
            lo_f, hi_f = _bisect_nodes(nodes_at, n, lo, hi, config, context)
            return _finish(n, ell, lo_f, hi_f, vgrid, h, i0, series_args, context)
        hi *= 1.3
    raise ComputationError(
        "failed to capture the linear-potential state while expanding the bracket",
        details=dict(context, last_hi=hi),
    )
