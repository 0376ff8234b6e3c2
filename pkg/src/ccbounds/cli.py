"""Command-line interface.

Subcommands:

* ``bounds``: certified bracket plus mean estimate for one level, with
  optional shooting-solver and exact S-wave cross-checks;
* ``curve``: the parametric coupling/energy curve traced by the
  envelope construction at fixed P;
* ``ptable``: the grid of effective quantum numbers P;
* ``exact``: roots of the exact S-wave eigencondition;
* ``verify``: the self-check battery (table regression, bracket
  ordering against the solver, scaling identity, round trips, tangent
  sandwich), reported as JSON.

Exit codes: 0 success, 1 usage error, 2 computation failure,
3 verification failure.  Output goes to stdout and is deterministic:
rerunning a command reproduces it byte for byte.  ``--format`` beats
the ``CCBOUNDS_FORMAT`` environment variable, which beats the default.
"""
from __future__ import annotations

import argparse
import functools
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from .envelope import (
    REFERENCE_P_TABLE,
    bracket,
    envelope_energy,
    kinetic_potential,
    linear_upper,
    p_number_from_linear,
    p_numbers,
    p_table,
    parametric_curve,
    tangent_line,
)
from .errors import ComputationError, DomainError
from .exact_swave import swave_exact
from .model import ProblemParams, QuantumNumbers, potential, scale_reduce
from .oracle import SolverConfig, solve_cutoff_coulomb, solve_linear

CSV_HEADER = "n,l,omega,v,b,lower,mean,upper,oracle,exact_swave,lower_source,upper_source"
_CONTAINMENT_SLACK = 1e-6


class UsageError(Exception):
    """Bad arguments discovered after parsing."""


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems through exit code 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


@dataclass(frozen=True)
class OutputRecord:
    """One row of bracket output.

    ``oracle_value`` and ``exact_swave_value`` are None when the
    corresponding cross-check was not requested or does not apply.
    When present, the oracle is required to sit inside the bracket up
    to a small relative slack (the bracket itself is exact; the slack
    absorbs solver roundoff at degenerate brackets).
    """

    n: int
    l: int
    omega: float
    v: float
    b: float
    lower: float
    mean: float
    upper: float
    oracle_value: float | None
    exact_swave_value: float | None
    lower_source: str
    upper_source: str

    def __post_init__(self) -> None:
        if not self.lower <= self.mean <= self.upper:
            raise ComputationError(
                f"record ordering violated: {self.lower} <= {self.mean} <= {self.upper}"
            )
        if self.oracle_value is not None:
            slack = _CONTAINMENT_SLACK * max(1.0, abs(self.oracle_value))
            if not (self.lower - slack <= self.oracle_value <= self.upper + slack):
                raise ComputationError(
                    f"oracle value {self.oracle_value} escapes the bracket "
                    f"[{self.lower}, {self.upper}]"
                )


def _fmt(x: float | None) -> str:
    return "" if x is None else f"{x:.12g}"


def _jnum(x: float | None) -> float | None:
    return None if x is None else float(f"{x:.12g}")


def _record_csv(rec: OutputRecord) -> str:
    return ",".join(
        [
            str(rec.n),
            str(rec.l),
            _fmt(rec.omega),
            _fmt(rec.v),
            _fmt(rec.b),
            _fmt(rec.lower),
            _fmt(rec.mean),
            _fmt(rec.upper),
            _fmt(rec.oracle_value),
            _fmt(rec.exact_swave_value),
            rec.lower_source,
            rec.upper_source,
        ]
    )


def _record_json(rec: OutputRecord) -> dict:
    return {
        "n": rec.n,
        "l": rec.l,
        "omega": _jnum(rec.omega),
        "v": _jnum(rec.v),
        "b": _jnum(rec.b),
        "lower": _jnum(rec.lower),
        "mean": _jnum(rec.mean),
        "upper": _jnum(rec.upper),
        "oracle": _jnum(rec.oracle_value),
        "exact_swave": _jnum(rec.exact_swave_value),
        "lower_source": rec.lower_source,
        "upper_source": rec.upper_source,
    }


def _emit_records(records: list[OutputRecord], fmt: str) -> None:
    if fmt == "csv":
        lines = [CSV_HEADER] + [_record_csv(r) for r in records]
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        sys.stdout.write(json.dumps([_record_json(r) for r in records], indent=2) + "\n")


@functools.lru_cache(maxsize=None)
def _linear_eig(n: int, ell: int) -> float:
    """Pure-linear-potential eigenvalue, cached per process."""
    return solve_linear(n, ell, SolverConfig()).energy


def _resolve_format(args: argparse.Namespace) -> str:
    fmt = getattr(args, "format", None)
    if fmt is None:
        fmt = os.environ.get("CCBOUNDS_FORMAT", "csv")
    if fmt not in ("csv", "json"):
        raise UsageError(f"unknown output format {fmt!r} (expected csv or json)")
    return fmt


def _energy_tol() -> float:
    raw = os.environ.get("CCBOUNDS_ENERGY_TOL")
    if raw is None:
        return 1e-12
    try:
        tol = float(raw)
    except ValueError as exc:
        raise UsageError(f"CCBOUNDS_ENERGY_TOL is not a number: {raw!r}") from exc
    if not tol > 0:
        raise UsageError(f"CCBOUNDS_ENERGY_TOL must be positive, got {tol}")
    return tol


def _build_record(
    n: int,
    ell: int,
    omega: float,
    v: float,
    b: float,
    with_oracle: bool,
    with_exact: bool,
) -> OutputRecord:
    """Bracket one level, computing in reduced units and scaling back."""
    params = ProblemParams(omega=omega, v=v, b=b)
    QuantumNumbers(n=n, ell=ell)
    reduced = scale_reduce(params)
    factor = reduced.energy_factor
    b_hat = reduced.b_reduced
    eig = _linear_eig(n, ell)
    p = p_numbers(n, ell, eig)
    br = bracket(n, ell, 1.0, b_hat, p, linear_eig=eig)
    oracle_value = None
    if with_oracle:
        tol = _energy_tol()
        config = SolverConfig(energy_tol=tol)
        oracle_value = factor * solve_cutoff_coulomb(n, ell, 1.0, b_hat, config).energy
    exact_value = None
    if with_exact and ell == 0 and b_hat > 0:
        exact_value = factor * swave_exact(n, 1.0, b_hat).energy
    return OutputRecord(
        n=n,
        l=ell,
        omega=omega,
        v=v,
        b=b,
        lower=factor * br.lower,
        mean=factor * br.mean_estimate,
        upper=factor * br.upper,
        oracle_value=oracle_value,
        exact_swave_value=exact_value,
        lower_source=br.lower_source,
        upper_source=br.upper_source,
    )


def cmd_bounds(args: argparse.Namespace) -> int:
    fmt = _resolve_format(args)
    rec = _build_record(
        args.n, args.l, args.omega, args.v, args.b,
        with_oracle=args.with_oracle, with_exact=args.with_exact,
    )
    _emit_records([rec], fmt)
    return 0


def cmd_curve(args: argparse.Namespace) -> int:
    fmt = _resolve_format(args)
    if args.points < 2:
        raise UsageError(f"need at least 2 curve points, got {args.points}")
    if not 0 < args.r_min < args.r_max:
        raise UsageError(
            f"need 0 < r-min < r-max, got r-min={args.r_min} r-max={args.r_max}"
        )
    eig = _linear_eig(args.n, args.l)
    p = p_numbers(args.n, args.l, eig)
    choice = {"lower": p.p_lower, "mean": p.p_mean, "upper": p.p_upper}[args.p_choice]
    r_grid = np.geomspace(args.r_min, args.r_max, args.points)
    points = parametric_curve(choice, args.b, r_grid)
    if fmt == "csv":
        lines = ["r,v,energy"]
        lines += [
            f"{_fmt(pt.r_param)},{_fmt(pt.v_of_r)},{_fmt(pt.energy_of_r)}"
            for pt in points
        ]
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        payload = [
            {
                "r": _jnum(pt.r_param),
                "v": _jnum(pt.v_of_r),
                "energy": _jnum(pt.energy_of_r),
            }
            for pt in points
        ]
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    return 0


def cmd_ptable(args: argparse.Namespace) -> int:
    fmt = _resolve_format(args)
    if args.n_max < 1 or args.l_max < 0:
        raise UsageError(
            f"need n-max >= 1 and l-max >= 0, got {args.n_max}, {args.l_max}"
        )
    eigs = {
        (n, ell): _linear_eig(n, ell)
        for n in range(1, args.n_max + 1)
        for ell in range(args.l_max + 1)
    }
    rows = p_table(args.n_max, args.l_max, eigs)
    if fmt == "csv":
        lines = ["n,l,p_lower,p_mean,p_upper"]
        lines += [
            f"{n},{ell},{_fmt(p.p_lower)},{_fmt(p.p_mean)},{_fmt(p.p_upper)}"
            for (n, ell), p in sorted(rows.items())
        ]
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        payload = [
            {
                "n": n,
                "l": ell,
                "p_lower": _jnum(p.p_lower),
                "p_mean": _jnum(p.p_mean),
                "p_upper": _jnum(p.p_upper),
            }
            for (n, ell), p in sorted(rows.items())
        ]
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    return 0


def cmd_exact(args: argparse.Namespace) -> int:
    fmt = _resolve_format(args)
    if not args.b > 0:
        raise UsageError(f"the exact S-wave condition needs --b > 0, got {args.b}")
    rec = _build_record(
        args.n, 0, 1.0, args.v, args.b, with_oracle=args.with_oracle, with_exact=True
    )
    _emit_records([rec], fmt)
    if rec.oracle_value is not None and rec.exact_swave_value is not None:
        gap = abs(rec.exact_swave_value - rec.oracle_value) / abs(rec.exact_swave_value)
        sys.stderr.write(
            f"exact S-wave root {rec.exact_swave_value:.12g} vs shooting solver "
            f"{rec.oracle_value:.12g}: relative discrepancy {gap:.3g}\n"
        )
    return 0


def _parse_float_list(raw: str, name: str) -> list[float]:
    items = [piece for piece in raw.split(",") if piece.strip()]
    if not items:
        raise UsageError(f"{name} must name at least one value")
    try:
        return [float(piece) for piece in items]
    except ValueError as exc:
        raise UsageError(f"bad value in {name}: {raw!r}") from exc


def _check_table_regression() -> dict:
    eigs = {key: _linear_eig(*key) for key in REFERENCE_P_TABLE}
    rows = p_table(5, 4, eigs)
    worst = 0.0
    for key, (ref_lo, ref_mean, ref_up) in REFERENCE_P_TABLE.items():
        got = rows[key]
        worst = max(
            worst,
            abs(got.p_lower - ref_lo),
            abs(got.p_mean - ref_mean),
            abs(got.p_upper - ref_up),
        )
    return {"passed": bool(worst < 1e-4), "worst_abs_error": _jnum(worst)}


def _check_ordering(
    n_max: int, l_max: int, v_list: list[float], b_list: list[float], perturb: float
) -> dict:
    failures = []
    count = 0
    for n in range(1, n_max + 1):
        for ell in range(l_max + 1):
            eig = _linear_eig(n, ell)
            p = p_numbers(n, ell, eig)
            for v in v_list:
                for b in b_list:
                    count += 1
                    br = bracket(n, ell, v, b, p, linear_eig=eig)
                    upper = br.upper * perturb if br.upper < 0 else br.upper / perturb
                    energy = solve_cutoff_coulomb(n, ell, v, b).energy
                    strict = b > 0
                    lo_ok = br.lower < energy if strict else br.lower <= energy + 1e-9 * abs(energy)
                    up_ok = energy < upper if strict else energy <= upper + 1e-9 * abs(energy)
                    if not (lo_ok and up_ok):
                        failures.append(
                            {
                                "n": n, "l": ell, "v": v, "b": b,
                                "lower": _jnum(br.lower),
                                "oracle": _jnum(energy),
                                "upper": _jnum(upper),
                            }
                        )
    return {"passed": not failures, "cases": count, "failures": failures[:10]}


def _check_scaling(seed: int) -> dict:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(10):
        omega = float(rng.uniform(0.3, 3.0))
        v = float(rng.uniform(0.5, 4.0))
        b = float(rng.uniform(0.05, 5.0))
        n = int(rng.integers(1, 4))
        ell = int(rng.integers(0, 3))
        direct = omega * solve_cutoff_coulomb(n, ell, v / omega, b).energy
        reduced = scale_reduce(ProblemParams(omega=omega, v=v, b=b))
        rescaled = reduced.energy_factor * solve_cutoff_coulomb(
            n, ell, 1.0, reduced.b_reduced
        ).energy
        worst = max(worst, abs(direct - rescaled) / abs(direct))
    return {"passed": bool(worst < 1e-6), "worst_rel_error": _jnum(worst)}


def _golden_min(func, lo: float, hi: float) -> float:
    """Golden-section minimum, independent of any closed-form minimizer."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, c = lo, hi
    x1 = c - inv_phi * (c - a)
    x2 = a + inv_phi * (c - a)
    f1, f2 = func(x1), func(x2)
    for _ in range(200):
        if c - a < 1e-13 * max(1.0, abs(a)):
            break
        if f1 < f2:
            c, x2, f2 = x2, x1, f1
            x1 = c - inv_phi * (c - a)
            f1 = func(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv_phi * (c - a)
            f2 = func(x2)
    return func(0.5 * (a + c))


def _check_round_trips() -> dict:
    worst = 0.0
    for (n, ell) in ((1, 0), (2, 1), (3, 2), (5, 4)):
        eig = _linear_eig(n, ell)
        p = p_number_from_linear(eig)
        recovered = _golden_min(lambda r: p * p / (r * r) + r, 1e-3, 100.0)
        worst = max(worst, abs(recovered - eig) / abs(eig))
    for q, eig in ((-1, -0.3), (1, 2.5)):
        recovered = _golden_min(
            lambda s: s + kinetic_potential(q, eig, s), 1e-4, 1e4
        )
        worst = max(worst, abs(recovered - eig) / abs(eig))
    for p in (1.0, 2.5):
        for b in (0.4, 2.0):
            r_grid = np.geomspace(0.05, 50.0, 40)
            for pt in parametric_curve(p, b, r_grid):
                back = envelope_energy(p, pt.v_of_r, b)
                worst = max(worst, abs(back - pt.energy_of_r) / abs(pt.energy_of_r))
    return {"passed": bool(worst < 1e-8), "worst_rel_error": _jnum(worst)}


def _check_tangent_sandwich() -> dict:
    v, b = 1.0, 1.0
    r_grid = np.geomspace(1e-2, 1e2, 100)
    bad = 0
    for t in (0.1, 0.5, 1.0, 3.0, 10.0):
        for q in (-1, 1):
            a, c = tangent_line(t, q, v, b)
            h = np.sign(q) * r_grid ** float(q)
            line = a + c * h
            f = potential(ProblemParams(omega=1.0, v=v, b=b), r_grid)
            slack = 1e-12 * np.maximum(1.0, np.abs(f))
            if q == -1:
                bad += int(np.any(line > f + slack))
            else:
                bad += int(np.any(line < f - slack))
    return {"passed": bad == 0, "violating_pairs": bad}


def cmd_verify(args: argparse.Namespace) -> int:
    v_list = _parse_float_list(args.v_list, "--v-list")
    b_list = _parse_float_list(args.b_list, "--b-list")
    if args.n_max < 1 or args.l_max < 0:
        raise UsageError(
            f"need n-max >= 1 and l-max >= 0, got {args.n_max}, {args.l_max}"
        )
    if any(v <= 0 for v in v_list) or any(b < 0 for b in b_list):
        raise UsageError("verify grid needs v > 0 and b >= 0")
    checks = {
        "table_regression": _check_table_regression(),
        "bracket_ordering": _check_ordering(
            args.n_max, args.l_max, v_list, b_list, args.perturb_upper
        ),
        "scaling_identity": _check_scaling(args.seed),
        "round_trips": _check_round_trips(),
        "tangent_sandwich": _check_tangent_sandwich(),
    }
    passed = all(item["passed"] for item in checks.values())
    report = {
        "passed": passed,
        "grid": {
            "n_max": args.n_max,
            "l_max": args.l_max,
            "v_list": v_list,
            "b_list": b_list,
            "seed": args.seed,
            "perturb_upper": args.perturb_upper,
        },
        "checks": checks,
    }
    sys.stdout.write(json.dumps(report, indent=2) + "\n")
    return 0 if passed else 3


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="ccbounds",
        description="Certified eigenvalue brackets for the cutoff Coulomb potential.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("csv", "json"), default=None,
                       help="output format (default: CCBOUNDS_FORMAT or csv)")

    p_bounds = sub.add_parser("bounds", help="bracket one eigenvalue")
    p_bounds.add_argument("--n", type=int, required=True, help="radial index, >= 1")
    p_bounds.add_argument("--l", type=int, required=True, help="angular momentum, >= 0")
    p_bounds.add_argument("--omega", type=float, default=1.0, help="kinetic coefficient")
    p_bounds.add_argument("--v", type=float, default=1.0, help="coupling strength")
    p_bounds.add_argument("--b", type=float, default=0.0, help="cutoff distance")
    p_bounds.add_argument("--with-oracle", action="store_true",
                          help="also run the shooting solver")
    p_bounds.add_argument("--with-exact", action="store_true",
                          help="also solve the exact S-wave condition (l = 0, b > 0)")
    add_format(p_bounds)
    p_bounds.set_defaults(func=cmd_bounds)

    p_curve = sub.add_parser("curve", help="parametric coupling/energy curve")
    p_curve.add_argument("--n", type=int, required=True, help="radial index, >= 1")
    p_curve.add_argument("--l", type=int, required=True, help="angular momentum, >= 0")
    p_curve.add_argument("--b", type=float, default=1.0, help="cutoff distance")
    p_curve.add_argument("--r-min", type=float, default=0.1,
                         help="smallest curve parameter")
    p_curve.add_argument("--r-max", type=float, default=50.0,
                         help="largest curve parameter")
    p_curve.add_argument("--points", type=int, default=60,
                         help="number of rows, log-spaced in the parameter")
    p_curve.add_argument("--p-choice", choices=("lower", "mean", "upper"),
                         default="mean", help="which P number traces the curve")
    add_format(p_curve)
    p_curve.set_defaults(func=cmd_curve)

    p_ptable = sub.add_parser("ptable", help="grid of effective quantum numbers")
    p_ptable.add_argument("--n-max", type=int, default=5, help="largest radial index")
    p_ptable.add_argument("--l-max", type=int, default=4,
                          help="largest angular momentum")
    add_format(p_ptable)
    p_ptable.set_defaults(func=cmd_ptable)

    p_exact = sub.add_parser("exact", help="exact S-wave eigenvalue")
    p_exact.add_argument("--n", type=int, required=True, help="radial index, >= 1")
    p_exact.add_argument("--v", type=float, default=1.0, help="coupling strength")
    p_exact.add_argument("--b", type=float, required=True,
                         help="cutoff distance, > 0")
    p_exact.add_argument("--with-oracle", action="store_true",
                         help="also run the shooting solver and report the gap")
    add_format(p_exact)
    p_exact.set_defaults(func=cmd_exact)

    p_verify = sub.add_parser("verify", help="run the self-check battery")
    p_verify.add_argument("--n-max", type=int, default=4, help="largest radial index")
    p_verify.add_argument("--l-max", type=int, default=3,
                          help="largest angular momentum")
    p_verify.add_argument("--v-list", type=str, default="0.5,1,4",
                          help="comma-separated coupling strengths")
    p_verify.add_argument("--b-list", type=str, default="0.1,1,10",
                          help="comma-separated cutoff distances")
    p_verify.add_argument("--seed", type=int, default=20260816,
                          help="seed for the randomized scaling check")
    p_verify.add_argument("--perturb-upper", type=float, default=1.0,
                          help="test hook: shrink the upper bound by this factor")
    add_format(p_verify)
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 1
    except DomainError as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return 1
    except ComputationError as exc:
        sys.stderr.write(f"computation failed: {exc}\n")
        if getattr(exc, "details", None):
            sys.stderr.write(f"details: {exc.details}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
