"""Tests for the exact S-wave eigencondition and its U evaluator."""
from __future__ import annotations

import numpy as np
import pytest

from ccbounds import (
    ComputationError,
    DomainError,
    SWaveRoot,
    UArguments,
    solve_cutoff_coulomb,
    swave_exact,
    tricomi_u,
)
from ccbounds.exact_swave import _isolate_root, _u_integral, _u_recurrence

# Reference values for U(x, 2, z) computed with mpmath.hyperu at 40
# decimal digits.
U_REFERENCES = [
    # (x, z, value)
    (0.7, 0.9, 1.2524419925427787),
    (1.5, 40.0, 0.0038819742923230590),
    (0.25, 3.0, 0.80536212288590516),
    (-0.5, 2.0, 0.85374910262181661),
    (-3.3, 7.1, -50.402653091027898),
    (-17.6, 0.35, -3699083469406820.6),
    (-49.5, 120.0, 2.1967696575878179e88),
]

# Same oracle: bisection on the eigencondition with mpmath.hyperu at 40
# digits, levels isolated inside the closed-form brackets.
ROOT_REFERENCES = [
    # (n, v, b, energy)
    (1, 1.0, 1.0, -0.12226571982753172),
    (2, 1.0, 1.0, -0.042077445834904033),
    (3, 1.0, 1.0, -0.021132090903031654),
    (1, 1.0, 0.1, -0.21536791724568901),
    (1, 1.0, 10.0, -0.035335140110043586),
    (3, 1.0, 10.0, -0.011106157864810754),
    (1, 1.0, 1e-4, -0.24995005560516183),
]


class TestUArguments:
    def test_holds_the_y_two_slice(self):
        args = UArguments(x=0.5, z=1.0)
        assert args.y == 2.0

    @pytest.mark.parametrize("kwargs", [{"x": 1.0, "z": 0.0}, {"x": 1.0, "z": -2.0}])
    def test_rejects_nonpositive_z(self, kwargs):
        with pytest.raises(DomainError):
            UArguments(**kwargs)

    def test_rejects_other_slices(self):
        with pytest.raises(DomainError):
            UArguments(x=1.0, z=1.0, y=3.0)


class TestTricomiU:
    @pytest.mark.parametrize("x,z,expected", U_REFERENCES)
    def test_matches_frozen_references(self, x, z, expected):
        assert tricomi_u(UArguments(x=x, z=z)) == pytest.approx(expected, rel=1e-9)

    @pytest.mark.parametrize("z", [0.3, 2.0, 11.0])
    def test_terminating_case_is_a_polynomial(self, z):
        # U(-2, 2, z) = z^2 - 6z + 6 exactly.
        expected = z * z - 6.0 * z + 6.0
        assert tricomi_u(UArguments(x=-2.0, z=z)) == pytest.approx(expected, rel=1e-13)

    def test_terminating_reference_values(self):
        assert tricomi_u(UArguments(x=-5.0, z=3.0)) == pytest.approx(-207.0, rel=1e-12)
        assert tricomi_u(UArguments(x=-2.0, z=0.5)) == pytest.approx(3.25, rel=1e-13)

    def test_positive_for_positive_first_argument(self):
        # The Laplace integrand is positive, so U(x, 2, z) > 0 for x > 0.
        for x in (0.6, 1.2, 1.9):
            for z in (0.01, 1.0, 700.0):
                assert tricomi_u(UArguments(x=x, z=z)) > 0

    @pytest.mark.parametrize("x", np.linspace(0.3, 1.9, 9).tolist())
    @pytest.mark.parametrize("z", [0.05, 1.0, 30.0, 500.0])
    def test_evaluation_paths_agree_on_the_overlap(self, x, z):
        direct = _u_integral(x, z)
        recurred = _u_recurrence(x, z)
        assert recurred == pytest.approx(direct, rel=1e-8)

    @pytest.mark.parametrize("x", [-40.2, -12.7, -3.3, -0.9, 0.3, 1.7])
    @pytest.mark.parametrize("z", [0.02, 0.9, 17.0, 800.0])
    def test_agrees_with_mpmath_at_runtime(self, x, z):
        mpmath = pytest.importorskip("mpmath")
        mpmath.mp.dps = 30
        expected = float(mpmath.hyperu(x, 2, z))
        got = tricomi_u(UArguments(x=x, z=z))
        assert got == pytest.approx(expected, rel=1e-9)


class TestSWaveExact:
    @pytest.mark.parametrize("n,v,b,expected", ROOT_REFERENCES)
    def test_matches_frozen_references(self, n, v, b, expected):
        root = swave_exact(n, v, b)
        assert isinstance(root, SWaveRoot)
        assert root.n == n
        assert root.energy == pytest.approx(expected, rel=1e-10)

    def test_residual_and_bracket_are_reported(self):
        root = swave_exact(2, 1.0, 1.0)
        lo, hi = root.bracket_used
        assert lo <= root.energy <= hi
        assert root.residual < 1e-8

    def test_levels_are_strictly_ordered(self):
        energies = [swave_exact(n, 1.0, 1.0).energy for n in (1, 2, 3)]
        assert energies[0] < energies[1] < energies[2] < 0

    def test_overlapping_brackets_are_disentangled(self):
        # At v b = 10 consecutive closed-form brackets overlap; the
        # sequential search must still find distinct ordered roots.
        energies = [swave_exact(n, 1.0, 10.0).energy for n in (1, 2, 3)]
        assert energies[0] < energies[1] < energies[2] < 0

    @pytest.mark.parametrize("b", [1e-2, 1e-3, 1e-4])
    def test_approaches_hydrogen_as_the_cutoff_vanishes(self, b):
        root = swave_exact(1, 1.0, b)
        assert root.energy > -0.25
        assert root.energy == pytest.approx(-0.25, rel=2e-2)

    def test_hydrogen_limit_is_monotone(self):
        energies = [swave_exact(1, 1.0, b).energy for b in (1e-2, 1e-3, 1e-4)]
        assert energies[0] > energies[1] > energies[2] > -0.25

    @pytest.mark.parametrize("n,b", [(1, 0.1), (2, 1.0), (3, 10.0)])
    def test_agrees_with_the_shooting_solver(self, n, b):
        exact = swave_exact(n, 1.0, b).energy
        shot = solve_cutoff_coulomb(n, 0, 1.0, b).energy
        assert shot == pytest.approx(exact, rel=1e-6)

    @pytest.mark.parametrize(
        "n,v,b,tol",
        [(0, 1.0, 1.0, 1e-12), (1, 0.0, 1.0, 1e-12), (1, 1.0, 0.0, 1e-12), (1, 1.0, 1.0, 0.0)],
    )
    def test_rejects_bad_arguments(self, n, v, b, tol):
        with pytest.raises(DomainError):
            swave_exact(n, v, b, tol=tol)


class TestRootIsolation:
    def test_interval_without_root_is_diagnosed(self):
        # Below -v^2/4 the first U argument is positive, so the
        # eigencondition cannot vanish there.
        with pytest.raises(ComputationError) as excinfo:
            _isolate_root(-0.40, -0.30, 1.0, 1.0, 1e-12, level=1)
        assert "no sign change" in str(excinfo.value)
        assert "endpoint_values" in excinfo.value.details

    def test_interval_with_two_roots_is_diagnosed(self):
        # (-0.13, -0.03) straddles both the n = 1 and n = 2 roots at
        # v = b = 1.
        with pytest.raises(ComputationError) as excinfo:
            _isolate_root(-0.13, -0.03, 1.0, 1.0, 1e-12, level=1)
        assert "multiple sign changes" in str(excinfo.value)
        assert len(excinfo.value.details["crossing_energies"]) == 2
