"""Shared fixtures: linear-potential eigenvalues feed the P machinery."""
from __future__ import annotations

import pytest

from ccbounds import solve_linear

N_MAX = 5
ELL_MAX = 4


@pytest.fixture(scope="session")
def linear_eigs() -> dict[tuple[int, int], float]:
    """Eigenvalues of -Delta + r for every state up to (N_MAX, ELL_MAX)."""
    return {
        (n, ell): solve_linear(n, ell).energy
        for n in range(1, N_MAX + 1)
        for ell in range(ELL_MAX + 1)
    }
