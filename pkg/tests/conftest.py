import math

import pytest

from deltashell import (DeltaShellPotential, SineInitialState, box_state,
                        build_expansion, find_poles)

B_REFERENCE = 4.5 * math.pi  # the spectral-singularity intensity, 9*pi/2


@pytest.fixture(scope="session")
def pot9():
    return DeltaShellPotential(b=B_REFERENCE, a=1.0)


@pytest.fixture(scope="session")
def ps10(pot9):
    return find_poles(pot9, 10, 10)


@pytest.fixture(scope="session")
def ps40(pot9):
    return find_poles(pot9, 40, 40)


@pytest.fixture(scope="session")
def ctx_q1(pot9):
    return build_expansion(pot9, box_state(1), 40)


@pytest.fixture(scope="session")
def ctx_q2(pot9):
    return build_expansion(pot9, box_state(2), 40)


@pytest.fixture(scope="session")
def ctx_q6(pot9):
    return build_expansion(pot9, box_state(6), 40)


@pytest.fixture(scope="session")
def ctx_ss(pot9):
    """Initial state tuned to the spectral singularity: k_c = 9*pi/2."""
    return build_expansion(pot9, SineInitialState.from_wavenumber(B_REFERENCE), 40)


@pytest.fixture(scope="session")
def basis40(ctx_q1):
    return ctx_q1.basis
