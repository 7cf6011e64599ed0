import pytest

from qlattice.realspaces import spin_space, bool_real_space
from qlattice.tensor import build_tensor, indeterministic_tensor
from qlattice.ontic import build_completion
from qlattice.geometry import build_geometry
from qlattice.quantum import BellScenario


@pytest.fixture(scope="session")
def z2():
    return spin_space(2)


@pytest.fixture(scope="session")
def z2_completion(z2):
    return build_completion(z2)


@pytest.fixture(scope="session")
def two_qubit(z2):
    return indeterministic_tensor(z2, z2)


@pytest.fixture(scope="session")
def geo_wide(two_qubit):
    ts, comp = two_qubit
    return build_geometry(comp, ts, variant="check")


@pytest.fixture(scope="session")
def geo_narrow(two_qubit):
    ts, comp = two_qubit
    return build_geometry(comp, ts, variant="widecheck")


@pytest.fixture(scope="session")
def bool_square():
    brs = bool_real_space()
    return build_tensor(brs, brs)


@pytest.fixture(scope="session")
def scenario(z2, two_qubit):
    ts, comp = two_qubit
    a, b = z2.space.index("a"), z2.space.index("b")
    return BellScenario(z2, z2, a, b, a, b, ts=ts, completion=comp)
