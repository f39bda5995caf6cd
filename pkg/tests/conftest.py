import pytest

from cbpp.gacoa import warm_up_kernels


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # compile (or load from cache) the jitted placement kernel up front so
    # timed acceptance tests measure the algorithm, not compilation
    warm_up_kernels()


@pytest.fixture
def quarter_instance():
    """8 circles of radius L/4: packs as exactly 4 per bin at the corners."""
    from cbpp.model import Instance

    return Instance(4.0, (1.0,) * 8)
