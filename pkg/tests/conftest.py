import numpy as np
import pytest

from semihilbert import backend, make_context


@pytest.fixture
def jordan():
    return np.array([[0.0, 1.0], [0.0, 0.0]], dtype=np.complex128)


@pytest.fixture
def eye2_ctx():
    return make_context(np.eye(2, dtype=np.complex128))


def available_backends():
    return backend.available()


@pytest.fixture(params=available_backends())
def backend_name(request):
    """Run the test once per kernel backend, restoring the default after."""
    prev = backend.current()
    backend.use(request.param)
    yield request.param
    backend.use(prev)


def random_context(seed: int, n: int, rank: int, law: str = "uniform"):
    from semihilbert import derive_rng, gen_psd
    A = gen_psd(n, rank, law, derive_rng(seed, "A"))
    return make_context(A)
