import numpy as np
import pytest

from prdist.support import estimate_support, count_in_support


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile (or cache-load) the numba kernels once per session."""
    pts = np.ascontiguousarray(np.random.default_rng(0).standard_normal((8, 3)))
    sup = estimate_support(pts, 2)
    count_in_support(pts, sup)
