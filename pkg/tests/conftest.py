import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from bgrlab import kernels  # noqa: E402
from bgrlab.core import ColoredBigraph  # noqa: E402

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


@pytest.fixture(params=sorted(kernels.backends()))
def backend(request):
    return kernels.backends()[request.param]


def random_coloring(rng, a, b, k):
    return ColoredBigraph(a, b, k, bytes(rng.randint(1, k) for _ in range(a * b)))


@pytest.fixture
def root():
    return ROOT
