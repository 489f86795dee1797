import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from torsionbound._kernels import available_backends  # noqa: E402


@pytest.fixture(params=sorted(available_backends()))
def backend(request):
    return available_backends()[request.param]
