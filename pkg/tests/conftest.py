import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from modcurve import bundled_newforms


@pytest.fixture(scope="session")
def forms():
    return bundled_newforms()
