import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from catalog import P2, P3, Q3  # noqa: E402

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def p2():
    return P2


@pytest.fixture
def p3():
    return P3


@pytest.fixture
def q3():
    return Q3


@pytest.fixture
def data_dir():
    return DATA
