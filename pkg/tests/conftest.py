import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from orthosps import gen_boolean, gen_mo  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def mo2():
    return gen_mo(2)


@pytest.fixture(scope="session")
def mo3():
    return gen_mo(3)


@pytest.fixture(scope="session")
def b2():
    return gen_boolean(2)


@pytest.fixture(scope="session")
def b3():
    return gen_boolean(3)
