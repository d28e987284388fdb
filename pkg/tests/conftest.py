import pytest

from curveinv import builtin_formulas, frozen_calibration


@pytest.fixture(scope="session")
def frozen():
    return frozen_calibration()


@pytest.fixture(scope="session")
def conv(frozen):
    return frozen.convention


@pytest.fixture(scope="session")
def formulas():
    return builtin_formulas()
