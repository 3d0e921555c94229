from fractions import Fraction as F

import pytest

from setopt.cone import validate_cone


@pytest.fixture
def orthant():
    return validate_cone([[F(1), F(0)], [F(0), F(1)]], [F(1), F(1)])


@pytest.fixture
def skew_cone():
    # K = {y : y2 >= 0, y1 - y2 >= 0}, interior direction (1, 1/2)
    return validate_cone([[F(0), F(1)], [F(1), F(-1)]], [F(1), F(1, 2)])


@pytest.fixture
def orthant_float():
    return validate_cone([[1.0, 0.0], [0.0, 1.0]], [1.0, 1.0])
