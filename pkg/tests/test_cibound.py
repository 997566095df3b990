from math import comb

import pytest

from likelihood_station.exceptions.custom import UsageError
from likelihood_station.services.bound_service import BoundService, CIShape


@pytest.mark.parametrize(
    "n, degrees, expected",
    [
        (2, (2,), 6),
        (7, (4,), 21844),
        (3, (2, 2), 20),
        (3, (1,), 3),
        (4, (2, 3), 6 * (1 + 2 + 3 + 4 + 6 + 9)),
    ],
)
def test_ci_ml_bound(n, degrees, expected):
    assert BoundService.ci_ml_bound(CIShape.of(n, degrees)) == expected


def test_thom_number():
    assert BoundService.thom_number_D(CIShape.of(3, (2, 2))) == 5
    assert BoundService.thom_number_D(CIShape.of(2, (2, 2))) == 1


@pytest.mark.parametrize("n, r", [(3, 1), (5, 2), (6, 3), (8, 8)])
def test_linear_spaces(n, r):
    """Test that all-linear generators give the binomial coefficient"""
    shape = CIShape.of(n, (1,) * r)
    assert BoundService.ci_ml_bound(shape) == comb(n, r) == BoundService.linear_bound(n, r)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 7])
@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_hypersurface_closed_form(n, d):
    assert BoundService.ci_ml_bound(CIShape.of(n, (d,))) == BoundService.hypersurface_bound(n, d)


def test_invalid_shapes():
    with pytest.raises(UsageError) as info:
        CIShape.of(2, (2, 2, 2))
    assert info.value.error_code == "INVALID_SHAPE"
    with pytest.raises(UsageError):
        CIShape.of(3, (0,))
    with pytest.raises(UsageError):
        CIShape.of(0, (1,))
    with pytest.raises(UsageError):
        CIShape.of(3, ())
