import math

import pytest

from causalcover.intervals import Interval, Ordering, compare, compare_to_pi, exact_diff, exact_sum


def test_point_and_around():
    assert Interval.point(2.0).is_point
    iv = Interval.around(10.0, 1e-12)
    assert iv.lo < 10.0 < iv.hi
    assert iv.hi - iv.lo == pytest.approx(2e-11)
    assert Interval.around(0.0, 1e-12).hi == pytest.approx(1e-12)


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        Interval(1.0, 0.0)


def test_exact_sum_is_point_when_exact():
    assert exact_sum(1.0, 1.0).is_point
    assert exact_diff(2.0, 0.5) == Interval.point(1.5)


def test_exact_sum_widens_when_rounded():
    iv = exact_sum(0.1, 0.2)
    assert not iv.is_point
    assert iv.lo < 0.1 + 0.2 < iv.hi


def test_compare_orders():
    assert compare(Interval.point(1.0), Interval.point(2.0)) is Ordering.LESS
    assert compare(Interval.point(2.0), Interval.point(1.0)) is Ordering.GREATER
    assert compare(Interval.point(1.0), Interval.point(1.0)) is Ordering.EQUAL
    # overlapping but not identical points: never guessed
    assert compare(Interval(0.9, 1.1), Interval.point(1.0)) is Ordering.UNKNOWN


def test_compare_to_pi():
    assert compare_to_pi(3.0) is Ordering.LESS
    assert compare_to_pi(3.2) is Ordering.GREATER
    assert compare_to_pi(math.pi) is Ordering.UNKNOWN
    assert compare_to_pi(math.nextafter(math.pi, 4.0)) is Ordering.UNKNOWN
