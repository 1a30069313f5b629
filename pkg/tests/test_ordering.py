import random

import pytest

from divsum.ordering import (
    OrderingError,
    interval,
    interval_concat,
    precedes,
    successor,
)


def position_oracle(u):
    """-1/u as an extended real, with 1/0 = infinity (so 0 maps to -inf)."""
    return float("-inf") if u == 0 else -1 / u


@pytest.mark.parametrize("a, b", [(3, 5), (7, -7), (-2, -1), (0, 1), (0, -1), (100, -100)])
def test_precedes_examples(a, b):
    assert precedes(a, b)
    assert not precedes(b, a)


def test_precedes_matches_reciprocal_definition():
    for a in range(-30, 31):
        for b in range(-30, 31):
            if a != b:
                assert precedes(a, b) == (position_oracle(a) < position_oracle(b))


def test_precedes_rejects_equal_and_out_of_range():
    with pytest.raises(OrderingError):
        precedes(4, 4)
    with pytest.raises(OrderingError):
        precedes(2**63, 0)


def test_totality_and_transitivity():
    span = range(-100, 101)
    for a in span:
        for b in span:
            if a != b:
                assert precedes(a, b) != precedes(b, a)
    rng = random.Random(0)
    for _ in range(3000):
        a, b, c = rng.sample(span, 3)
        if precedes(a, b) and precedes(b, c):
            assert precedes(a, c)


def test_interval_examples():
    z = interval(1, 4)
    assert z.kind == "forward" and list(z) == [1, 2, 3, 4]
    z = interval(-3, 2)
    assert z.kind == "wraparound" and z.is_finite
    assert list(z) == [0, 1, 2, -3, -2, -1]
    z = interval(5, 2)
    assert z.kind == "wraparound" and not z.is_finite
    assert [u in z for u in (5, 100, -1, 2, 3, 4)] == [True, True, True, True, False, False]


def test_infinite_iteration_is_an_error():
    with pytest.raises(OrderingError):
        list(interval(5, 2))
    with pytest.raises(OrderingError):
        list(interval(3, -3))


def membership_oracle(a, b, u):
    # precedence order as list positions over a window that contains a, b, u
    order = list(range(0, 200)) + list(range(-200, 0))
    pos = {v: i for i, v in enumerate(order)}
    if pos[a] <= pos[b]:
        return pos[a] <= pos[u] <= pos[b]
    return not (pos[b] < pos[u] < pos[a])


def test_membership_matches_oracle():
    rng = random.Random(1)
    for _ in range(300):
        a, b = rng.randint(-60, 60), rng.randint(-60, 60)
        z = interval(a, b)
        for u in range(-70, 71, 3):
            assert (u in z) == membership_oracle(a, b, u)


def test_full_interval():
    for a in range(-30, 31):
        z = interval(a, a - 1)
        assert z.is_full
        assert all(u in z for u in range(-100, 101))


def test_splitting():
    rng = random.Random(2)
    checked = 0
    while checked < 200:
        a, c, b = rng.randint(-40, 40), rng.randint(-40, 40), rng.randint(-50, 50)
        whole = interval(a, c)
        if b not in whole or b == c or b == -1:
            continue
        left, right = interval(a, b), interval(b + 1, c)
        for u in range(-60, 61):
            assert not (u in left and u in right)
            assert (u in left or u in right) == (u in whole)
        checked += 1


def test_concat():
    joined = interval_concat(interval(1, 3), interval(4, 6))
    assert list(joined) == [1, 2, 3, 4, 5, 6]
    everything = interval_concat(interval(0, 2), interval(3, -1))
    assert everything.is_full
    with pytest.raises(OrderingError):
        interval_concat(interval(1, 3), interval(5, 6))


def test_concat_rejects_overlap():
    # [6, 3] wraps round through the negatives and 0..3
    with pytest.raises(OrderingError):
        interval_concat(interval(0, 5), interval(6, 3))


def test_successor_of_last_element():
    assert successor(-2) == -1
    with pytest.raises(OrderingError):
        successor(-1)
    with pytest.raises(OrderingError):
        interval_concat(interval(-3, -1), interval(0, 2))
