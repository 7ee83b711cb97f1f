from collections import Counter
from itertools import permutations
from math import factorial

import pytest

from astrbot_plugin_invariants.models.errors import MalformedInputError
from astrbot_plugin_invariants.models.matching import Permutation
from astrbot_plugin_invariants.models.partition import (
    Partition, class_size, enumerate_partitions, is_even, partition_count, z_of,
)


def test_enumerate_partitions_of_four_in_decreasing_order():
    parts = [p.parts for p in enumerate_partitions(4)]
    assert parts == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_empty_partition_of_zero():
    assert [p.parts for p in enumerate_partitions(0)] == [()]


@pytest.mark.parametrize("d", range(0, 21))
def test_enumeration_agrees_with_pentagonal_recurrence(d):
    assert len(enumerate_partitions(d)) == partition_count(d)


def test_partition_count_of_twelve():
    assert partition_count(12) == 77


def test_negative_size_rejected():
    with pytest.raises(MalformedInputError):
        enumerate_partitions(-1)


def test_from_parts_sorts_and_records_multiplicities():
    lam = Partition.from_parts([1, 3, 3, 4, 4, 3, 3])
    assert lam.parts == (4, 4, 3, 3, 3, 3, 1)
    assert lam.mults == {4: 2, 3: 4, 1: 1}
    assert lam.d == 21


def test_from_shape_and_shape_string():
    lam = Partition.from_shape({1: 2, 2: 1})
    assert lam.parts == (2, 1, 1)
    assert lam.shape_string() == "1^2 2^1"
    assert str(lam) == "(2,1,1)"


def test_unsorted_parts_rejected():
    with pytest.raises(MalformedInputError):
        Partition((1, 2))
    with pytest.raises(MalformedInputError):
        Partition((2, 0))


def test_z_of_and_class_sizes_sum_to_factorial():
    assert z_of(Partition((2, 1, 1))) == 4
    assert z_of(Partition((3, 3))) == 18
    assert sum(class_size(lam) for lam in enumerate_partitions(6)) == 720


def test_is_even():
    assert is_even(Partition((4, 2)))
    assert not is_even(Partition((2, 1, 1)))


def test_pentagonal_recurrence_known_values():
    assert [partition_count(d) for d in (20, 30, 40)] == [627, 5604, 37338]
    assert partition_count(-1) == 0


@pytest.mark.parametrize("d", range(0, 13))
def test_class_equation(d):
    assert sum(class_size(lam) for lam in enumerate_partitions(d)) == factorial(d)


@pytest.mark.parametrize("d", range(1, 7))
def test_class_sizes_match_cycle_types_of_all_permutations(d):
    counts = Counter(Permutation(p).cycle_type().parts for p in permutations(range(d)))
    assert counts == {lam.parts: factorial(d) // z_of(lam) for lam in enumerate_partitions(d)}
