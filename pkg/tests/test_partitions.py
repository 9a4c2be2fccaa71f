import pytest
from hypothesis import given
from hypothesis import strategies as st

from fixedspace.partitions import Partition, all_partitions, is_symplectic, profile, symplectic_partitions

PARTITION_NUMBERS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


@pytest.mark.parametrize("n", range(11))
def test_partition_numbers(n):
    assert sum(len(all_partitions(n, k)) for k in range(n + 1)) == PARTITION_NUMBERS[n]


def test_symplectic_partitions_of_four():
    parts = {p.parts for k in range(5) for p in symplectic_partitions(4, k)}
    assert parts == {(4,), (2, 2), (1, 1, 2), (1, 1, 1, 1)}
    with pytest.raises(ValueError):
        symplectic_partitions(3, 1)


def test_profile():
    p = Partition((1, 1, 2, 4))
    mult, tails = profile(p)
    assert mult == {1: 2, 2: 1, 4: 1}
    assert tails == {1: 4, 2: 2, 3: 1, 4: 1}
    assert Partition.from_multiplicities(mult) == p


def test_validation():
    with pytest.raises(ValueError):
        Partition((2, 1))
    with pytest.raises(ValueError):
        Partition((0, 1))


@given(st.integers(min_value=0, max_value=14), st.data())
def test_profile_identities(n, data):
    k = data.draw(st.integers(min_value=0, max_value=n))
    for p in all_partitions(n, k):
        assert len(p) == k
        assert sum(p.multiplicities.values()) == k
        assert sum(p.tail_sums.values()) == n
        if p.parts:
            assert p.tail_sums[1] == k
        assert is_symplectic(p) == all(c % 2 == 0 for i, c in p.multiplicities.items() if i % 2)
