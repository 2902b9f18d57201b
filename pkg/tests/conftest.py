import pytest

from nitpart import NitParams, NitSet, canonical_nit_set


def make(n, k, *parts):
    return NitSet(NitParams(n, k), tuple(tuple(tuple(b) for b in p) for p in parts))


# the five partition pairs displayed in the two-trit listing, in order
LISTED_PAIRS = [
    [[[1, 2, 3], [4, 6, 8], [5, 7, 9]], [[1, 4, 5], [2, 6, 7], [3, 8, 9]]],
    [[[1, 2, 3], [4, 6, 9], [5, 7, 8]], [[1, 4, 5], [2, 6, 7], [3, 8, 9]]],
    [[[1, 5, 9], [2, 6, 7], [3, 4, 8]], [[1, 6, 8], [2, 4, 9], [3, 5, 7]]],
    [[[1, 6, 9], [2, 5, 7], [3, 4, 8]], [[1, 7, 8], [2, 4, 9], [3, 5, 6]]],
    [[[1, 6, 9], [2, 5, 8], [3, 4, 7]], [[1, 7, 8], [2, 4, 9], [3, 5, 6]]],
]


@pytest.fixture
def trits():
    return canonical_nit_set(NitParams(3, 2))


@pytest.fixture
def diagonal_trits():
    return make(3, 2, *LISTED_PAIRS[2])


@pytest.fixture
def w_bits():
    return canonical_nit_set(NitParams(2, 3))
