import random

import pytest

from uqtrees import builtin_pairs, get_pair


def fold(pair, values):
    """Independent fold: reduce with query_op, no aggregator involved."""
    acc = values[0]
    for v in values[1:]:
        acc = pair.query_op(acc, v)
    return acc


def fold_updated(pair, values, value, hit_indices=None):
    """Independent brute force: update the listed elements, then fold."""
    u = pair.update_op
    if hit_indices is None:
        updated = [u(x, value) for x in values]
    else:
        hits = set(hit_indices)
        updated = [u(x, value) if i in hits else x for i, x in enumerate(values)]
    return fold(pair, updated)


def sample_values(pair, rng, n):
    lo, hi = pair.sample_range
    return [rng.randint(lo, hi) for _ in range(n)]


@pytest.fixture(params=[p.name for p in builtin_pairs()])
def pair(request):
    return get_pair(request.param)


@pytest.fixture(params=["plus-plus", "times-times", "min-min", "max-max"])
def special_pair(request):
    return get_pair(request.param)


@pytest.fixture
def rng():
    return random.Random(0)
