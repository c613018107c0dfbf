import math
import random

import pytest

from uqtrees import (DenseTensor, SegTree1D, ValidationError, WorkloadConfig,
                     get_pair, run_verify)


def make(values, pair_name="plus-min"):
    pair = get_pair(pair_name)
    return SegTree1D(values, pair), DenseTensor((len(values),), values, pair)


def node_depths(t):
    depth = [0] * t.node_count
    order = [0]
    for i in order:
        for c in (t.left[i], t.right[i]):
            if c >= 0:
                depth[c] = depth[i] + 1
                order.append(c)
    return depth


def visit_bound(n):
    return 4 * (n.bit_length()) + 2  # 4 * (floor(log2 N) + 1) + 2


class TestBuild:
    def test_node_census(self):
        pair = get_pair("plus-plus")
        for n in range(1, 257):
            t = SegTree1D([0] * n, pair)
            assert t.node_count == 2 * n - 1

    def test_root_fold(self):
        t = SegTree1D([1, 2, 3, 4, 5], get_pair("plus-plus"))
        assert t.node_count == 9
        assert t.val[0] == 15

    def test_single_element(self, pair):
        t = SegTree1D([7], pair)
        assert t.node_count == 1
        assert t.query(0, 0) == 7
        assert node_depths(t) == [0]

    def test_empty_rejected(self, pair):
        with pytest.raises(ValueError):
            SegTree1D([], pair)

    def test_all_lazies_start_identity(self, pair):
        t = SegTree1D([1, 2, 3, 4, 5, 6, 7], pair)
        assert all(z == pair.update_identity for z in t.laz)

    def test_depth_bound(self):
        pair = get_pair("plus-plus")
        for n in [*range(1, 130), 613, 1000, 2048, 4095, 4096]:
            t = SegTree1D([0] * n, pair)
            assert max(node_depths(t)) <= math.ceil(math.log2(n)) if n > 1 else True


class TestUpdateQuery:
    def test_example_sequence(self):
        t, o = make([3, 1, 4, 1, 5])
        assert t.query(0, 4) == 1
        t.update(1, 3, 2)
        o.update(((1, 3),), 2)
        assert t.query(0, 4) == 3
        assert t.query(0, 4) == o.query(((0, 4),))

    def test_identity_update_changes_nothing(self, pair, rng):
        vals = [rng.randint(*pair.sample_range) for _ in range(13)]
        t = SegTree1D(vals, pair)
        snapshot = [t.query(i, j) for i in range(13) for j in range(i, 13)]
        t.update(2, 9, pair.update_identity)
        assert snapshot == [t.query(i, j) for i in range(13) for j in range(i, 13)]

    def test_full_update_via_aggregator(self, pair, rng):
        vals = [rng.randint(*pair.sample_range) for _ in range(11)]
        t = SegTree1D(vals, pair)
        base = t.query(0, 10)
        v = rng.randint(*pair.sample_range)
        t.update(0, 10, v)
        assert t.query(0, 10) == pair.aggregator(base, v, 11)

    def test_single_cells_match_oracle(self, pair, rng):
        vals = [rng.randint(*pair.sample_range) for _ in range(9)]
        t = SegTree1D(vals, pair)
        o = DenseTensor((9,), vals, pair)
        for _ in range(60):
            a, b = sorted((rng.randrange(9), rng.randrange(9)))
            v = rng.randint(*pair.sample_range)
            t.update(a, b, v)
            o.update(((a, b),), v)
        for i in range(9):
            assert t.query(i, i) == o.query(((i, i),))

    def test_out_of_bounds(self):
        t, _ = make([1, 2, 3])
        for bad in ((0, 3), (-1, 1), (2, 1)):
            with pytest.raises(ValueError):
                t.update(*bad, 1)
            with pytest.raises(ValueError):
                t.query(*bad)

    def test_differential(self):
        for n in (1, 2, 5, 33, 64):
            report = run_verify(WorkloadConfig("seg1d", "plus-min", (n,), ops=2500, seed=n))
            assert report.ok, report.first_mismatch


class TestDecompose:
    def test_examples(self):
        t = SegTree1D(list(range(8)), get_pair("plus-plus"))
        assert t.decompose(1, 6) == [(1, 1), (2, 3), (4, 5), (6, 6)]
        assert t.decompose(0, 7) == [(0, 7)]
        assert t.decompose(4, 7) == [(4, 7)]

    def test_exhaustive_disjoint_union_and_bound(self):
        pair = get_pair("plus-plus")
        for n in [*range(2, 40), 63, 64]:
            t = SegTree1D([0] * n, pair)
            bound = 2 * math.ceil(math.log2(n))
            for lo in range(n):
                for hi in range(lo, n):
                    parts = t.decompose(lo, hi)
                    assert len(parts) <= bound
                    covered = []
                    for a, b in parts:
                        covered.extend(range(a, b + 1))
                    assert covered == list(range(lo, hi + 1))

    def test_adversarial_large_sizes(self):
        pair = get_pair("plus-plus")
        for n in (127, 128, 129, 255, 256):
            t = SegTree1D([0] * n, pair)
            bound = 2 * math.ceil(math.log2(n))
            assert all(len(t.decompose(lo, hi)) <= bound
                       for lo in range(n) for hi in range(lo, n))


class TestLazySpans:
    def test_update_touches_exactly_the_decomposition(self):
        t = SegTree1D(list(range(8)), get_pair("plus-plus"))
        t.update(1, 6, 3)
        assert t.last_lazy_spans == [(1, 1), (2, 3), (4, 5), (6, 6)]

    def test_exhaustive_disjoint_union(self):
        # the spans whose pending value an update touches partition the target
        pair = get_pair("plus-min")
        for n in range(1, 33):
            t = SegTree1D([0] * n, pair)
            for lo in range(n):
                for hi in range(lo, n):
                    t.update(lo, hi, 1)
                    got = sorted(t.last_lazy_spans)
                    covered = []
                    for a, b in got:
                        covered.extend(range(a, b + 1))
                    assert covered == list(range(lo, hi + 1))


class TestCounters:
    def test_update_and_query_visit_bound_exhaustive(self):
        pair = get_pair("plus-plus")
        for n in range(1, 65):
            t = SegTree1D([0] * n, pair)
            for lo in range(n):
                for hi in range(lo, n):
                    t.update(lo, hi, 1)
                    assert t.counters.visits_last_op <= visit_bound(n)
                    t.query(lo, hi)
                    assert t.counters.visits_last_op <= visit_bound(n)

    def test_visit_bound_sampled_large(self, rng):
        pair = get_pair("plus-plus")
        for n in (100, 255, 256, 1000):
            t = SegTree1D([0] * n, pair)
            for _ in range(300):
                lo, hi = sorted((rng.randrange(n), rng.randrange(n)))
                t.update(lo, hi, 1)
                assert t.counters.visits_last_op <= visit_bound(n)
                t.query(lo, hi)
                assert t.counters.visits_last_op <= visit_bound(n)

    def test_deterministic_for_fixed_sequence(self):
        def run():
            t = SegTree1D([0] * 37, get_pair("plus-min"))
            rng = random.Random(11)
            for _ in range(200):
                a, b = sorted((rng.randrange(37), rng.randrange(37)))
                if rng.random() < 0.5:
                    t.update(a, b, rng.randint(-5, 5))
                else:
                    t.query(a, b)
            c = t.counters
            return (c.visits_total, c.update_visits, c.query_visits,
                    c.update_ops, c.query_ops)

        assert run() == run()


class TestToArray:
    def test_fresh_build_round_trips(self, pair, rng):
        vals = [rng.randint(*pair.sample_range) for _ in range(10)]
        assert SegTree1D(vals, pair).to_array() == vals

    def test_after_updates_matches_oracle(self, pair, rng):
        vals = [rng.randint(*pair.sample_range) for _ in range(17)]
        t = SegTree1D(vals, pair)
        o = DenseTensor((17,), vals, pair)
        for _ in range(100):
            a, b = sorted((rng.randrange(17), rng.randrange(17)))
            v = rng.randint(*pair.sample_range)
            t.update(a, b, v)
            o.update(((a, b),), v)
        assert t.to_array() == o.data

    def test_visits_equal_node_count(self):
        t = SegTree1D([0] * 21, get_pair("plus-plus"))
        before = t.counters.visits_total
        t.to_array()
        assert t.counters.visits_total - before == t.node_count


class TestValidate:
    def test_fresh_build_passes(self, pair):
        vals = [3, 1, 4, 1, 5, 9, 2, 6]
        SegTree1D(vals, pair).validate(DenseTensor((8,), vals, pair))

    def test_after_many_updates_passes(self, rng):
        pair = get_pair("plus-min")
        vals = [rng.randint(-50, 50) for _ in range(29)]
        t = SegTree1D(vals, pair)
        o = DenseTensor((29,), vals, pair)
        for _ in range(1000):
            a, b = sorted((rng.randrange(29), rng.randrange(29)))
            v = rng.randint(-50, 50)
            t.update(a, b, v)
            o.update(((a, b),), v)
        t.validate(o)

    def test_corruption_is_caught(self):
        pair = get_pair("plus-plus")
        vals = list(range(16))
        t = SegTree1D(vals, pair)
        o = DenseTensor((16,), vals, pair)
        t.val[5] = pair.update_op(t.val[5], 1)
        with pytest.raises(ValidationError):
            t.validate(o)


class TestCellWeight:
    def test_slots_stand_for_many_cells(self):
        # one slot = 3 real cells: an update adds 3*v to a sum slot
        pair = get_pair("plus-plus")
        t = SegTree1D([10, 20, 30], pair, cell_weight=3)
        t.update(0, 1, 5)
        assert t.to_array() == [10 + 15, 20 + 15, 30]
        assert t.query(0, 2) == 90
