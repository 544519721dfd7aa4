import numpy as np
import pytest

from graphfx import (
    Frontier,
    LbParams,
    Strategy,
    build_plan,
    choose_strategy,
    compute_scan_offsets,
    coo_to_csr,
    generate_rmat,
    plan_lb_input,
    plan_lb_output,
    plan_pairs,
    plan_thread_expand,
    plan_twc,
)
from graphfx.graph import CooGraph
from graphfx.load_balance import scan_from_degrees

from _graphs import star_graph
from _oracles import nested_loop_pairs


def frontier_of(*items):
    return Frontier.from_items(np.array(items, dtype=np.int64))


def scan_of(*degrees):
    return scan_from_degrees(np.array(degrees, dtype=np.int64))[0]


class TestScanOffsets:
    def test_prefix_sum(self):
        scan = scan_of(3, 1, 1, 1)
        assert scan.tolist() == [0, 3, 4, 5, 6]
        assert scan[-1] == 6

    def test_empty_frontier(self):
        g = star_graph(3)
        scan, total = compute_scan_offsets(g, frontier_of())
        assert scan.tolist() == [0]
        assert total == 0

    def test_star_center(self):
        g = star_graph(3)
        scan, total = compute_scan_offsets(g, frontier_of(0))
        assert scan.tolist() == [0, 3]
        assert total == 3


class TestThreadExpand:
    def test_one_chunk_per_item(self):
        scan = scan_of(3, 1, 1, 1)
        plan = plan_thread_expand(frontier_of(9, 9, 9, 9), scan)
        assert plan.num_chunks == 4

    def test_degree_zero_chunk_retained(self):
        scan = scan_of(2, 0, 1)
        plan = plan_thread_expand(frontier_of(5, 6, 7), scan)
        assert plan.num_chunks == 3
        assert plan.chunks[1].slot_begin == plan.chunks[1].slot_end == 2

    def test_chunk_ranges_match_offsets(self):
        scan = scan_of(3, 1, 1, 1)
        plan = plan_thread_expand(frontier_of(1, 2, 3, 4), scan)
        for i, ch in enumerate(plan.chunks):
            assert (ch.slot_begin, ch.slot_end) == (int(scan[i]), int(scan[i + 1]))


class TestTwc:
    def test_three_classes(self):
        scan = scan_of(500, 40, 3)
        plan = plan_twc(frontier_of(0, 1, 2), scan, small_cut=32, large_cut=256)
        assert [c.size_class for c in plan.chunks] == ["large", "medium", "small"]
        assert [c.item_begin for c in plan.chunks] == [0, 1, 2]

    def test_all_small_matches_thread_expand(self):
        scan = scan_of(3, 1, 2)
        f = frontier_of(0, 1, 2)
        twc = plan_twc(f, scan, small_cut=32, large_cut=256)
        te = plan_thread_expand(f, scan)
        assert [(c.slot_begin, c.slot_end, c.item_begin) for c in twc.chunks] == [
            (c.slot_begin, c.slot_end, c.item_begin) for c in te.chunks
        ]

    def test_boundary_degree_is_inclusive(self):
        scan = scan_of(256, 32, 31)
        plan = plan_twc(frontier_of(0, 1, 2), scan, small_cut=32, large_cut=256)
        classes = {c.item_begin: c.size_class for c in plan.chunks}
        assert classes == {0: "large", 1: "medium", 2: "small"}

    def test_class_ordering(self):
        scan = scan_of(1, 300, 40, 2, 500)
        plan = plan_twc(frontier_of(*range(5)), scan, small_cut=32, large_cut=256)
        assert [c.size_class for c in plan.chunks] == [
            "large", "large", "medium", "small", "small",
        ]
        assert [c.item_begin for c in plan.chunks] == [1, 4, 2, 0, 3]


class TestLbOutput:
    def test_chunk_ranges(self):
        scan = scan_of(4, 4, 2)
        plan = plan_lb_output(scan, 10, chunk_size=4)
        assert [(c.slot_begin, c.slot_end) for c in plan.chunks] == [
            (0, 4), (4, 8), (8, 10),
        ]

    def test_source_resolution(self):
        scan = scan_of(3, 1, 1, 1)
        pairs = plan_pairs(plan_lb_output(scan, 6, chunk_size=4))
        lut = {int(s): int(i) for i, s in pairs}
        assert lut[3] == 1

    def test_single_item_many_chunks(self):
        scan = scan_of(10)
        plan = plan_lb_output(scan, 10, chunk_size=4)
        assert plan.num_chunks == 3
        assert all(c.item_begin == 0 for c in plan.chunks)

    def test_chunk_count_formula(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            degs = rng.integers(0, 20, size=rng.integers(0, 30))
            scan, total = scan_from_degrees(degs.astype(np.int64))
            n = int(rng.integers(1, 9))
            plan = plan_lb_output(scan, total, chunk_size=n)
            assert plan.num_chunks == -(-total // n)


class TestLbInput:
    def test_chunk_count(self):
        scan = scan_of(*([1] * 8))
        plan = plan_lb_input(Frontier.from_items(np.zeros(8, dtype=np.int64)), scan, 4)
        assert plan.num_chunks == 2

    def test_output_range_definition(self):
        scan = scan_of(2, 3, 0, 5)
        plan = plan_lb_input(Frontier.from_items(np.zeros(4, dtype=np.int64)), scan, 2)
        ch = plan.chunks[1]
        assert ch.slot_begin == int(scan[2]) and ch.slot_end == int(scan[4])

    def test_empty(self):
        plan = plan_lb_input(frontier_of(), scan_of(), 4)
        assert plan.num_chunks == 0


class TestChooseStrategy:
    def _graph_with(self, n, m):
        # ring-like filler with exact edge count; only sizes matter here
        src = np.arange(m, dtype=np.int64) % n
        dst = (np.arange(m, dtype=np.int64) * 7 + 1) % n
        return coo_to_csr(CooGraph(n, src, dst), dedup=False)

    def test_dense_small_frontier(self):
        g = self._graph_with(1000, 8000)
        f = Frontier.from_items(np.zeros(100, dtype=np.int64))
        assert choose_strategy(g, f) == Strategy.LB_LIGHT

    def test_dense_large_frontier(self):
        g = self._graph_with(1000, 8000)
        f = Frontier.from_items(np.zeros(10000, dtype=np.int64))
        assert choose_strategy(g, f) == Strategy.LB

    def test_sparse(self):
        g = self._graph_with(1000, 2000)
        f = Frontier.from_items(np.zeros(100, dtype=np.int64))
        assert choose_strategy(g, f) == Strategy.TWC

    def test_average_degree_boundary(self):
        just_under = self._graph_with(1000, 4999)
        at = self._graph_with(1000, 5000)
        f = Frontier.from_items(np.zeros(10, dtype=np.int64))
        assert choose_strategy(just_under, f) == Strategy.TWC
        assert choose_strategy(at, f) == Strategy.LB_LIGHT

    def test_frontier_size_boundary(self):
        g = self._graph_with(1000, 8000)
        under = Frontier.from_items(np.zeros(4095, dtype=np.int64))
        at = Frontier.from_items(np.zeros(4096, dtype=np.int64))
        assert choose_strategy(g, under) == Strategy.LB_LIGHT
        assert choose_strategy(g, at) == Strategy.LB


class TestExactness:
    @pytest.mark.parametrize("strategy", [
        Strategy.THREAD_EXPAND, Strategy.TWC, Strategy.LB,
        Strategy.LB_LIGHT, Strategy.LB_CULL,
    ])
    def test_plans_tile_work_exactly(self, strategy):
        rng = np.random.default_rng(hash(strategy.value) % 2**32)
        for _ in range(25):
            scale = int(rng.integers(3, 8))
            g = coo_to_csr(generate_rmat(scale, 5, seed=int(rng.integers(1 << 30))),
                           make_undirected=True)
            size = int(rng.integers(0, g.num_vertices + 1))
            f = Frontier.from_items(
                rng.choice(g.num_vertices, size=size, replace=False)
            )
            params = LbParams(small_cut=4, large_cut=16, chunk_size=8, items_per_chunk=4)
            plan = build_plan(g, f, strategy, params)
            got = plan_pairs(plan)
            want = nested_loop_pairs(plan.scan_offsets)
            got_sorted = got[np.lexsort((got[:, 1], got[:, 0]))]
            assert np.array_equal(got_sorted, want)
