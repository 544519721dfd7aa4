import numpy as np
import pytest

from graphfx import (
    CooGraph,
    GraphFormatError,
    assign_random_weights,
    coo_to_csr,
    csr_to_coo,
    csr_to_csc,
    generate_erdos_renyi,
    generate_rgg,
    generate_rmat,
    load_csr_cache,
    load_graph,
    load_matrix_market,
    save_csr_cache,
)

from _graphs import complete_graph, path_graph


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


class TestMatrixMarket:
    def test_small_undirected(self, tmp_path):
        p = write(
            tmp_path, "t.mtx",
            "%%MatrixMarket matrix coordinate pattern general\n3 3 2\n1 2\n2 3\n",
        )
        g = load_matrix_market(p, make_undirected=True)
        assert g.num_vertices == 3
        assert g.num_edges == 4
        assert g.row_offsets.tolist() == [0, 1, 3, 4]
        assert g.column_indices.tolist() == [1, 0, 2, 1]

    def test_empty_edge_list(self, tmp_path):
        p = write(tmp_path, "e.mtx",
                  "%%MatrixMarket matrix coordinate pattern general\n4 4 0\n")
        g = load_matrix_market(p)
        assert g.row_offsets.tolist() == [0, 0, 0, 0, 0]
        assert g.column_indices.tolist() == []

    def test_duplicate_entry_stored_once(self, tmp_path):
        p = write(
            tmp_path, "d.mtx",
            "%%MatrixMarket matrix coordinate pattern general\n3 3 2\n1 2\n1 2\n",
        )
        g = load_matrix_market(p)
        assert g.num_edges == 1

    def test_symmetric_header_mirrors(self, tmp_path):
        p = write(
            tmp_path, "s.mtx",
            "%%MatrixMarket matrix coordinate pattern symmetric\n3 3 2\n2 1\n3 2\n",
        )
        g = load_matrix_market(p)
        assert g.num_edges == 4

    def test_weights_parsed(self, tmp_path):
        p = write(
            tmp_path, "w.mtx",
            "%%MatrixMarket matrix coordinate integer general\n2 2 1\n1 2 7\n",
        )
        g = load_matrix_market(p)
        assert g.edge_weights.tolist() == [7]

    def test_plain_edge_list(self, tmp_path):
        p = write(tmp_path, "el.txt", "# comment\n0 1\n1 2\n")
        g = load_matrix_market(p)
        assert g.num_vertices == 3
        assert g.num_edges == 2

    def test_malformed_line_reports_number(self, tmp_path):
        p = write(
            tmp_path, "bad.mtx",
            "%%MatrixMarket matrix coordinate pattern general\n3 3 2\n1 2\nfoo bar\n",
        )
        with pytest.raises(GraphFormatError, match="line 4"):
            load_matrix_market(p)

    def test_out_of_bounds_index_rejected(self, tmp_path):
        p = write(
            tmp_path, "oob.mtx",
            "%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 5\n",
        )
        with pytest.raises(GraphFormatError, match="line 3"):
            load_matrix_market(p)


class TestRmat:
    def test_default_parameters_sum_to_one(self):
        from graphfx.generators import RMAT_A, RMAT_B, RMAT_C, RMAT_D

        assert (RMAT_A, RMAT_B, RMAT_C, RMAT_D) == (0.57, 0.19, 0.19, 0.05)
        assert abs(RMAT_A + RMAT_B + RMAT_C + RMAT_D - 1.0) < 1e-12

    def test_size_contract(self):
        coo = generate_rmat(1, 1, seed=3)
        assert coo.num_edges == 2
        assert set(coo.src.tolist()) <= {0, 1}
        assert set(coo.dst.tolist()) <= {0, 1}

    def test_determinism(self):
        a = generate_rmat(6, 8, seed=42)
        b = generate_rmat(6, 8, seed=42)
        assert np.array_equal(a.src, b.src) and np.array_equal(a.dst, b.dst)
        c = generate_rmat(6, 8, seed=43)
        assert not (np.array_equal(a.src, c.src) and np.array_equal(a.dst, c.dst))

    def test_bad_probabilities_rejected(self):
        with pytest.raises(ValueError):
            generate_rmat(4, 4, a=0.5, b=0.3, c=0.3, d=0.3)

    def test_skew_follows_initiator(self):
        # strongly top-left-weighted parameters concentrate edges on low ids
        coo = generate_rmat(8, 16, a=0.97, b=0.01, c=0.01, d=0.01, seed=1)
        assert np.mean(coo.src < 64) > 0.8


class TestRgg:
    def test_threshold_is_strict(self):
        rng = np.random.default_rng(5)
        pts = rng.random((2, 2))
        dist = float(np.hypot(*(pts[0] - pts[1])))
        near = generate_rgg(1, min(0.999, dist * 1.01), seed=5)
        far = generate_rgg(1, dist * 0.99, seed=5)
        assert near.num_edges == 1
        assert far.num_edges == 0

    def test_matches_brute_force(self):
        scale, thr, seed = 10, 0.1, 11
        coo = generate_rgg(scale, thr, seed=seed)
        pts = np.random.default_rng(seed).random((1 << scale, 2))
        d2 = ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
        iu = np.triu_indices(1 << scale, k=1)
        expect = {(int(a), int(b)) for a, b in zip(*[x[d2[iu] < thr * thr] for x in iu])}
        got = set(zip(coo.src.tolist(), coo.dst.tolist()))
        assert got == expect

    def test_determinism(self):
        a = generate_rgg(6, 0.05, seed=9)
        b = generate_rgg(6, 0.05, seed=9)
        assert np.array_equal(a.src, b.src) and np.array_equal(a.dst, b.dst)


class TestWeights:
    def test_degenerate_range(self):
        g = path_graph(5)
        gw = assign_random_weights(g, 1, 1, seed=0)
        assert np.all(gw.edge_weights == 1)

    def test_range_bounds(self):
        g = complete_graph(30)
        gw = assign_random_weights(g, 1, 64, seed=0)
        assert gw.edge_weights.min() >= 1
        assert gw.edge_weights.max() <= 64

    def test_determinism(self):
        g = complete_graph(10)
        a = assign_random_weights(g, 1, 64, seed=4)
        b = assign_random_weights(g, 1, 64, seed=4)
        assert np.array_equal(a.edge_weights, b.edge_weights)

    def test_symmetric_edges_equal_weight(self):
        g = complete_graph(12)
        gw = assign_random_weights(g, 1, 64, seed=8)
        s, d, w = gw.edge_sources(), gw.column_indices, gw.edge_weights
        lut = {(int(a), int(b)): int(x) for a, b, x in zip(s, d, w)}
        assert all(lut[(b, a)] == x for (a, b), x in lut.items())

    def test_bad_range_rejected(self):
        with pytest.raises(ValueError):
            assign_random_weights(path_graph(3), 0, 4, seed=0)


class TestConversions:
    def test_k3_coo_to_csr(self):
        g = complete_graph(3)
        assert g.row_offsets.tolist() == [0, 2, 4, 6]

    def test_empty_graph(self):
        g = coo_to_csr(CooGraph(0, np.array([], dtype=np.int64), np.array([], dtype=np.int64)))
        assert g.num_vertices == 0 and g.num_edges == 0

    def test_directed_path_csc(self):
        g = path_graph(3, undirected=False)
        t = csr_to_csc(g)
        assert [t.neighbors(v).tolist() for v in range(3)] == [[], [0], [1]]

    def test_roundtrip_identity(self):
        g = complete_graph(5)
        back = coo_to_csr(csr_to_coo(g))
        assert np.array_equal(back.row_offsets, g.row_offsets)
        assert np.array_equal(back.column_indices, g.column_indices)

    def test_csc_involution(self):
        g = coo_to_csr(generate_rmat(5, 4, seed=2))
        twice = csr_to_csc(csr_to_csc(g))
        assert np.array_equal(twice.row_offsets, g.row_offsets)
        assert np.array_equal(twice.column_indices, g.column_indices)

    def test_csc_preserves_edge_weights(self):
        g = assign_random_weights(path_graph(4), 1, 9, seed=1)
        t = csr_to_csc(g)
        assert sorted(t.edge_weights.tolist()) == sorted(g.edge_weights.tolist())


class TestInvariants:
    def test_degree_sum(self):
        for seed in range(5):
            g = coo_to_csr(generate_rmat(6, 5, seed=seed), make_undirected=True)
            assert int(g.degrees.sum()) == g.num_edges
            g.validate()

    def test_symmetrized_adjacency_matrix_is_symmetric(self):
        g = coo_to_csr(generate_rmat(8, 6, seed=3), make_undirected=True)
        n = g.num_vertices
        assert n <= 1024
        dense = np.zeros((n, n), dtype=bool)
        dense[g.edge_sources(), g.column_indices] = True
        assert np.array_equal(dense, dense.T)
        assert not dense.diagonal().any()

    def test_generators_pure(self):
        a = generate_erdos_renyi(50, 0.1, seed=6)
        b = generate_erdos_renyi(50, 0.1, seed=6)
        assert np.array_equal(a.src, b.src) and np.array_equal(a.dst, b.dst)


class TestBinaryCache:
    def test_roundtrip(self, tmp_path):
        g = assign_random_weights(complete_graph(6), 1, 64, seed=0)
        p = tmp_path / "g.csr"
        save_csr_cache(g, p)
        back = load_csr_cache(p)
        assert back.num_vertices == g.num_vertices
        assert np.array_equal(back.row_offsets, g.row_offsets)
        assert np.array_equal(back.column_indices, g.column_indices)
        assert np.array_equal(back.edge_weights, g.edge_weights)
        assert back.undirected == g.undirected

    def test_load_graph_dispatch(self, tmp_path):
        g = complete_graph(4)
        p = tmp_path / "g.bin"
        save_csr_cache(g, p)
        assert load_graph(p).num_edges == g.num_edges

    def test_load_graph_symmetrizes_directed_cache(self, tmp_path):
        g = path_graph(3, undirected=False)
        p = tmp_path / "d.bin"
        save_csr_cache(g, p)
        back = load_graph(p, make_undirected=True)
        assert back.undirected
        assert back.num_edges == 4

    def test_bad_magic(self, tmp_path):
        p = tmp_path / "junk.bin"
        p.write_bytes(b"NOTACACHE")
        with pytest.raises(GraphFormatError):
            load_csr_cache(p)
