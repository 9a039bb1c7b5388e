"""Graphs, clique complexes, incidence operators, and their invariants."""

import numpy as np
import pytest

from hodgerank import (CliqueComplex, Graph, build_clique_complex,
                       complex_stats, incidence_1, incidence_2, n_components)
from oracles import brute_force_triangles, elimination_rank


def _random_graph(rng, n, p):
    rows, cols = np.triu_indices(n, k=1)
    mask = rng.random(rows.shape[0]) < p
    return Graph.from_edges(n, np.stack([rows[mask], cols[mask]], axis=1))


FIXTURE_EDGES = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (1, 5), (4, 6), (6, 7)]


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(3, np.array([[0, 0]]))  # self-loop
    with pytest.raises(ValueError):
        Graph(3, np.array([[0, 1], [0, 1]]))  # duplicate
    with pytest.raises(ValueError):
        Graph(3, np.array([[0, 5]]))  # out of range
    with pytest.raises(ValueError):
        Graph(3, np.array([[1, 0]]))  # not i < j
    g = Graph.from_edges(3, [(2, 0), (1, 0)])  # normalized on the way in
    assert g.edges.tolist() == [[0, 1], [0, 2]]
    assert g.degrees.tolist() == [2, 1, 1]


def test_complete_graph_complex():
    g = Graph.from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    c = build_clique_complex(g)
    assert c.kappa == (4, 6, 4)
    assert c.triangles.tolist() == [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]


def test_fixture_complex_counts_and_betti():
    c = build_clique_complex(Graph.from_edges(8, FIXTURE_EDGES))
    assert c.kappa == (8, 9, 1)
    assert c.triangles.tolist() == [[0, 1, 2]]
    stats = complex_stats(c, compute_betti=True)
    assert (stats.beta0, stats.beta1) == (1, 1)


def test_triangles_match_brute_force():
    rng = np.random.default_rng(5)
    for _ in range(150):
        n = int(rng.integers(2, 30))
        g = _random_graph(rng, n, rng.uniform(0.05, 0.6))
        c = build_clique_complex(g)
        expected = brute_force_triangles(n, g.edges.tolist())
        got = {tuple(t) for t in c.triangles.tolist()}
        assert got == expected
        # lexicographic, strictly increasing storage
        if c.triangles.shape[0] > 1:
            keys = [tuple(t) for t in c.triangles.tolist()]
            assert keys == sorted(keys)


def test_incidence_1_gradient_and_kernel():
    c = build_clique_complex(Graph.from_edges(3, [(0, 1), (1, 2)]))
    a1 = incidence_1(c)
    assert np.allclose(a1 @ np.array([0.0, 1.0, 2.0]), [1.0, 1.0])
    assert np.allclose(a1 @ np.zeros(3), 0.0)
    fixture = build_clique_complex(Graph.from_edges(8, FIXTURE_EDGES))
    assert np.allclose(incidence_1(fixture) @ np.ones(8), 0.0)


def test_incidence_rows_and_signs():
    c = build_clique_complex(Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)]))
    a1 = incidence_1(c).toarray()
    assert a1.tolist() == [[-1, 1, 0], [-1, 0, 1], [0, -1, 1]]
    a2 = incidence_2(c).toarray()
    assert a2.tolist() == [[1, -1, 1]]


def test_boundary_of_boundary_vanishes():
    rng = np.random.default_rng(9)
    for _ in range(500):
        n = int(rng.integers(3, 24))
        c = build_clique_complex(_random_graph(rng, n, rng.uniform(0.1, 0.9)))
        product = (incidence_2(c) @ incidence_1(c))
        assert product.nnz == 0 or np.max(np.abs(product.data)) == 0.0


def test_laplacian_is_degree_minus_adjacency():
    rng = np.random.default_rng(13)
    for _ in range(50):
        n = int(rng.integers(2, 20))
        g = _random_graph(rng, n, 0.4)
        c = build_clique_complex(g)
        a1 = incidence_1(c)
        lap = (a1.T @ a1).toarray()
        expected = np.diag(g.degrees).astype(float) - g.adjacency_matrix().astype(float)
        assert np.array_equal(lap, expected)


def test_betti_numbers_against_elimination_oracle():
    rng = np.random.default_rng(21)
    for _ in range(60):
        n = int(rng.integers(2, 18))
        g = _random_graph(rng, n, rng.uniform(0.1, 0.7))
        c = build_clique_complex(g)
        stats = complex_stats(c, compute_betti=True)
        r1 = elimination_rank(incidence_1(c).toarray())
        r2 = elimination_rank(incidence_2(c).toarray())
        assert stats.beta0 == c.kappa[0] - r1
        assert stats.beta1 == c.kappa[1] - r1 - r2
        assert stats.beta0 == n_components(g)


def test_betti_known_cases():
    path = build_clique_complex(Graph.from_edges(3, [(0, 1), (1, 2)]))
    s = complex_stats(path, compute_betti=True)
    assert (s.beta0, s.beta1) == (1, 0)
    cycle = build_clique_complex(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]))
    s = complex_stats(cycle, compute_betti=True)
    assert (s.beta0, s.beta1) == (1, 1)
    k4 = build_clique_complex(Graph.from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)]))
    s = complex_stats(k4, compute_betti=True)
    assert (s.beta0, s.beta1) == (1, 0)
    two_edges = build_clique_complex(Graph.from_edges(4, [(0, 1), (2, 3)]))
    assert complex_stats(two_edges, compute_betti=True).beta0 == 2


def test_betti_size_cap():
    links = np.array([(i, i + 1) for i in range(2500)], dtype=np.int64)
    c = CliqueComplex(2501, links, np.empty((0, 3), dtype=np.int64))
    with pytest.raises(ValueError):
        complex_stats(c, compute_betti=True)
    assert complex_stats(c).kappa1 == 2500  # counts alone stay available


def test_link_rows_lookup():
    c = build_clique_complex(Graph.from_edges(8, FIXTURE_EDGES))
    rows = c.link_rows(np.array([[0, 1], [4, 6]]))
    assert np.array_equal(c.links[rows], [[0, 1], [4, 6]])
    with pytest.raises(KeyError):
        c.link_rows(np.array([[0, 7]]))
    empty = build_clique_complex(Graph.from_edges(3, []))
    assert empty.link_rows(np.empty((0, 2))).size == 0
    with pytest.raises(KeyError):
        empty.link_rows(np.array([[0, 1]]))


def test_n_components_cases():
    assert n_components(Graph.from_edges(5, [])) == 5
    assert n_components(Graph(0, np.empty((0, 2), dtype=np.int64))) == 0
    assert n_components(Graph.from_edges(3, [(0, 1), (1, 2)])) == 1
    assert n_components(Graph.from_edges(4, [(0, 1), (2, 3)])) == 2


def test_empty_graph_complex():
    c = build_clique_complex(Graph.from_edges(4, []))
    assert c.kappa == (4, 0, 0)
    assert incidence_1(c).shape == (0, 4)
    assert incidence_2(c).shape == (0, 0)
