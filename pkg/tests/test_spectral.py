import random

import numpy as np
import pytest

from kirchhoff.families import FamilySpec, build
from kirchhoff.graphs import combine, complement, edit_edge, make_graph
from kirchhoff.spectral import (
    DisconnectedGraphError,
    NoEdgesError,
    kf_resistance,
    kf_spectral,
    kf_vertex,
    laplacian_matrix,
    laplacian_spectrum,
    mu1_bounds,
    resistance_matrix,
    tree_count,
    wiener,
)
from kirchhoff.verify import random_connected_graph


def fam(kind, *args):
    return build(FamilySpec(kind, args))


def spectra_close(values, expected, tol=1e-8):
    return all(abs(a - b) <= tol for a, b in zip(values, expected))


class TestSpectrum:
    def test_complete_graph(self):
        spec = laplacian_spectrum(fam("complete", 4))
        assert spectra_close(spec.values, (4, 4, 4, 0))

    def test_k6_minus_matching(self):
        spec = laplacian_spectrum(fam("kn-minus-matching", 6, 2))
        assert spectra_close(spec.values, (6, 6, 6, 4, 4, 0))

    def test_k6_minus_star(self):
        spec = laplacian_spectrum(fam("kn-minus-star", 6, 2))
        assert spectra_close(spec.values, (6, 6, 6, 5, 3, 0))

    def test_zero_multiplicity_counts_components(self):
        g = combine(fam("cycle", 3), fam("path", 4), "union")
        assert laplacian_spectrum(g).zero_multiplicity == 2

    def test_eigen_residual(self):
        g = fam("lollipop", 12, 5)
        L = laplacian_matrix(g)
        w, V = np.linalg.eigh(L)
        residual = np.linalg.norm(L @ V - V * w) / np.linalg.norm(L)
        assert residual < 1e-12

    def test_trace_is_twice_edge_count(self):
        g = fam("dumbbell", 3, 4, 2)
        assert abs(sum(laplacian_spectrum(g).values) - 2 * g.m) < 1e-9


class TestKirchhoffIndex:
    def test_complete_graphs(self):
        assert abs(kf_spectral(fam("complete", 5)) - 4) < 1e-12

    def test_cycle4(self):
        assert abs(kf_spectral(fam("cycle", 4)) - 5) < 1e-12

    def test_k6_minus_star(self):
        assert abs(kf_spectral(fam("kn-minus-star", 6, 2)) - 31 / 5) < 1e-10

    def test_resistance_route_examples(self):
        assert abs(kf_resistance(fam("cycle", 3)) - 2) < 1e-12
        assert abs(kf_resistance(fam("path", 4)) - 10) < 1e-10
        assert abs(kf_resistance(fam("complete", 4)) - 3) < 1e-12

    def test_disconnected_rejected(self):
        g = combine(fam("complete", 2), fam("complete", 2), "union")
        with pytest.raises(DisconnectedGraphError):
            kf_spectral(g)
        with pytest.raises(DisconnectedGraphError):
            kf_resistance(g)


class TestResistance:
    def test_triangle_pairs(self):
        r = resistance_matrix(fam("cycle", 3)).r
        for i in range(3):
            for j in range(3):
                expected = 0 if i == j else 2 / 3
                assert abs(r[i, j] - expected) < 1e-12

    def test_tree_resistance_is_distance(self):
        r = resistance_matrix(fam("path", 4)).r
        assert abs(r[0, 3] - 3) < 1e-10

    def test_cycle4_adjacent(self):
        # one unit resistor in parallel with a three-edge detour
        r = resistance_matrix(fam("cycle", 4)).r
        assert abs(r[0, 1] - 3 / 4) < 1e-12

    def test_vertex_sums(self):
        g = fam("lollipop", 8, 4)
        total = sum(kf_vertex(g, x) for x in range(g.n))
        assert abs(total - 2 * kf_spectral(g)) < 1e-8

    def test_vertex_examples(self):
        assert abs(kf_vertex(fam("cycle", 3), 0) - 4 / 3) < 1e-12
        assert abs(kf_vertex(fam("path", 3), 0) - 3) < 1e-12
        assert abs(kf_vertex(fam("path", 3), 1) - 2) < 1e-12


class TestWiener:
    def test_examples(self):
        assert wiener(fam("path", 4)) == 10
        assert wiener(fam("complete", 5)) == 10
        assert wiener(fam("cycle", 4)) == 8

    def test_disconnected(self):
        with pytest.raises(DisconnectedGraphError):
            wiener(combine(fam("complete", 2), fam("complete", 2), "union"))


class TestTreeCount:
    def test_complete_graphs_cayley(self):
        for n in range(2, 9):
            assert tree_count(fam("complete", n)) == n ** (n - 2)

    def test_k6_minus_star(self):
        # spectrum route: 6*6*6*5*3 / 6
        assert tree_count(fam("kn-minus-star", 6, 2)) == 540

    def test_cycles(self):
        assert tree_count(fam("cycle", 5)) == 5

    def test_disconnected_zero(self):
        assert tree_count(combine(fam("complete", 3), fam("complete", 3), "union")) == 0

    def test_trees_have_one(self):
        assert tree_count(fam("starlike", 9, (4, 3, 1))) == 1

    def test_large_exact_value(self):
        # t(K_22) needs exact big-integer arithmetic (22^20 > 2^64)
        assert tree_count(fam("complete", 22)) == 22**20


class TestMu1Bounds:
    def test_complete_equality_case(self):
        lower, upper = mu1_bounds(fam("complete", 4))
        assert (lower, upper) == (4, 4)
        assert abs(laplacian_spectrum(fam("complete", 4)).values[0] - 4) < 1e-10

    def test_path_and_cycle(self):
        assert mu1_bounds(fam("path", 4)) == (3, 4)
        assert mu1_bounds(fam("cycle", 4)) == (3, 4)

    def test_no_edges(self):
        with pytest.raises(NoEdgesError):
            mu1_bounds(make_graph(3, []))

    def test_bracketing_random(self):
        rng = random.Random(11)
        for _ in range(50):
            n = rng.randint(3, 12)
            g = random_connected_graph(rng, n, rng.randint(n - 1, n * (n - 1) // 2))
            lower, upper = mu1_bounds(g)
            mu1 = laplacian_spectrum(g).values[0]
            assert lower - 1e-8 <= mu1 <= upper + 1e-8
            assert upper <= g.n


class TestIdentities:
    def test_dual_route_agreement(self):
        rng = random.Random(5)
        for _ in range(60):
            n = rng.randint(2, 16)
            m = rng.randint(n - 1, n * (n - 1) // 2)
            g = random_connected_graph(rng, n, m)
            a, b = kf_spectral(g), kf_resistance(g)
            assert abs(a - b) <= 1e-9 * max(1.0, a)

    def test_complement_spectrum_identity(self):
        g = fam("lollipop", 9, 4)
        mu = laplacian_spectrum(g).values
        predicted = sorted([g.n - v for v in mu[:-1]] + [0.0], reverse=True)
        actual = laplacian_spectrum(complement(g)).values
        assert spectra_close(actual, predicted)

    def test_interlacing_after_insertion(self):
        g = fam("path", 8)
        bigger = edit_edge(g, (0, 5), "add")
        mu = laplacian_spectrum(g).values
        nu = laplacian_spectrum(bigger).values
        for i in range(8):
            assert nu[i] >= mu[i] - 1e-8
            if i + 1 < 8:
                assert mu[i] >= nu[i + 1] - 1e-8

    def test_kf_monotonicity(self):
        g = fam("cycle", 4)
        assert kf_spectral(edit_edge(g, (0, 1), "remove")) > kf_spectral(g) + 1e-7
        assert kf_spectral(edit_edge(g, (0, 2), "add")) < kf_spectral(g) - 1e-7

    def test_resistance_below_distance_tree_equality(self):
        tree = fam("starlike", 8, (4, 2, 1))
        r = resistance_matrix(tree).r
        from kirchhoff.graphs import shortest_paths

        for u in range(8):
            dist = shortest_paths(tree, u).dist
            for v in range(8):
                assert r[u, v] <= dist[v] + 1e-9
        assert abs(kf_resistance(tree) - wiener(tree)) < 1e-8

    def test_metric_axioms(self):
        g = fam("dumbbell", 3, 4, 3)
        r = resistance_matrix(g).r
        n = g.n
        assert np.allclose(r, r.T, atol=1e-12)
        assert (r >= -1e-12).all()
        for k in range(n):
            assert (r <= r[:, [k]] + r[[k], :] + 1e-10).all()
