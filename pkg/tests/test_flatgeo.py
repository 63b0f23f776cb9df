"""Tests for the octahedral flat surface and flat torus ratios."""

import math
import random
import time
from collections import Counter
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elsys.flatgeo import (
    OCTAHEDRON,
    OctahedronComplex,
    SaddleConnection,
    flat_length_classification,
    lattice_norm_sq,
    saddle_connections,
    torus_systolic_ratio,
)


class TestOctahedronComplex:
    def test_counts_and_euler_characteristic(self):
        assert len(OCTAHEDRON.faces) == 8
        assert len(OCTAHEDRON.edges()) == 12
        assert OCTAHEDRON.euler_characteristic() == 2

    def test_each_vertex_lies_in_four_faces(self):
        # four unit triangles give cone angle 4*pi/3 at every vertex
        for v in range(6):
            assert len(OCTAHEDRON.vertex_faces(v)) == 4

    def test_orientations_are_coherent(self):
        directed = Counter()
        for f in OCTAHEDRON.faces:
            a, b, c = OCTAHEDRON.face_vertices(f)
            directed.update([(a, b), (b, c), (c, a)])
        assert all(n == 1 for n in directed.values())
        assert len(directed) == 24

    def test_neighbor_flips_one_sign_and_shares_an_edge(self):
        for f in OCTAHEDRON.faces:
            for axis in range(3):
                g = OCTAHEDRON.neighbor(f, axis)
                assert sum(a != b for a, b in zip(f, g)) == 1
                shared = set(OCTAHEDRON.face_vertices(f)) & set(
                    OCTAHEDRON.face_vertices(g))
                assert len(shared) == 2

    def test_adjacency_classification(self):
        assert OCTAHEDRON.opposite(0) == 1
        assert OCTAHEDRON.opposite(4) == 5
        assert OCTAHEDRON.are_adjacent(0, 2)
        assert not OCTAHEDRON.are_adjacent(0, 1)
        assert not OCTAHEDRON.are_adjacent(3, 3)
        # each vertex: four neighbors and one antipode
        for v in range(6):
            nbrs = [w for w in range(6) if OCTAHEDRON.are_adjacent(v, w)]
            assert len(nbrs) == 4


class TestSpectrum:
    def spectrum(self):
        return saddle_connections(max_norm_sq=16)

    def test_required_squared_lengths_are_present(self):
        norms = {s.norm_sq for s in self.spectrum()}
        assert {1, 3, 4, 7, 9} <= norms

    def test_genuine_norms_up_to_sixteen(self):
        genuine = {s.norm_sq for s in self.spectrum() if s.is_genuine}
        assert genuine == {1, 3, 7, 13}

    def test_composite_norms_up_to_sixteen(self):
        comp = {s.norm_sq for s in self.spectrum() if not s.is_genuine}
        assert comp == {4, 9, 12, 16}

    def test_shortest_edges(self):
        edges = [s for s in self.spectrum() if s.norm_sq == 1]
        assert len(edges) == 4
        assert all(s.is_genuine for s in edges)
        assert {s.end_vertex for s in edges} == {2, 3, 4, 5}

    def test_adjacent_gap_is_one_then_sqrt_seven(self):
        adj = sorted({s.norm_sq for s in self.spectrum()
                      if s.is_genuine
                      and OCTAHEDRON.are_adjacent(s.base_vertex, s.end_vertex)})
        assert adj[:2] == [1, 7]

    def test_opposite_vertices_at_sqrt_three(self):
        opp = [s for s in self.spectrum()
               if s.is_genuine
               and s.end_vertex == OCTAHEDRON.opposite(s.base_vertex)]
        assert sorted({s.norm_sq for s in opp})[0] == 3
        assert len([s for s in opp if s.norm_sq == 3]) == 4

    def test_doubled_edge_passes_one_adjacent_vertex(self):
        doubled = [s for s in self.spectrum() if s.norm_sq == 4]
        assert doubled
        for s in doubled:
            assert len(s.through_points) == 1
            mid = s.through_vertices[0]
            assert OCTAHEDRON.are_adjacent(s.base_vertex, mid)
            assert OCTAHEDRON.are_adjacent(mid, s.end_vertex)

    def test_tripled_edge_closes_around_a_face(self):
        tripled = [s for s in self.spectrum() if s.norm_sq == 9]
        assert tripled
        for s in tripled:
            assert len(s.through_points) == 2
            assert s.end_vertex == s.base_vertex
            walk = (s.base_vertex, *s.through_vertices, s.end_vertex)
            for a, b in zip(walk, walk[1:]):
                assert OCTAHEDRON.are_adjacent(a, b)

    def test_doubled_diagonal_passes_the_antipode(self):
        for s in (s for s in self.spectrum() if s.norm_sq == 12):
            assert s.through_vertices == (OCTAHEDRON.opposite(s.base_vertex),)
            assert s.end_vertex == s.base_vertex

    def test_through_points_are_ordered_and_collinear(self):
        for s in self.spectrum():
            last = 0
            for p in s.through_points:
                n = lattice_norm_sq(p)
                assert last < n < s.norm_sq
                last = n
                assert p[0] * s.vec[1] - p[1] * s.vec[0] == 0

    def test_genuine_vectors_are_primitive(self):
        for s in self.spectrum():
            if s.is_genuine:
                assert gcd(s.vec[0], s.vec[1]) == 1
            else:
                assert gcd(s.vec[0], s.vec[1]) > 1

    def test_norms_match_vectors(self):
        for s in self.spectrum():
            assert s.norm_sq == lattice_norm_sq(s.vec)
            assert s.norm_sq <= 16
            assert s.length == pytest.approx(math.sqrt(s.norm_sq))

    def test_base_choice_only_relabels(self):
        ref = Counter((s.norm_sq, s.is_genuine) for s in self.spectrum())
        for base in (1, 3, 4):
            alt = saddle_connections(max_norm_sq=16, base_vertex=base)
            assert Counter((s.norm_sq, s.is_genuine) for s in alt) == ref
            assert all(s.base_vertex == base for s in alt)
            adj = sorted({s.norm_sq for s in alt if s.is_genuine
                          and OCTAHEDRON.are_adjacent(s.base_vertex, s.end_vertex)})
            assert adj[:2] == [1, 7]

    def test_smaller_cap_is_a_prefix(self):
        small = saddle_connections(max_norm_sq=7)
        large = [s for s in self.spectrum() if s.norm_sq <= 7]
        assert sorted(small, key=lambda s: (s.norm_sq, s.vec)) == large

    def test_bad_base_rejected(self):
        with pytest.raises(ValueError):
            saddle_connections(base_vertex=6)

    def test_runs_fast(self):
        t0 = time.perf_counter()
        saddle_connections(max_norm_sq=16)
        flat_length_classification()
        assert time.perf_counter() - t0 < 10.0


class TestClassification:
    def test_only_two_chains_below_twice_sqrt_three(self):
        result = flat_length_classification()
        assert result.threshold == pytest.approx(2 * math.sqrt(3))
        totals = [c.total for c in result.chains]
        assert totals == [pytest.approx(2.0), pytest.approx(3.0)]

    def test_chain_structure(self):
        chains = flat_length_classification().chains
        doubled, face = chains
        assert doubled.norms_sq == (1, 1)
        assert doubled.pair_pattern == ("adjacent", "adjacent")
        assert "edge" in doubled.description
        assert face.norms_sq == (1, 1, 1)
        assert set(face.pair_pattern) == {"adjacent"}
        assert "face" in face.description

    def test_doubled_diagonal_is_excluded_by_a_strict_threshold(self):
        # the chain over the antipode has total exactly 2*sqrt(3)
        totals = [c.total for c in flat_length_classification().chains]
        assert all(t < 2 * math.sqrt(3) - 0.4 for t in totals)
        wider = flat_length_classification(2 * math.sqrt(3) + 1e-9)
        assert any(c.norms_sq == (3, 3) for c in wider.chains)

    def test_wider_threshold_picks_up_mixed_chains(self):
        result = flat_length_classification(3.8)
        totals = sorted(round(c.total, 4) for c in result.chains)
        assert totals == [2.0, 3.0, 3.4641, 3.6458, 3.7321]

    def test_assumptions_are_stated(self):
        result = flat_length_classification()
        assert len(result.assumptions) >= 2
        assert all(isinstance(a, str) and a for a in result.assumptions)

    def test_threshold_above_four_is_refused(self):
        with pytest.raises(ValueError):
            flat_length_classification(4.5)


class TestTorusRatio:
    def test_hexagonal_torus_attains_the_maximum(self):
        tau = complex(0.5, math.sqrt(3) / 2)
        assert torus_systolic_ratio(tau) == pytest.approx(
            2 / math.sqrt(3), rel=1e-12)

    def test_square_and_tall_tori(self):
        assert torus_systolic_ratio(1j) == pytest.approx(1.0, rel=1e-12)
        assert torus_systolic_ratio(2j) == pytest.approx(0.5, rel=1e-12)
        assert torus_systolic_ratio(0.3 + 5j) == pytest.approx(0.2, rel=1e-12)

    def test_modular_invariance(self):
        for tau in (0.37 + 0.45j, -1.6 + 0.2j, 0.5 + 0.86j, 2.25 + 3j):
            r = torus_systolic_ratio(tau)
            assert torus_systolic_ratio(tau + 1) == pytest.approx(r, abs=1e-12)
            assert torus_systolic_ratio(-1 / tau) == pytest.approx(r, abs=1e-12)

    def test_thousand_samples_never_beat_hexagonal(self):
        rng = random.Random(20260822)
        bound = 2 / math.sqrt(3) + 1e-9
        for _ in range(1000):
            tau = complex(rng.uniform(-2, 2), rng.uniform(0.05, 4.0))
            assert torus_systolic_ratio(tau) <= bound

    @given(st.complex_numbers(min_magnitude=0.05, max_magnitude=8,
                              allow_nan=False, allow_infinity=False))
    @settings(max_examples=80, deadline=None)
    def test_bound_holds_everywhere(self, tau):
        if not tau.imag > 1e-4:
            tau = complex(tau.real, abs(tau.imag) + 0.1)
        assert torus_systolic_ratio(tau) <= 2 / math.sqrt(3) + 1e-6

    def test_real_modulus_rejected(self):
        with pytest.raises(ValueError):
            torus_systolic_ratio(0.7)
        with pytest.raises(ValueError):
            torus_systolic_ratio(1 - 2j)
