import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bkcolor.coloring import (
    PartialColoring,
    RandomSource,
    compute_Zv,
    conflict_delete,
    random_coloring,
    repeated_color_count,
)
from bkcolor.graph import Coloring, Graph

from conftest import complete, path, random_graph, star


def test_golden_p3_stream():
    # frozen from the first run of the generator; any change breaks trace replay
    assert random_coloring(path(3), 2, RandomSource(12345)).assignment == (1, 2, 2)
    assert random_coloring(path(3), 2, RandomSource(0)).assignment == (1, 1, 2)


def test_single_color_and_empty():
    assert set(random_coloring(path(6), 1, RandomSource(3)).assignment) == {1}
    assert random_coloring(Graph(0, []), 4, RandomSource(3)).assignment == ()


def test_zero_palette_rejected():
    with pytest.raises(ValueError):
        random_coloring(path(2), 0, RandomSource(1))


def test_draws_are_independent_of_other_vertices():
    rng = RandomSource(99)
    rounds = [0] * 6
    base = random_coloring(path(6), 5, rng, rounds).assignment
    rounds[2] = 4
    moved = random_coloring(path(6), 5, rng, rounds).assignment
    assert [c for i, c in enumerate(base) if i != 2] == [c for i, c in enumerate(moved) if i != 2]


def test_uniformity_rough():
    rng = RandomSource(5)
    counts = [0] * 7
    for v in range(7000):
        counts[rng.color(v, 0, 7) - 1] += 1
    assert all(850 < c < 1150 for c in counts)


class TestConflictDelete:
    def test_proper_unchanged(self):
        assert conflict_delete(path(3), Coloring((1, 2, 1), 2)).assignment == (1, 2, 1)

    def test_monochromatic_triangle(self):
        assert conflict_delete(complete(3), Coloring((1, 1, 1), 1)).assignment == (None, None, None)

    def test_single_conflict(self):
        assert conflict_delete(path(3), Coloring((1, 1, 2), 2)).assignment == (None, None, 2)

    @given(st.integers(0, 2**32), st.integers(1, 5), st.integers(2, 25), st.floats(0.05, 0.9))
    @settings(max_examples=60, deadline=None)
    def test_idempotent_and_support_proper(self, seed, q, n, p):
        g = random_graph(n, p, seed)
        once = conflict_delete(g, random_coloring(g, q, RandomSource(seed)))
        assert once.is_proper(g)
        assert conflict_delete(g, once) == once


class TestStatistics:
    def setup_method(self):
        self.g = star(4)

    def _phi(self, leaves):
        return PartialColoring((None, *leaves), 3)

    def test_zv_one_pair(self):
        assert compute_Zv(self.g, self._phi((1, 1, 2, 3)), 0) == 1

    def test_zv_all_distinct(self):
        assert compute_Zv(self.g, self._phi((1, 2, 3, None)), 0) == 0

    def test_zv_triple_color_does_not_count(self):
        assert compute_Zv(self.g, self._phi((1, 1, 1, 2)), 0) == 0

    def test_zv_adjacent_pair_does_not_count(self):
        g = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2)])
        assert compute_Zv(g, PartialColoring((None, 1, 1, 2), 2), 0) == 0

    def test_repeated(self):
        assert repeated_color_count(self.g, self._phi((1, 1, 1, 2)), 0) == 1
        assert repeated_color_count(self.g, self._phi((1, 1, 2, 2)), 0) == 2
        assert repeated_color_count(complete(4), PartialColoring((1, 2, 3, 4), 4), 0) == 0

    @given(st.integers(0, 2**32), st.integers(2, 6))
    @settings(max_examples=50, deadline=None)
    def test_zv_never_exceeds_repeated(self, seed, q):
        g = random_graph(18, 0.35, seed)
        phi = conflict_delete(g, random_coloring(g, q, RandomSource(seed)))
        for v in range(g.n):
            assert compute_Zv(g, phi, v) <= repeated_color_count(g, phi, v)


def test_partial_json_round_trip():
    phi = PartialColoring((1, None, 3), 3)
    assert phi.to_json() == [1, None, 3]
    assert PartialColoring.from_json(phi.to_json(), 3) == phi
    assert phi.uncolored() == [1] and not phi.is_total()
