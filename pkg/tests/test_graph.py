import itertools
import warnings

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bkcolor.graph import (
    ChromaticLimitExceeded,
    Coloring,
    DimacsError,
    Graph,
    OracleTooLarge,
    brute_force_chromatic,
    clique_number_exact,
    is_clique,
    nonedge_pairs_in_neighborhood,
    parse_dimacs,
    to_dimacs,
    verify_coloring,
)

from conftest import complete, cycle, path, petersen, star


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


class TestParse:
    def test_path(self):
        g = parse_dimacs("p edge 3 2\ne 1 2\ne 2 3")
        assert (g.n, g.m, g.delta) == (3, 2, 2)

    def test_duplicate_orientation_collapses(self):
        g = parse_dimacs("p edge 2 1\ne 1 2\ne 2 1")
        assert (g.n, g.m) == (2, 1)

    def test_petersen_file(self):
        text = to_dimacs(petersen(), comment="petersen")
        g = parse_dimacs(text.encode())
        assert (g.n, g.m, g.delta) == (10, 15, 3)

    def test_comments_and_col_header(self):
        g = parse_dimacs("c hello\np col 4 1\n\ne 1 4\n")
        assert g.has_edge(0, 3) and g.m == 1

    @pytest.mark.parametrize(
        "text",
        [
            "e 1 2",
            "p edge x 1\ne 1 2",
            "p edge 3 1\ne 1 4",
            "p edge 3 1\ne 0 1",
            "p edge 3 1\ne 2 2",
            "p edge 3 1\nq 1 2",
            "p edge 2 0\np edge 2 0",
        ],
    )
    def test_malformed(self, text):
        with pytest.raises(DimacsError):
            parse_dimacs(text)

    def test_edge_count_mismatch_warns(self):
        with pytest.warns(UserWarning):
            g = parse_dimacs("p edge 3 5\ne 1 2")
        assert g.m == 1

    @given(graphs())
    @settings(max_examples=60, deadline=None)
    def test_round_trip(self, g):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            assert parse_dimacs(to_dimacs(g)) == g


class TestGraph:
    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Graph(2, [(1, 1)])

    def test_adjacency_sorted_and_symmetric(self):
        g = Graph(4, [(3, 0), (0, 1), (2, 0), (1, 0)])
        assert g.adjacency[0] == (1, 2, 3)
        assert all(0 in g.adjacency[v] for v in (1, 2, 3))
        assert g.delta == 3 and g.m == 3

    def test_subgraph_and_ball(self):
        g = path(5)
        sub, ids = g.subgraph([1, 2, 4])
        assert ids == [1, 2, 4] and sub.m == 1
        assert g.ball([0], 2) == [0, 1, 2]

    def test_components(self):
        g = Graph(5, [(0, 1), (3, 4)])
        assert sorted(map(sorted, g.components())) == [[0, 1], [2], [3, 4]]


class TestNeighbourhoodPrimitives:
    def test_star_center(self):
        assert nonedge_pairs_in_neighborhood(star(3), 0) == 3

    def test_k4(self):
        assert nonedge_pairs_in_neighborhood(complete(4), 2) == 0

    def test_petersen_vertex(self):
        g = petersen()
        assert all(nonedge_pairs_in_neighborhood(g, v) == 3 for v in range(10))

    def test_is_clique(self):
        g = petersen()
        assert is_clique(g, [])
        assert is_clique(complete(5), [0, 2, 4])
        u, w = next((u, w) for u, w in itertools.combinations(range(10), 2) if not g.has_edge(u, w))
        assert not is_clique(g, [u, w])


class TestVerify:
    def test_proper(self):
        assert verify_coloring(path(3), Coloring((1, 2, 1), 2)).proper

    def test_first_violation(self):
        v = verify_coloring(complete(3), [1, 1, 2])
        assert not v.proper and v.edge == (0, 1)

    def test_lexicographically_smallest(self):
        g = complete(4)
        assert verify_coloring(g, [2, 1, 2, 1]).edge == (0, 2)

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            verify_coloring(path(3), [1, 2])

    def test_coloring_range_checked(self):
        with pytest.raises(ValueError):
            Coloring((1, 3), 2)


class TestOracles:
    @pytest.mark.parametrize("g,chi", [(complete(4), 4), (cycle(5), 3), (petersen(), 3), (Graph(0, []), 0), (Graph(3, []), 1)])
    def test_chromatic(self, g, chi):
        value, witness = brute_force_chromatic(g)
        assert value == chi
        assert verify_coloring(g, witness).proper
        assert witness.colors_used == chi

    def test_cutoff(self):
        with pytest.raises(OracleTooLarge):
            brute_force_chromatic(Graph(41, []))
        assert brute_force_chromatic(Graph(41, []), cutoff=41)[0] == 1

    def test_limit(self):
        with pytest.raises(ChromaticLimitExceeded) as exc:
            brute_force_chromatic(complete(5), limit=3)
        assert exc.value.limit == 3

    @pytest.mark.parametrize("g,omega", [(complete(5), 5), (cycle(5), 2), (petersen(), 2), (Graph(2, []), 1)])
    def test_clique_number(self, g, omega):
        value, witness = clique_number_exact(g)
        assert value == omega and len(witness) == omega and is_clique(g, witness)

    def test_clique_cutoff(self):
        with pytest.raises(OracleTooLarge):
            clique_number_exact(Graph(61, []))

    @given(graphs(max_n=11))
    @settings(max_examples=80, deadline=None)
    def test_chromatic_matches_networkx_and_bounds(self, g):
        chi, witness = brute_force_chromatic(g)
        assert verify_coloring(g, witness).proper
        assert chi <= g.delta + 1
        omega, clique = clique_number_exact(g)
        assert omega <= chi or g.n == 0
        nxg = g.to_networkx()
        assert omega == max((len(c) for c in nx.find_cliques(nxg)), default=0)
        # a (chi - 1)-coloring must not exist
        if chi >= 2:
            with pytest.raises(ChromaticLimitExceeded):
                brute_force_chromatic(g, limit=chi - 1)

    @given(graphs(max_n=10), st.data())
    @settings(max_examples=40, deadline=None)
    def test_clique_number_dominates_any_clique(self, g, data):
        subset = data.draw(st.lists(st.integers(0, max(g.n - 1, 0)), unique=True, max_size=g.n)) if g.n else []
        if is_clique(g, subset):
            assert clique_number_exact(g)[0] >= len(subset)
