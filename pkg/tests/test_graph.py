import json
import random

import pytest
from hypothesis import given, settings

from pathcert.errors import GraphFormatError
from pathcert.families import complete, complete_bipartite, cycle, edgeless, path, random_graph
from pathcert.graph import (
    Coloring, Graph, compact_coloring, graph_from_json, induced_subgraph, is_proper_coloring,
    is_stable, load_graph, neighbors, non_neighborhood, read_dimacs, save_graph, write_dimacs,
)

from conftest import graphs


def test_neighbors_examples():
    assert neighbors(complete(3), 0) == {1, 2}
    assert neighbors(edgeless(3), 1) == frozenset()
    assert neighbors(cycle(4), 0) == {1, 3}


def test_non_neighborhood_examples():
    assert non_neighborhood(complete(3), 0) == frozenset()
    assert non_neighborhood(cycle(4), 0) == {2}
    star = complete_bipartite(1, 3)
    assert non_neighborhood(star, 0) == frozenset()


def test_out_of_range_vertex():
    with pytest.raises(IndexError):
        neighbors(cycle(4), 4)
    with pytest.raises(IndexError):
        non_neighborhood(cycle(4), -1)


def test_is_stable_examples():
    assert is_stable(cycle(4), {0, 2})
    assert not is_stable(complete(3), {0, 1})
    assert is_stable(random_graph(8, 0.5, 3), set())


def test_induced_subgraph_examples():
    H, index = induced_subgraph(cycle(4), {0, 1, 2})
    assert H == path(3)
    assert index == {0: 0, 1: 1, 2: 2}
    H, _ = induced_subgraph(complete(4), {0, 1})
    assert H == complete(2)
    G = random_graph(9, 0.4, 11)
    H, index = induced_subgraph(G, range(G.n))
    assert H == G and all(index[v] == v for v in range(G.n))


def test_proper_coloring_examples():
    assert is_proper_coloring(complete(2), {0: 1, 1: 2})
    assert not is_proper_coloring(complete(2), {0: 1, 1: 1})
    assert is_proper_coloring(cycle(5), dict(enumerate([1, 2, 1, 2, 3])))


def test_proper_coloring_partial_is_an_error():
    with pytest.raises(ValueError):
        is_proper_coloring(complete(2), {0: 1})


def test_palette_respected():
    assert not is_proper_coloring(complete(2), Coloring({0: 1, 1: 3}, 2))


@given(graphs(max_n=12))
def test_neighbors_symmetric_and_partition(G):
    for v in range(G.n):
        N, M = neighbors(G, v), non_neighborhood(G, v)
        assert not N & M and v not in N | M
        assert N | M | {v} == set(range(G.n))
        for u in N:
            assert v in neighbors(G, u)


@given(graphs(max_n=12))
def test_induced_on_everything_is_identity(G):
    assert induced_subgraph(G, set(range(G.n)))[0] == G


@settings(max_examples=50)
@given(graphs(min_n=2, max_n=12))
def test_recolouring_an_edge_endpoint_breaks_properness(G):
    if not G.m:
        return
    greedy = {}
    for v in range(G.n):
        taken = {greedy[u] for u in neighbors(G, v) if u in greedy}
        greedy[v] = min(c for c in range(1, G.n + 2) if c not in taken)
    assert is_proper_coloring(G, greedy)
    rng = random.Random(G.m)
    u, v = rng.choice(G.edges())
    broken = dict(greedy)
    broken[u] = broken[v]
    assert not is_proper_coloring(G, broken)


def test_compaction_never_adds_colours():
    G = complete_bipartite(4, 4)
    col = Coloring({v: 1 + 5 * v for v in range(8)}, 50)
    small = compact_coloring(G, col)
    assert is_proper_coloring(G, small) and small.used == 2


# -- formats ----------------------------------------------------------------

def test_dimacs_round_trip(tmp_path):
    G = random_graph(15, 0.3, 5)
    assert read_dimacs(write_dimacs(G, "hello")) == G
    save_graph(G, tmp_path / "g.col")
    assert load_graph(tmp_path / "g.col") == G
    save_graph(G, tmp_path / "g.json")
    assert load_graph(tmp_path / "g.json") == G
    assert json.loads((tmp_path / "g.json").read_text()) == G.to_dict()


def test_dimacs_is_one_indexed():
    G = read_dimacs("c tiny\np edge 3 2\ne 1 2\ne 2 3\n")
    assert G == path(3)


@pytest.mark.parametrize("text, fragment", [
    ("p edge 3 2\ne 1 2\ne 2 1\n", "duplicate"),
    ("p edge 3 1\ne 2 2\n", "self-loop"),
    ("p edge 3 1\ne 1 4\n", "out of range"),
    ("e 1 2\n", "before problem"),
    ("p edge 3 2\ne 1 2\n", "declares 2"),
    ("c nothing\n", "missing"),
])
def test_dimacs_rejects(text, fragment):
    with pytest.raises(GraphFormatError, match=fragment):
        read_dimacs(text)


def test_dimacs_error_has_location():
    with pytest.raises(GraphFormatError, match=r"f\.col:3"):
        read_dimacs("p edge 3 2\ne 1 2\ne 1 2\n", "f.col")


def test_json_rejects_duplicates_and_loops():
    with pytest.raises(GraphFormatError):
        graph_from_json({"n": 3, "edges": [[0, 1], [1, 0]]})
    with pytest.raises(GraphFormatError):
        graph_from_json({"n": 3, "edges": [[1, 1]]})
    with pytest.raises(GraphFormatError):
        graph_from_json({"edges": []})


def test_graph_rejects_asymmetric_rows():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))
