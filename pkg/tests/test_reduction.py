import random

import pytest

from conftest import annulus_face_graph, complete
from ptight.core import PGraph, classify, from_face_graph, min_hole_incidence_degree, validate
from ptight.errors import MalformedInput, NotTight
from ptight.iso import is_isomorphic
from ptight.moves import contractible_edges, grow
from ptight.reduction import CATALOG_NAMES, ReductionTrace, catalog, identify_base, reduce, replay
from ptight.sparsity import freedom_number, is_tight

SIGNATURES = {
    "G^2_3": (6,),
    "G^3_4": (4, 4, 4),
    "G^1_5": (5, 4),
    "G^1_6,alpha": (4, 4, 4),
    "G^1_6,beta": (4, 4, 4),
    "G^2_6,alpha": (4, 4, 4),
    "G^2_6,beta": (4, 4, 4),
    "G^0_7": (4, 4, 4),
}

DEGREES = {
    "G^2_6,alpha": [3, 3, 3, 5, 5, 5],
    "G^2_6,beta": [4, 4, 4, 4, 4, 4],
    "G^1_6,alpha": [3, 4, 4, 4, 4, 5],
    "G^1_6,beta": [3, 3, 4, 4, 5, 5],
}


def test_catalog_members():
    c = catalog()
    assert list(c) == list(CATALOG_NAMES) and len(c) == 8
    for name, g in c.items():
        assert validate(g).ok, name
        assert freedom_number(g) == 6 and is_tight(g)
        assert classify(g).lengths == SIGNATURES[name]
        assert min_hole_incidence_degree(g) == int(name[2])
        assert contractible_edges(g) == []


def test_six_vertex_degree_sequences():
    for name, degs in DEGREES.items():
        g = catalog()[name]
        assert sorted(g.degree(v) for v in g.vertices) == degs
        assert len(g.faces) == 4


def test_named_members_have_expected_shape():
    c = catalog()
    assert is_isomorphic(c["G^2_3"], complete("abc"))
    assert is_isomorphic(c["G^3_4"], complete("abcd"))
    assert len(c["G^1_5"].edges) == 9 and len(c["G^1_5"].faces) == 3
    # cone over K_{3,3}: the apex sees all, the base is bipartite 3+3
    g07 = c["G^0_7"]
    apex = max(g07.vertices, key=g07.degree)
    base = [v for v in g07.vertices if v != apex]
    assert g07.degree(apex) == 6
    import networkx as nx

    H = nx.Graph([e for e in g07.edge_list() if apex not in e])
    assert nx.is_isomorphic(H, nx.complete_bipartite_graph(3, 3)) and len(base) == 6


def test_identify_base():
    assert identify_base(catalog()["G^3_4"]) == "G^3_4"
    assert identify_base(catalog()["G^1_5"].relabel({str(i): f"v{i}" for i in range(1, 6)})) == "G^1_5"
    assert identify_base(grow(catalog()["G^0_7"], 43, seed=1)) is None


def test_catalog_members_reduce_to_themselves():
    for name, g in catalog().items():
        t = reduce(g)
        assert t.steps == [] and t.terminal == name


def test_grown_g07_trace_length():
    for seed in range(5):
        g = grow(catalog()["G^0_7"], 10, seed=seed)
        t = reduce(g)
        assert len(t.steps) == len(g.vertices) - len(catalog()[t.terminal].vertices)
        if t.terminal == "G^0_7":
            assert len(t.steps) == 10


def test_annulus_reduces_to_unique_one_hole_base():
    g = from_face_graph(annulus_face_graph())
    assert reduce(g).terminal == "G^2_3"


def test_reduction_invariants_and_replay():
    rng = random.Random(8)
    for name in CATALOG_NAMES:
        g = grow(catalog()[name], 15, seed=rng.randrange(10**6))
        k = g.k
        seen = []
        t = reduce(g, check=seen.append)
        assert all(h.k == k and validate(h).ok and is_tight(h) for h in seen)
        terminal = seen[-1] if seen else g
        assert contractible_edges(terminal) == []
        assert is_isomorphic(terminal, catalog()[t.terminal]) is not None
        assert replay(t) == g
        # replay from the bare catalog member via the stored isomorphism
        bare = ReductionTrace(t.steps, t.terminal, t.iso)
        assert replay(bare) == g


def test_trace_json_round_trip():
    g = grow(catalog()["G^1_5"], 6, seed=3)
    t = reduce(g)
    again = ReductionTrace.from_dict(t.to_dict())
    assert again.to_dict() == t.to_dict()
    assert replay(again) == g
    with pytest.raises(MalformedInput):
        ReductionTrace.from_dict({"steps": [{"edge": [1]}]})


@pytest.mark.allow_invalid
def test_reduce_rejects_non_tight():
    k5 = PGraph.build("12345", [(a, b) for a in "12345" for b in "12345" if a < b])
    with pytest.raises(NotTight):
        reduce(k5)
