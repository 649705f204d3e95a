import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import annulus_face_graph, moebius_face_graph, rp2_six_face_graph
from ptight.core import (
    FaceGraph,
    PGraph,
    canonical_walk,
    classify,
    facegraph_from_dict,
    facegraph_to_dict,
    from_face_graph,
    hole_incidence_degree,
    load_pgraph,
    min_hole_incidence_degree,
    moebius_completion,
    pgraph_from_dict,
    pgraph_to_dict,
    validate,
)
from ptight.errors import InvalidFaceGraph, MalformedInput, NonSimpleQuotient, NotMoebius, UnknownVertex
from ptight.iso import is_isomorphic
from ptight.moves import grow
from ptight.reduction import catalog
from ptight.sparsity import freedom_number, is_tight


def k3_with_hole(walk):
    return PGraph.build("abc", ["ab", "bc", "ca"], [], [walk])


# ---------------------------------------------------------------- validate


def test_g07_validates_with_euler_one():
    g = catalog()["G^0_7"]
    r = validate(g)
    assert r.ok, r.violations
    assert (len(g.vertices), len(g.edges), len(g.faces), g.k) == (7, 15, 6, 3)
    assert r.counts["euler"] == 1


def test_k3_double_walk_is_valid():
    r = validate(k3_with_hole("abcabc"))
    assert r.ok, r.violations


@pytest.mark.allow_invalid
def test_k3_single_walk_fails_side_count():
    r = validate(k3_with_hole("abc"))
    assert not r.ok
    assert any(v.startswith("side_count") for v in r.violations)


@pytest.mark.allow_invalid
def test_validate_reports_disconnected_graph():
    g = PGraph.build("abcdef", ["ab", "bc", "ca", "de", "ef", "fd"], [], ["abcabc", "defdef"])
    assert any(v.startswith("connected") for v in validate(g).violations)


@pytest.mark.allow_invalid
def test_validate_flags_edge_in_three_faces():
    g = PGraph.build("abcde", ["ab", "ac", "bc", "ad", "bd", "ae", "be"], ["abc", "abd", "abe"], [])
    assert any(v.startswith("edge_in_3_faces") for v in validate(g).violations)


def test_malformed_pgraph_inputs():
    with pytest.raises(MalformedInput):
        PGraph.build("ab", ["aa"])
    with pytest.raises(MalformedInput):
        PGraph.build("abcd", ["ab", "bc", "cd"], ["abcd"])
    with pytest.raises(MalformedInput):
        pgraph_from_dict({"vertices": ["a"]})
    with pytest.raises(MalformedInput):
        load_pgraph([1, 2])


def test_holes_compare_up_to_rotation_and_reversal():
    assert canonical_walk("abcd") == canonical_walk("cdab") == canonical_walk("dcba")
    assert k3_with_hole("abcabc") == k3_with_hole("cbacba")


# ---------------------------------------------------------------- classify


@pytest.mark.parametrize(
    "name,k,lengths",
    [("G^1_5", 2, (5, 4)), ("G^3_4", 3, (4, 4, 4)), ("G^2_3", 1, (6,)), ("G^0_7", 3, (4, 4, 4))],
)
def test_classify_catalog(name, k, lengths):
    s = classify(catalog()[name])
    assert (s.k, s.lengths) == (k, lengths)
    assert s.maxwell_consistent


def test_classify_seven_hole_not_maxwell():
    # antipodal hexagon around a removed heptagon: a Möbius band with a 7-walk hole
    P = [f"p{i}" for i in range(6)]
    Q = [f"q{i}" for i in range(7)]
    tris = []
    for i in range(6):
        tris += [(Q[i], P[i], P[(i + 1) % 6]), (Q[i], P[(i + 1) % 6], Q[i + 1])]
    tris.append((Q[6], P[0], Q[0]))
    pairing = [((P[i], P[i + 1]), (P[i + 3], P[(i + 4) % 6])) for i in range(3)]
    g = from_face_graph(FaceGraph.build(tris, P, pairing, [Q]))
    assert validate(g).ok, validate(g).violations
    s = classify(g)
    assert (s.k, s.lengths, s.maxwell_consistent) == (1, (7,), False)
    assert freedom_number(g) == 7


def _random_family(rng):
    bases = [catalog()[n] for n in catalog()]
    bases += [from_face_graph(rp2_six_face_graph()), from_face_graph(moebius_face_graph()), from_face_graph(annulus_face_graph())]
    return rng.choice(bases)


def test_maxwell_consistency_iff_freedom_six():
    rng = random.Random(11)
    seen = set()
    for i in range(1000):
        g = grow(_random_family(rng), rng.randrange(0, 6), seed=i)
        assert classify(g).maxwell_consistent == (freedom_number(g) == 6)
        seen.add(freedom_number(g))
    assert seen == {3, 6}


# ---------------------------------------------------------------- hole incidence


def test_hole_incidence_degrees():
    g34 = catalog()["G^3_4"]
    assert all(hole_incidence_degree(g34, v) == 3 for v in g34.vertices)
    assert hole_incidence_degree(catalog()["G^0_7"], "7") == 0
    s = from_face_graph(rp2_six_face_graph())
    assert all(hole_incidence_degree(s, v) == 0 for v in s.vertices)
    assert min_hole_incidence_degree(s) == 0
    assert min_hole_incidence_degree(catalog()["G^2_3"]) == 2
    assert min_hole_incidence_degree(catalog()["G^1_5"]) == 1
    with pytest.raises(UnknownVertex):
        hole_incidence_degree(g34, "zz")


def test_catalog_superscripts():
    for name, g in catalog().items():
        assert min_hole_incidence_degree(g) == int(name[2]), name


# ---------------------------------------------------------------- face graphs


def test_annulus_gives_moebius_strip_with_six_hole():
    g = from_face_graph(annulus_face_graph())
    assert validate(g).ok
    assert (len(g.vertices), len(g.edges), len(g.faces)) == (9, 21, 12)
    assert classify(g).lengths == (6,)
    assert freedom_number(g) == 6 and is_tight(g)


def test_hexagon_full_triangulation():
    s = from_face_graph(rp2_six_face_graph())
    assert (len(s.vertices), len(s.edges), s.k) == (6, 15, 0)
    assert freedom_number(s) == 3
    assert validate(s).ok


@pytest.mark.allow_invalid
def test_trivial_pairing_gives_disc_with_boundary_hole():
    fg = FaceGraph.build([("a", "b", "c"), ("a", "c", "d")], "abcd")
    g = from_face_graph(fg)
    assert len(g.faces) == 2 and g.k == 1
    assert canonical_walk(g.holes[0]) == canonical_walk("abcd")
    # a disc is a sphere once its hole is capped, not a projective plane
    assert validate(g).counts["euler"] == 2


def test_non_simple_quotient_rejected():
    # pairing two edges of a single triangle produces a loop
    fg = FaceGraph.build([("a", "b", "c")], "abc", [(("a", "b"), ("b", "c"))])
    with pytest.raises(NonSimpleQuotient):
        from_face_graph(fg)


def test_invalid_face_graph_rejected():
    fg = FaceGraph.build([("a", "b", "c"), ("d", "e", "f")], "abc")
    with pytest.raises(InvalidFaceGraph):
        from_face_graph(fg)


def test_facegraph_json_round_trip():
    fg = annulus_face_graph()
    again = facegraph_from_dict(facegraph_to_dict(fg))
    assert from_face_graph(again) == from_face_graph(fg)
    assert load_pgraph(facegraph_to_dict(fg)) == from_face_graph(fg)


@settings(max_examples=25, deadline=None)
@given(st.permutations(range(12)))
def test_face_graph_identification_is_label_independent(perm):
    fg = annulus_face_graph()
    names = fg.all_vertices
    ren = {v: f"x{perm[i]}" for i, v in enumerate(names)}

    def r(seq):
        return [ren[x] for x in seq]

    fg2 = FaceGraph.build(
        [r(t) for t in fg.triangles],
        r(fg.boundary),
        [(tuple(r(p)), tuple(r(q))) for p, q in fg.pairing],
        [r(w) for w in fg.removed_discs],
    )
    assert is_isomorphic(from_face_graph(fg), from_face_graph(fg2)) is not None


# ---------------------------------------------------------------- Möbius completion


def test_moebius_strip_completion():
    m = from_face_graph(moebius_face_graph())
    assert (len(m.vertices), len(m.edges), classify(m).lengths) == (6, 12, (6,))
    c = moebius_completion(m)
    assert len(c.vertices) == len(m.vertices) + 1 and c.k == 0
    assert freedom_number(c) == 3 and validate(c).ok
    assert moebius_completion(moebius_face_graph()) == c


def test_annulus_completion_has_f3():
    g = from_face_graph(annulus_face_graph())
    c = moebius_completion(g)
    assert len(c.vertices) == 10 and freedom_number(c) == 3


@pytest.mark.allow_invalid
def test_trivial_pairing_not_moebius():
    fg = FaceGraph.build([("a", "b", "c"), ("a", "c", "d")], "abcd")
    with pytest.raises(NotMoebius):
        moebius_completion(fg)
    with pytest.raises(NotMoebius):
        moebius_completion(catalog()["G^1_5"])


# ---------------------------------------------------------------- serialisation


def test_pgraph_json_round_trip_and_relabel():
    for g in catalog().values():
        assert pgraph_from_dict(pgraph_to_dict(g)) == g
        ren = {v: f"v{v}" for v in g.vertices}
        h = g.relabel(ren)
        assert validate(h).ok
        assert is_isomorphic(g, h) is not None
        assert classify(h) == classify(g)
