from itertools import combinations, product

import pytest

from twotrunc.polytope import (
    DualComplex,
    FaceRef,
    FacetId,
    ParentTag,
    PolytopeError,
    SimplePolytope,
    classify_face_after_truncation,
    codim2_faces,
    faces,
    is_flag_polytope,
    make_cube,
    truncate,
)
from twotrunc.verify import cube_face_models, heredity_witness, update_models

from conftest import sample_sequences


def cross_polytope_simplices(n):
    """Every simplex of the cross-polytope boundary: no antipodal pair."""
    verts = [(i, s) for i in range(1, n + 1) for s in (1, -1)]
    out = []
    for r in range(n + 1):
        for c in combinations(verts, r):
            if len({i for i, _ in c}) == r:
                out.append(c)
    return out


def simplex_counts(P):
    counts = {}
    for m in P.dual.simplices.tolist():
        counts[m.bit_count()] = counts.get(m.bit_count(), 0) + 1
    return counts


def test_cube_1():
    P = make_cube(1)
    assert P.dual.maximal == {0b01, 0b10}
    assert [f.label for f in P.facets] == ["x1+", "x1-"]


def test_cube_2_is_four_cycle():
    P = make_cube(2)
    edges = {frozenset(f.labels()) for f in codim2_faces(P)}
    assert edges == {frozenset(e) for e in [("x1+", "x2+"), ("x2+", "x1-"), ("x1-", "x2-"), ("x2-", "x1+")]}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_cube_matches_cross_polytope_enumeration(n):
    by_size = {}
    for c in cross_polytope_simplices(n):
        by_size[len(c)] = by_size.get(len(c), 0) + 1
    assert simplex_counts(make_cube(n)) == by_size


def test_octahedron_counts():
    assert simplex_counts(make_cube(3)) == {0: 1, 1: 6, 2: 12, 3: 8}


def test_cube_zero_rejected():
    with pytest.raises(PolytopeError):
        make_cube(0)


def test_codim2_counts(pentagon):
    assert len(codim2_faces(make_cube(2))) == 4
    assert len(codim2_faces(make_cube(3))) == 12
    assert len(codim2_faces(pentagon)) == 5
    assert all(len(f.facet_set) == 2 for f in codim2_faces(pentagon))


def test_square_to_pentagon(pentagon):
    assert len(pentagon.facets) == 5
    assert len(pentagon.dual.maximal) == 5
    # the dual is a 5-cycle: every facet meets exactly two others
    for f in range(5):
        assert sum(1 for m in pentagon.dual.maximal if m >> f & 1) == 2


def test_cube3_edge_truncation(cube3_edge):
    assert simplex_counts(cube3_edge) == {0: 1, 1: 7, 2: 15, 3: 10}


def test_double_truncation_of_same_face_fails():
    P = make_cube(3)
    G = FaceRef.of("x1+", "x2+")
    P1 = truncate(P, G)
    with pytest.raises(PolytopeError, match="does not exist"):
        truncate(P1, G)


def test_truncate_rejects_wrong_codimension():
    with pytest.raises(PolytopeError, match="codimension 2"):
        truncate(make_cube(3), FaceRef.of("x1+"))
    with pytest.raises(PolytopeError, match="codimension 2"):
        truncate(make_cube(3), FaceRef.of("x1+", "x2+", "x3+"))
    with pytest.raises(PolytopeError, match="does not exist"):
        truncate(make_cube(3), FaceRef.of("x1+", "x1-"))
    with pytest.raises(PolytopeError, match="does not exist"):
        truncate(make_cube(3), ("s1", "x1+"))
    with pytest.raises(PolytopeError, match="does not exist"):
        truncate(make_cube(2), ("x3+", "x1+"))


def test_faces_enumeration():
    assert len(faces(make_cube(2), 0)) == 4
    assert len(faces(make_cube(3), 1)) == 12
    for n in (1, 2, 3):
        assert faces(make_cube(n), n) == [FaceRef(frozenset())]
    with pytest.raises(PolytopeError):
        faces(make_cube(2), 3)


def test_classify_examples(cube3_edge):
    st = cube3_edge.history[-1]
    tag, parent, carried = classify_face_after_truncation(cube3_edge, st, FaceRef(frozenset()))
    assert (tag, parent, carried) == (ParentTag.TRUNCATED, FaceRef(frozenset()), FaceRef.of("x1+", "x2+"))
    tag, parent, carried = classify_face_after_truncation(cube3_edge, st, FaceRef.of("s1"))
    assert (tag, parent, carried) == (ParentTag.PRODUCT_WITH_INTERVAL, FaceRef.of("x1+", "x2+"), None)
    # x1- is disjoint from the truncated edge x1+ ∩ x2+
    tag, parent, _ = classify_face_after_truncation(cube3_edge, st, FaceRef.of("x1-"))
    assert (tag, parent) == (ParentTag.UNCHANGED, FaceRef.of("x1-"))
    tag, parent, _ = classify_face_after_truncation(cube3_edge, st, FaceRef.of("s1", "x1+"))
    assert (tag, parent) == (ParentTag.UNCHANGED, FaceRef.of("x1+", "x2+"))
    # x3+ meets the edge in a vertex, so its face is truncated at x1+ ∩ x2+ ∩ x3+
    tag, parent, carried = classify_face_after_truncation(cube3_edge, st, FaceRef.of("x3+"))
    assert (tag, carried) == (ParentTag.TRUNCATED, FaceRef.of("x1+", "x2+", "x3+"))


def test_classify_errors(cube3_edge):
    st = cube3_edge.history[-1]
    with pytest.raises(PolytopeError, match="not a face"):
        classify_face_after_truncation(cube3_edge, st, FaceRef.of("x1+", "x2+"))
    P2 = truncate(cube3_edge, ("x1-", "x2-"))
    with pytest.raises(PolytopeError, match="most recent"):
        classify_face_after_truncation(P2, st, FaceRef(frozenset()))


def test_flag_polytopes(pentagon):
    for n in (1, 2, 3, 4):
        assert is_flag_polytope(make_cube(n))
    assert is_flag_polytope(pentagon)
    # the triangle: dual is a 3-cycle
    tri = SimplePolytope(2, DualComplex(frozenset({0b011, 0b110, 0b101})))
    assert not is_flag_polytope(tri)


def test_facet_names_roundtrip():
    for name in ("x1+", "x12-", "s3"):
        assert FacetId.parse(name).label == name
    with pytest.raises(PolytopeError):
        FacetId.parse("y1+")
    assert sorted([FacetId.parse(x) for x in ("s1", "x2-", "x1-", "x1+")]) == [
        FacetId.parse(x) for x in ("x1+", "x1-", "x2-", "s1")
    ]


@pytest.mark.parametrize("dim,seq", sample_sequences(40, (2, 3, 4, 5), 6, seed=11))
def test_truncation_invariants(dim, seq):
    P = make_cube(dim)
    models = cube_face_models(P)
    for a, b in seq:
        G = (1 << FacetId.parse(a).bit(dim)) | (1 << FacetId.parse(b).bit(dim))
        q = sum(1 for m in P.dual.maximal if m & G == G)
        Q = truncate(P, (a, b))
        # simplicity and vertex count growth
        assert all(m.bit_count() == dim for m in Q.dual.maximal)
        assert len(Q.dual.maximal) == len(P.dual.maximal) + q
        assert is_flag_polytope(Q)
        assert len(Q.history) == sum(f.is_section for f in Q.facets)
        # the three parent tags partition the faces of Q
        st = Q.history[-1]
        tags = [classify_face_after_truncation(Q, st, f, P)[0] for f in map(Q.face, Q.dual.simplices.tolist())]
        assert len(tags) == len(Q.dual.simplices)
        models = update_models(models, P, Q)
        P = Q
    assert heredity_witness(P, models) is None
