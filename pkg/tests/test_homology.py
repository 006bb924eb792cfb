import itertools

import pytest

from cdindex.homology import (
    GorensteinCertificate,
    HomologyProfile,
    SimplicialComplex,
    boundary_of,
    is_gorenstein_star,
    is_quasi_convex,
    link,
    order_complex,
    reduced_homology,
)
from cdindex.poset import (
    barycentric,
    build_pyramid,
    chain,
    crosspoly_fan,
    cube_fan,
    induced_subposet,
    is_eulerian,
    polygon,
    simplex_fan,
)

from conftest import polygon_minus_facet, pyramid_without_apex_star, relabeled


def cycle_complex(n):
    return SimplicialComplex([(i, (i + 1) % n) for i in range(n)])


def octahedron():
    return SimplicialComplex(
        [
            (sx + "x", sy + "y", sz + "z")
            for sx in "+-"
            for sy in "+-"
            for sz in "+-"
        ]
    )


def test_complex_normalizes_facets():
    k = SimplicialComplex([(1, 2, 3), (2, 3), (1, 2, 3), (4,)])
    assert k.facets == (frozenset({4}), frozenset({1, 2, 3}))
    assert k.dim == 2
    assert k.has_face(()) and k.has_face((2, 3)) and not k.has_face((1, 4))


def test_face_counts():
    k = SimplicialComplex([(1, 2, 3)])
    assert k.num_faces() == [1, 3, 3, 1]
    assert SimplicialComplex([]).num_faces() == [1]


def test_homology_known_spaces():
    assert reduced_homology(cycle_complex(5)) == HomologyProfile.sphere(1)
    assert reduced_homology(SimplicialComplex([(1,), (2,)])) == HomologyProfile(
        [0, 1]
    )
    assert reduced_homology(SimplicialComplex([(1, 2)])) == HomologyProfile([])
    assert reduced_homology(SimplicialComplex([])) == HomologyProfile.sphere(-1)
    assert reduced_homology(octahedron()) == HomologyProfile.sphere(2)


def test_homology_torus_is_invisible_over_q():
    # real projective plane: all rational homology vanishes
    rp2 = SimplicialComplex(
        [
            (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
            (2, 3, 5), (3, 5, 6), (3, 4, 6), (2, 4, 6), (2, 4, 5),
        ]
    )
    assert reduced_homology(rp2) == HomologyProfile([])


def test_profile_api():
    s2 = HomologyProfile.sphere(2)
    assert s2.betti(2) == 1 and s2.betti(1) == 0 and s2.betti(-1) == 0
    assert s2.is_sphere(2) and not s2.is_sphere(1)
    assert HomologyProfile([0, 0, 1, 0, 0]) == HomologyProfile([0, 0, 1])
    with pytest.raises(ValueError):
        HomologyProfile([0, -1])


def test_euler_characteristic_consistency():
    for k in [cycle_complex(6), octahedron(), SimplicialComplex([(1, 2), (2, 3)])]:
        profile = reduced_homology(k)
        euler = sum(
            (-1) ** i * profile.betti(i) for i in range(-1, k.dim + 1)
        )
        assert euler == k.reduced_euler()


def test_link():
    cyc = cycle_complex(6)
    lk = link(cyc, (0,))
    assert lk.facets == (frozenset({1}), frozenset({5}))
    assert link(cyc, ()).facets == cyc.facets
    oct_lk = link(octahedron(), ("+x", "+y"))
    assert reduced_homology(oct_lk) == HomologyProfile.sphere(0)
    with pytest.raises(ValueError):
        link(cyc, (0, 2))


def test_order_complex_examples():
    k3 = order_complex(polygon(3))
    assert k3.num_faces() == [1, 6, 6]
    assert reduced_homology(k3) == HomologyProfile.sphere(1)

    kc = order_complex(chain(2))
    assert kc.num_faces() == [1, 2, 1]

    ks = order_complex(simplex_fan(3))
    assert ks.num_faces() == [1, 14, 36, 24]
    assert reduced_homology(ks) == HomologyProfile.sphere(2)


def test_gorenstein_star_positives():
    for p in [
        polygon(3),
        polygon(7),
        build_pyramid(polygon(4)),
        simplex_fan(4),
        cube_fan(3),
        crosspoly_fan(3),
        barycentric(polygon(4)).bposet,
    ]:
        cert = is_gorenstein_star(p)
        assert cert
        assert cert.failing_face is None
        assert cert.betti == HomologyProfile.sphere(p.rank - 1)


def test_gorenstein_star_negatives():
    c = is_gorenstein_star(chain(2))
    assert not c and c.failing_face == ()

    pm = polygon_minus_facet(4)
    cert = is_gorenstein_star(pm)
    assert not cert and cert.failing_face == ()

    ball = pyramid_without_apex_star()
    cert = is_gorenstein_star(ball)
    assert not cert


def test_gorenstein_star_finds_bad_link():
    # polygon(3) with a whisker ray below one facet: the order complex is
    # still homotopy equivalent to a circle (global check passes) but the
    # junction vertex has a three-point link
    p = polygon(3)
    degrees = {e: p.degree(e) for e in p.elements()}
    covers = list(p.covers())
    degrees["r4"] = 1
    covers += [("_bot", "r4"), ("r4", "f1")]
    from cdindex.poset import GradedPoset

    q = GradedPoset(2, degrees, covers)
    assert reduced_homology(order_complex(q)) == HomologyProfile.sphere(1)
    cert = is_gorenstein_star(q)
    assert not cert
    assert cert.failing_face == ("f1",)
    assert cert.betti == HomologyProfile([0, 2])  # three points


def test_gorenstein_implies_eulerian(rng):
    from conftest import random_graded_poset

    posets = [polygon(5), chain(2), polygon_minus_facet(4), cube_fan(2)]
    posets += [random_graded_poset(rng) for _ in range(25)]
    for p in posets:
        if is_gorenstein_star(p):
            assert is_eulerian(p)


def test_gorenstein_star_is_isomorphism_invariant(rng):
    for p in [polygon(5), chain(2), build_pyramid(polygon(3)), polygon_minus_facet(4)]:
        assert bool(is_gorenstein_star(p)) == bool(is_gorenstein_star(relabeled(p, rng)))


def test_certificate_json():
    cert = is_gorenstein_star(polygon(4))
    data = cert.to_json()
    assert data == {
        "gorenstein_star": True,
        "failing_face": None,
        "betti": [0, 0, 1],
    }
    bad = is_gorenstein_star(chain(2)).to_json()
    assert bad["gorenstein_star"] is False and bad["failing_face"] == []


def naive_first_failure(p):
    """Reference Gorenstein* test: explicit link homology per face, faces in
    (dimension, sorted-ids) order."""
    n = p.rank
    k = order_complex(p)
    faces = [()]
    for level in k.faces_by_dim()[1:]:
        faces += sorted(level)
    for face in faces:
        got = reduced_homology(link(k, face))
        if got != HomologyProfile.sphere(n - 1 - len(face)):
            return tuple(sorted(face)), got
    return None, reduced_homology(k)


def test_fast_certifier_matches_naive_link_route():
    posets = [
        polygon(4),
        chain(2),
        polygon_minus_facet(4),
        build_pyramid(polygon(3)),
        pyramid_without_apex_star(),
        barycentric(polygon(3)).bposet,
        cube_fan(2),
    ]
    for p in posets:
        cert = is_gorenstein_star(p)
        face, profile = naive_first_failure(p)
        assert cert.failing_face == face
        assert cert.betti == profile


def test_link_homology_is_interval_convolution(rng):
    # the identity behind the fast certifier: for any graded poset (Eulerian
    # or not) the link of a chain face is the join of the gap interval
    # complexes, and reduced homology convolves (shifted by one) over joins
    from cdindex.homology import _interval_complex
    from conftest import random_graded_poset

    def convolve(a, b):
        out = [0] * (len(a) + len(b) - 1) if a and b else []
        for i, va in enumerate(a):
            for j, vb in enumerate(b):
                out[i + j] += va * vb
        return tuple(out)

    posets = [polygon(4), chain(3), polygon_minus_facet(5)]
    posets += [random_graded_poset(rng) for _ in range(12)]
    for p in posets:
        k = order_complex(p)
        faces = [face for level in k.faces_by_dim() for face in level]
        for face in faces:
            naive = reduced_homology(link(k, face))
            chain_sorted = sorted(face, key=p.degree)
            ends = [p.bottom] + chain_sorted + [p.top]
            vec = (1,)
            for a, b in zip(ends, ends[1:]):
                gap_profile = reduced_homology(_interval_complex(p, a, b))
                vec = convolve(vec, gap_profile.shifted)
            assert HomologyProfile(vec) == naive, (face, p.covers())


def test_barycentric_preserves_homology_profile():
    for p in [polygon(4), simplex_fan(3), chain(2), polygon_minus_facet(4)]:
        direct = reduced_homology(order_complex(p))
        subdivided = reduced_homology(order_complex(barycentric(p).bposet))
        assert direct == subdivided


def test_boundary_of():
    pm = polygon_minus_facet(4)
    bnd = boundary_of(pm)
    assert bnd.poset is not None
    assert bnd.poset.rank == 1
    assert len(bnd.poset.elements_of_degree(1)) == 2

    assert boundary_of(polygon(5)).poset is None

    # single-ray rank-1 fan: the bottom is covered by exactly one atom
    ray = induced_subposet(polygon(3), ["_bot", "r1"], adjoin_top=True).poset
    bnd = boundary_of(ray)
    assert bnd.poset is not None and bnd.poset.rank == 0


def test_is_quasi_convex():
    assert is_quasi_convex(polygon_minus_facet(4))
    assert is_quasi_convex(polygon(6))  # complete and Gorenstein*
    # a solid ball is quasi-convex without being Gorenstein*
    ball = pyramid_without_apex_star()
    assert is_quasi_convex(ball) and not is_gorenstein_star(ball)
    # chain(2) has a single-point boundary, which is not a homology sphere
    assert not is_quasi_convex(chain(2))

    ray = induced_subposet(polygon(3), ["_bot", "r1"], adjoin_top=True).poset
    assert is_quasi_convex(ray)
