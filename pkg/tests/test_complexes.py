"""Simplicial complexes, polar complexes, vertex decomposability, shelling."""

import itertools
import random

import pytest

from piercedcodes.codes import code, word
from piercedcodes.complexes import (
    PolarComplex,
    SimplicialComplex,
    connected_components,
    deletion,
    facet_codeword,
    facet_str,
    is_clique_complex,
    is_vertex_decomposable,
    link,
    polar_complex_of,
    polar_facet,
    shelling_order,
    simplicial_complex_of,
    verify_shelling,
)
from .conftest import FIG_CODE, SORT_EXAMPLE


def cx(*facets):
    return SimplicialComplex(frozenset(frozenset(f) for f in facets))


def test_facet_reduction_and_dim():
    k = cx([1, 2], [1], [2, 3])
    assert k.facets == frozenset({frozenset({1, 2}), frozenset({2, 3})})
    assert k.dim() == 1
    assert cx().dim() == -2 and cx().is_void
    assert cx([]).dim() == -1 and not cx([]).is_void


def test_simplicial_complex_of_code():
    k = simplicial_complex_of(code(2, [1], [1, 2], []))
    assert k.facets == frozenset({frozenset({1, 2})})


def test_faces_and_has_face():
    k = cx([1, 2, 3])
    assert len(k.faces()) == 8
    assert k.has_face([1, 3]) and not k.has_face([4])


def test_link_and_deletion():
    k = cx([1, 2, 3], [2, 4])
    assert link(k, 2).facets == frozenset({frozenset({1, 3}), frozenset({4})})
    assert deletion(k, 2).facets == frozenset({frozenset({1, 3}), frozenset({4})})
    assert link(k, 4).facets == frozenset({frozenset({2})})
    with pytest.raises(ValueError):
        link(k, 9)


def _faces_oracle(k, v, mode):
    faces = k.faces()
    if mode == "link":
        out = {f - {v} for f in faces if v in f}
    else:
        out = {f for f in faces if v not in f}
    return SimplicialComplex(frozenset(out)).facets


def test_link_deletion_against_face_oracle():
    rng = random.Random(3)
    verts = list(range(1, 7))
    for _ in range(40):
        facets = [
            frozenset(rng.sample(verts, rng.randint(1, 4))) for _ in range(5)
        ]
        k = SimplicialComplex(frozenset(facets))
        for v in k.vertices:
            assert link(k, v).facets == _faces_oracle(k, v, "link")
            assert deletion(k, v).facets == _faces_oracle(k, v, "del")


def test_vertex_decomposable_examples():
    ok, cert = is_vertex_decomposable(cx([1, 2, 3]))
    assert ok and "simplex" in cert
    ok, cert = is_vertex_decomposable(cx([1, 2], [2, 3], [1, 3]))
    assert ok and "vertex" in cert
    # two simplices glued at a vertex, the shape a 1-piercing can leave
    ok, cert = is_vertex_decomposable(cx([1, 2, 3], [1, 4, 5]))
    assert ok and "vertex" in cert
    assert is_vertex_decomposable(cx([1, 2], [3, 4]))[0]


def test_vertex_decomposable_certificate_is_checkable():
    k = cx([1, 2], [2, 3], [3, 4])
    ok, cert = is_vertex_decomposable(k)
    assert ok

    def check(c, node):
        if "simplex" in node:
            assert c.is_simplex()
            return
        v = node["vertex"]
        assert v in c.vertices
        check(link(c, v), node["link"])
        check(deletion(c, v), node["deletion"])

    check(k, cert)


def test_connected_components():
    k = cx([1, 2], [2, 3], [5], [6, 7])
    comps = connected_components(k)
    assert sorted(sorted(c.vertices) for c in comps) == [[1, 2, 3], [5], [6, 7]]


def test_clique_complex():
    assert is_clique_complex(cx([1, 2, 3], [3, 4]))
    # hollow triangle: the clique {1,2,3} is not a face
    assert not is_clique_complex(cx([1, 2], [2, 3], [1, 3]))
    assert is_clique_complex(cx([]))


def test_polar_facets():
    assert polar_facet(word([1]), 2) == frozenset({1, -2})
    assert facet_codeword(frozenset({1, -2, 3})) == word([1, 3])
    assert facet_str(frozenset({1, -2, 3})) == "+-+"
    k = polar_complex_of(code(2, [1], [1, 2], []))
    assert k.facets == frozenset(
        {frozenset({1, -2}), frozenset({1, 2}), frozenset({-1, -2})}
    )


def test_polar_complex_of_two_step_build():
    got = {facet_str(f) for f in polar_complex_of(FIG_CODE).facets}
    assert got == {"---", "+--", "++-", "-+-", "+++", "+-+"}


def test_polar_link_example():
    gamma = polar_complex_of(SORT_EXAMPLE).as_complex()
    lk = link(gamma, 3)
    assert lk.facets == frozenset({frozenset({1, 2}), frozenset({-1, 2})})


def test_polar_validation():
    with pytest.raises(ValueError):
        PolarComplex(2, frozenset({frozenset({1})}))
    with pytest.raises(ValueError):
        PolarComplex(2, frozenset({frozenset({1, -1})}))


def test_shelling_order_examples():
    assert [facet_str(f) for f in shelling_order(SORT_EXAMPLE)] == [
        "---", "+--", "++-", "-+-", "+++", "-++",
    ]
    assert [facet_str(f) for f in shelling_order(code(1, [], [1]))] == ["-", "+"]


def test_verify_shelling_reference_order():
    gamma = polar_complex_of(SORT_EXAMPLE).as_complex()
    ok, witness = verify_shelling(gamma, shelling_order(SORT_EXAMPLE))
    assert ok and witness is None


def test_verify_shelling_rejects_bad_order():
    # disconnected pure complex: no order is a shelling
    k = cx([1, 2], [3, 4])
    ok, witness = verify_shelling(k, sorted(k.facets, key=sorted))
    assert not ok and witness is not None
    with pytest.raises(ValueError):
        verify_shelling(k, [frozenset({1, 2})])
    with pytest.raises(ValueError):
        verify_shelling(cx([1, 2], [3]), list(cx([1, 2], [3]).facets))


def _cross_polytope_facets(n):
    out = []
    for signs in itertools.product((1, -1), repeat=n):
        out.append(frozenset(s * i for i, s in zip(range(1, n + 1), signs)))
    return out


@pytest.mark.parametrize("n", [2, 3, 4])
def test_weight_monotone_cross_polytope_orders_shell(n):
    """Any facet order monotone in the number of positive vertices shells."""
    facets = _cross_polytope_facets(n)
    k = SimplicialComplex(frozenset(facets))
    rng = random.Random(n)
    for direction in (False, True):
        for _ in range(5):
            rng.shuffle(facets)
            order = sorted(
                facets,
                key=lambda f: sum(1 for v in f if v > 0),
                reverse=direction,
            )
            ok, witness = verify_shelling(k, order)
            assert ok, witness


def test_shelling_sweep_small(pierced_n4_k3):
    for c, _ in pierced_n4_k3:
        gamma = polar_complex_of(c).as_complex()
        ok, witness = verify_shelling(gamma, shelling_order(c))
        assert ok, (str(c), witness)
