import pytest

from dblcat import BudgetExceeded
from dblcat.bisimplicial import (
    BisimplicialMap, FinBisimplicialSet, ShapeSpec, boundary, build_shape, dualize, has_unique_lift, hom_set,
    horn, horn_generators, horn_has_unique_lift, identity_map, inclusion_map, is_segal, lower_triangle,
    non_convex_horns, product, pushout, representable, spine,
)
from dblcat.freeliving import comp_presheaf


def test_representable_counts():
    R0 = representable(0, 0)
    assert all(R0.size(*bd) == 1 for bd in R0.bidegrees())
    assert representable(1, 1).size(1, 1) == 9
    assert representable(1, 0).size(1, 0) == 3


def test_representable_above_truncation_point():
    # cells exist even when (n, m) exceeds the truncation
    R = representable(4, 4, (1, 1))
    assert R.size(0, 0) == 25


@pytest.mark.parametrize("X", [representable(1, 1, (2, 2)), horn((1,), (), 2, 1, (2, 2)),
                               comp_presheaf(2, 2)])
def test_simplicial_identities(X):
    assert X.check_identities() == []


def test_lower_triangle_has_two_objects():
    assert lower_triangle().obj.size(0, 0) == 2


def test_spine_edges():
    S = spine("h", 2, 0)
    assert len(S.nondegenerate(1, 0)) == 2
    assert len(S.nondegenerate(2, 0)) == 0


def test_horn_cells():
    H = horn((1,), (), 2, 1)
    R = representable(2, 1)
    top = ((0, 1, 2), (0, 1))
    assert top not in H.cellset(2, 1)
    assert ((0, 1), (0, 1)) in H.cellset(1, 1)          # face missing vertex 2
    assert ((1, 2), (0, 1)) in H.cellset(1, 1)          # face missing vertex 0
    assert ((0, 2), (0, 1)) not in H.cellset(1, 1)      # face missing the middle vertex
    assert H.cellset(1, 1) < R.cellset(1, 1)


def test_horn_generators_closed_form():
    gens = horn_generators((1,), (), 2, 1)
    assert (frozenset({1, 2}), frozenset({0, 1})) in gens
    assert (frozenset({0, 1, 2}), frozenset({0})) in gens
    assert len(gens) == 4


def test_shape_spec_round_trip():
    s = ShapeSpec.parse("horn:S=1:T=:n=2:m=1")
    assert (s.kind, s.S, s.T, s.n, s.m) == ("horn", (1,), (), 2, 1)
    assert str(s) == "horn:S=1:T=:n=2:m=1"
    with pytest.raises(ValueError):
        ShapeSpec.parse("blob:n=1")
    with pytest.raises(ValueError):
        build_shape("gamma-L:T=5:n=1:m=2")


def test_build_shape_inclusion_valid():
    sh = build_shape("horn:S=1:T=:n=2:m=1", (2, 2))
    assert sh.inclusion.is_valid() and sh.inclusion.is_injective()


def _point(R0, target, vertex):
    return BisimplicialMap(R0, target, lambda bd, c: (tuple(vertex for _ in c[0]), c[1]))


def test_pushout_along_identity():
    A = representable(1, 0, (2, 2))
    B = representable(1, 1, (2, 2))
    P, (iB, iC) = pushout(identity_map(A), _edge(A, B))
    assert P.counts() == B.counts()


def _edge(A, B):
    # the bottom edge of [1,1]
    return BisimplicialMap(A, B, lambda bd, c: (c[0], tuple(0 for _ in c[1])))


def test_pushout_two_edges_at_a_point_is_not_segal():
    T = (2, 2)
    E = representable(1, 0, T)
    R0 = representable(0, 0, T)
    f = _point(R0, E, 1)
    g = _point(R0, E, 0)
    P, (i1, i2) = pushout(f, g)
    assert P.size(0, 0) == 3
    assert P.check_identities() == []
    assert not is_segal(P)


def test_pushout_two_triangles():
    L = lower_triangle((2, 2)).obj
    R0 = representable(0, 0, (2, 2))
    q = lower_triangle((2, 2)).quotient
    # glue the bottom-right corner of one copy to the top-left of another
    a = BisimplicialMap(R0, L, lambda bd, c: q(bd, (tuple(1 for _ in c[0]), tuple(1 for _ in c[1]))))
    b = BisimplicialMap(R0, L, lambda bd, c: q(bd, (tuple(0 for _ in c[0]), tuple(0 for _ in c[1]))))
    P, _ = pushout(a, b)
    assert P.size(0, 0) == 3


def test_product():
    T = (2, 2)
    X = representable(1, 1, T)
    assert product(X, representable(0, 0, T)).counts() == X.counts()
    assert product(representable(1, 0, T), representable(0, 1, T)).counts() == X.counts()
    L = lower_triangle(T).obj
    assert product(L, L).size(0, 0) == 4


def test_dualities():
    X = comp_presheaf(2, 2)
    for which in ("hop", "vop"):
        back = dualize(dualize(X, which), which)
        assert back.counts() == X.counts()
        assert set(back.level(2, 1)) == set(X.level(2, 1))
    t = dualize(representable(1, 0, (2, 2)), "transpose")
    assert t.counts() == representable(0, 1, (2, 2)).counts()


def test_hom_set_yoneda(dbl):
    X = dbl["sq_poset1"].nerve(2, 2)
    assert len(hom_set(representable(0, 0, (2, 2)), X)) == X.size(0, 0)
    assert len(hom_set(representable(1, 1, (2, 2)), X)) == X.size(1, 1)


def test_hom_set_lower_triangle(dbl):
    # the L-shaped cells of the nerve of Sq([1]) are the three squares whose
    # top and left edges are identities
    X = dbl["sq_poset1"].nerve(3, 3)
    assert len(hom_set(lower_triangle().obj, X)) == 3


def test_hom_set_budget(dbl):
    X = dbl["sq_poset2"].nerve(2, 2)
    with pytest.raises(BudgetExceeded):
        hom_set(representable(2, 2, (2, 2)), X, budget=5)


def test_unique_lifts(dbl):
    R = representable(2, 1)
    assert has_unique_lift(identity_map(R), dbl["sq_poset1"].nerve())
    sp = spine("h", 2, 0)
    for name in ("terminal", "free_square", "sq_poset1", "sq_poset2"):
        N = dbl[name].nerve()
        assert has_unique_lift(inclusion_map(sp, representable(2, 0)), N)
        assert horn_has_unique_lift((1,), (), 2, 1, N)
        assert has_unique_lift(inclusion_map(horn((1,), (), 2, 1), R), N)


def test_lift_failure_reports_counterexample():
    # the boundary of [1,0] does not lift uniquely into a presheaf with two parallel edges
    T = (1, 1)
    E = representable(1, 0, T)
    B = boundary(1, 0, T)
    P, _ = pushout(inclusion_map(B, E), inclusion_map(B, E))
    A = build_shape("boundary:n=1:m=0", T)
    r = has_unique_lift(A.inclusion, P)
    assert not r
    assert r.detail


def test_segal():
    assert is_segal(representable(2, 1, (3, 3)))
    assert is_segal(comp_presheaf(3, 3))


def test_non_convex_horn_count():
    hs = non_convex_horns(3, 3)
    assert hs and all(n <= 3 and m <= 3 for _, _, n, m in hs)
    assert ((1,), (), 2, 0) in hs


def test_json_round_trip():
    X = representable(1, 1, (2, 2))
    Y = FinBisimplicialSet.from_json(X.to_json())
    assert Y.counts() == X.counts()
    assert Y.dumps() == X.dumps()
