import pytest

from torslat.complexes import Point
from torslat.cosilting import CosiltingEngine
from torslat.errors import InputError
from torslat.lattice import TorsLattice, mask_of


def ids(lat, *names):
    return lat.id_of(mask_of(lat.alg.index_of(x) for x in names))


def labels(eng, pts):
    return sorted(eng.cc.label(q) for q in pts)


def pt(alg, kind, name):
    return Point(kind, alg.index_of(name))


def test_complex_hom1_examples(eng2):
    a = eng2.alg
    cc = eng2.cc
    assert cc.point_hom1(pt(a, "copres", "S2"), pt(a, "copres", "S2")) == 0
    for i in a.injective_index:
        for j in a.injective_index:
            assert cc.point_hom1(Point("shift", i), Point("shift", j)) == 0
    assert cc.point_hom1(pt(a, "copres", "S1"), pt(a, "shift", "S1")) == 1


def test_copresentation_of_s2(eng2):
    cx = eng2.cc.complex_of(pt(eng2.alg, "copres", "S2"))
    assert [eng2.alg.name_of(i) for i in cx.deg0] == ["P1"]
    assert [eng2.alg.name_of(i) for i in cx.deg1] == ["S1"]
    assert eng2.cc.is_minimal(cx)


def test_a2_cosilting_pairs(eng2, lat2):
    name = lat2.alg.name_of
    expected = {
        (): (["P1", "S1"], []),
        ("S1",): (["P1", "S2"], []),
        ("S2",): (["S1"], ["P1"]),
        ("S1", "P1"): (["S2"], ["S1"]),
        ("S1", "S2", "P1"): ([], ["P1", "S1"]),
    }
    for k in range(5):
        pair, N = eng2.cosilting_of(k)
        key = tuple(lat2.names(lat2.classes[k]))
        assert (sorted(map(name, pair.Z)), sorted(map(name, pair.I))) == expected[key]
        assert len(N.points) == 2
    top = eng2.points(lat2.top)
    assert labels(eng2, top) == ["P1[-1]", "S1[-1]"]
    assert labels(eng2, eng2.points(ids(lat2, "S1", "P1"))) == ["S1[-1]", "copres(S2)"]


@pytest.mark.parametrize("fixture", ["a2", "a3", "a3_alt", "a3_rel"])
def test_sets_have_n_points_and_are_rigid(request, fixture):
    alg = request.getfixturevalue(fixture)
    eng = CosiltingEngine(TorsLattice(alg))
    seen = set()
    for k in range(len(eng.lat.classes)):
        pair, N = eng.cosilting_of(k)
        assert len(N.points) == alg.n == len(pair.Z) + len(pair.I)
        assert eng.cc.is_rigid(sorted(N.points))
        assert N.points not in seen
        seen.add(N.points)


def test_order_isomorphism(eng3, lat3):
    K = len(lat3.classes)
    for u in range(K):
        for t in range(K):
            assert lat3.leq(u, t) == eng3.order_reflects(u, t)


def test_neg_isolated_a2(eng2, lat2):
    N = eng2.classify_neg_isolated(ids(lat2, "S1", "P1"))
    assert {eng2.cc.label(q): tag for q, tag in N.tags.items()} == {
        "copres(S2)": "critical",
        "S1[-1]": "special-injective",
    }
    N = eng2.classify_neg_isolated(lat2.bottom)
    assert {eng2.cc.label(q): tag for q, tag in N.tags.items()} == {
        "copres(S1)": "critical",
        "copres(P1)": "critical",
    }
    N = eng2.classify_neg_isolated(lat2.top)
    assert "critical" not in N.tags.values()


def test_neg_isolated_count(eng3, lat3):
    for k in range(len(lat3.classes)):
        N = eng3.classify_neg_isolated(k)
        tagged = [t for t in N.tags.values() if t != "plain"]
        assert len(tagged) == len([a for a in lat3.arrows if k in (a.upper, a.lower)])


def test_special_kernel_case(eng2, lat2):
    # below {S1} the label is S1, whose cover by P1 in {S2, P1} is onto with kernel S2
    N = eng2.classify_neg_isolated(ids(lat2, "S1"))
    assert N.tags[pt(eng2.alg, "copres", "S2")] == "special"
    assert N.tags[pt(eng2.alg, "copres", "P1")] == "critical"


def test_worked_exchange_triangle(eng2, lat2):
    arrow = next(a for a in lat2.arrows if a.upper == lat2.top and a.lower == ids(lat2, "S1", "P1"))
    assert lat2.alg.name_of(arrow.label) == "S2"
    N, rec = eng2.mutate(arrow.lower, arrow)
    assert eng2.cc.label(rec.lam) == "copres(S2)"
    assert eng2.cc.label(rec.rho) == "P1[-1]"
    assert labels(eng2, rec.eps) == ["S1[-1]"]
    assert N.points == eng2.points(lat2.top)
    # the unreduced cocone has degree 1 term S1 + P1 and loses an S1 = S1 block
    lam = eng2.cc.complex_of(rec.lam)
    _, _, g = eng2.cc.min_right_approx([q for q in rec.eps], lam)
    terms, _ = eng2.cc.cocone(g)
    assert sorted(eng2.alg.name_of(i) for i in terms[1]) == ["P1", "S1"]
    reduced, _ = eng2.cc.reduce(*eng2.cc.cocone(g))
    assert reduced[0] == [] and [eng2.alg.name_of(i) for i in reduced[1]] == ["P1"] and reduced[2] == []


def test_exchange_below_s1(eng2, lat2):
    arrow = next(a for a in lat2.arrows if a.upper == ids(lat2, "S1") and a.lower == lat2.bottom)
    N, rec = eng2.mutate(lat2.bottom, arrow)
    assert eng2.cc.label(rec.lam) == "copres(S1)"
    assert eng2.cc.label(rec.rho) == "copres(S2)"


@pytest.mark.parametrize("which", ["eng2", "eng3"])
def test_every_arrow_mutates_and_back(request, which):
    eng = request.getfixturevalue(which)
    for a in eng.lat.arrows:
        up, rec = eng.mutate(a.lower, a)
        down, rec2 = eng.mutate(a.upper, a)
        assert up.points == eng.points(a.upper)
        assert down.points == eng.points(a.lower)
        assert len(eng.points(a.upper) ^ eng.points(a.lower)) == 2
        assert rec.rho == rec2.rho and rec.lam == rec2.lam


def test_mutate_rejects_foreign_class(eng2, lat2):
    arrow = lat2.arrows[0]
    other = next(k for k in range(5) if k not in (arrow.upper, arrow.lower))
    with pytest.raises(InputError):
        eng2.mutate(other, arrow)


def test_closed_rigid_to_wide_examples(eng2, lat2):
    a = eng2.alg
    assert eng2.closed_rigid_to_wide([]) == (lat2.bottom, lat2.top)
    assert eng2.closed_rigid_to_wide([pt(a, "shift", "S1")]) == (ids(lat2, "S1", "P1"), lat2.top)
    for k in range(5):
        assert eng2.closed_rigid_to_wide(eng2.points(k)) == (k, k)
    with pytest.raises(InputError):
        eng2.closed_rigid_to_wide([pt(a, "copres", "S1"), pt(a, "shift", "S1")])


@pytest.mark.parametrize("which,count", [("eng2", 11), ("eng3", 45)])
def test_wide_bijection(request, which, count):
    eng = request.getfixturevalue(which)
    wide = eng.lat.wide_intervals()
    realized = eng.realized_rigid_sets()
    assert len(wide) == len(realized) == count
    for E, (u, t) in realized.items():
        assert eng.closed_rigid_to_wide(E) == (u, t)
    assert set(realized) == set(eng.rigid_subsets())


def test_almost_complete(eng2, eng3):
    a = eng2.alg
    assert eng2.almost_complete_check([pt(a, "shift", "S1")])
    assert not eng2.almost_complete_check([])
    with pytest.raises(InputError):
        eng2.almost_complete_check(eng2.points(0))
    for E in eng3.rigid_subsets():
        if len(E) == eng3.alg.n - 1:
            assert eng3.almost_complete_check(E)


def test_records(eng2):
    r = eng2.record(3)
    assert r["Z"] == ["S2"] and r["I"] == ["S1"]
    assert r["arrows_verified"] == 2
    assert {p["text"]: p["tag"] for p in r["points"]} == {"copres(S2)": "critical", "S1[-1]": "special-injective"}
