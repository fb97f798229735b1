from fractions import Fraction as F

import pytest

from liequant.freealg import (
    CapError,
    NCPoly,
    TnAlgebra,
    lie_project,
    lyndon_bracketing,
    lyndon_words,
    nc_bracket,
    nc_exp,
    nc_log,
    tn_insertion,
    tn_substitute,
)


def test_lyndon_words_small():
    assert lyndon_words(2, 1) == ["A", "B"]
    assert lyndon_words(2, 2) == ["AB"]
    assert lyndon_words(2, 3) == ["AAB", "ABB"]
    assert lyndon_words(2, 4) == ["AAAB", "AABB", "ABBB"]


def test_lyndon_witt_counts():
    # Witt numbers for a 2-letter alphabet
    expected = {1: 2, 2: 1, 3: 2, 4: 3, 5: 6, 6: 9}
    for n, cnt in expected.items():
        assert len(lyndon_words(2, n)) == cnt


def test_lyndon_bracketing_oracle():
    p = lyndon_bracketing("AAB")  # [A,[A,B]]
    assert p.terms == {"AAB": F(1), "ABA": F(-2), "BAA": F(1)}


def test_lie_project_degree_two():
    ab = NCPoly({"AB": F(1)})
    assert lie_project(ab).terms == {"AB": F(1, 2), "BA": F(-1, 2)}


def test_lie_project_fixes_lie_elements():
    for w in ["AB", "AAB", "ABB", "AABB", "AAAB"]:
        p = lyndon_bracketing(w)
        assert lie_project(p).terms == p.terms


def test_nc_product_and_cap():
    a = NCPoly({"A": F(1)}, cap=3)
    b = NCPoly({"B": F(1)}, cap=3)
    p = (a + b) * (a - b)
    assert p.terms == {"AA": F(1), "AB": F(-1), "BA": F(1), "BB": F(-1)}
    # degree-4 part of a product is dropped at cap 3
    q = (a * a) * (a * a)
    assert q.terms == {}
    with pytest.raises(CapError):
        a + NCPoly({"B": F(1)}, cap=2)


def test_nc_exp_log_roundtrip():
    x = NCPoly({"A": F(1), "BB": F(1, 2)}, cap=4)
    assert nc_log(nc_exp(x, 4), 4).terms == x.terms
    g = nc_exp(NCPoly({"AB": F(1)}, cap=5), 5)
    assert nc_log(g, 5).terms == {"AB": F(1)}


def test_bch_degree_two():
    a = NCPoly({"A": F(1)}, cap=2)
    b = NCPoly({"B": F(1)}, cap=2)
    z = nc_log(nc_exp(a, 2) * nc_exp(b, 2), 2)
    # log(e^A e^B) = A + B + [A,B]/2 + ...
    assert z.terms == {
        "A": F(1),
        "B": F(1),
        "AB": F(1, 2),
        "BA": F(-1, 2),
    }


def test_t3_defining_relations():
    alg = TnAlgebra(3, cap=4)
    t12, t13, t23 = alg.t(1, 2), alg.t(1, 3), alg.t(2, 3)
    assert (t12 * (t13 + t23) - (t13 + t23) * t12).is_zero()
    assert (t13 * (t12 + t23) - (t12 + t23) * t13).is_zero()
    assert (t23 * (t12 + t13) - (t12 + t13) * t23).is_zero()
    z = alg.z()
    for t in (t12, t13, t23):
        assert (z * t - t * z).is_zero()
    assert (t12 + t13 + t23 - z).is_zero()


def test_t4_defining_relations():
    alg = TnAlgebra(4, cap=3)
    pairs = [(i, j) for i in range(1, 5) for j in range(i + 1, 5)]
    ts = {p: alg.t(*p) for p in pairs}
    # [t_ij, t_ik + t_jk] = 0 for each triple i<j<k
    for i, j, k in [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]:
        for a, b, c in [
            ((i, j), (i, k), (j, k)),
            ((i, k), (i, j), (j, k)),
            ((j, k), (i, j), (i, k)),
        ]:
            x = ts[a]
            y = ts[b] + ts[c]
            assert (x * y - y * x).is_zero(), (a, b, c)
    # disjoint pairs commute
    for a, b in [((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))]:
        x, y = ts[a], ts[b]
        assert (x * y - y * x).is_zero()


def test_tn_elem_exp_inverse():
    alg = TnAlgebra(3, cap=3)
    t = alg.t(1, 2)
    g = t.exp()
    assert (g * (-t).exp() - alg.one()).is_zero()
    u = alg.one() + t
    assert (u * u.inverse() - alg.one()).is_zero()


def test_tn_substitute():
    alg = TnAlgebra(3, cap=3)
    p = NCPoly({"AB": F(1), "BA": F(-1)})  # [A,B]
    r = tn_substitute(p, alg.t(1, 2), alg.t(2, 3))
    s = alg.t(1, 2) * alg.t(2, 3) - alg.t(2, 3) * alg.t(1, 2)
    assert (r - s).is_zero()


def test_tn_insertion_doubling():
    # strand map {1->1, 2->2, 3->2}: t12 |-> t12 + t13
    t3 = TnAlgebra(3, cap=2)
    y = tn_insertion(t3.t(1, 2), {1: 1, 2: 2, 3: 2}, t3)
    expect = t3.t(1, 2) + t3.t(1, 3)
    assert (y - expect).is_zero()


def test_tn_insertion_into_t4():
    # doubling the middle strand of t3 inside t4: t23 |-> t23 + t24
    t3 = TnAlgebra(3, cap=2)
    t4 = TnAlgebra(4, cap=2)
    y = tn_insertion(t3.t(2, 3), {1: 1, 2: 2, 3: 3, 4: 3}, t4)
    expect = t4.t(2, 3) + t4.t(2, 4)
    assert (y - expect).is_zero()


def test_component_and_truncate():
    alg = TnAlgebra(3, cap=4)
    g = alg.t(1, 2).exp()
    c2 = g.component(2)
    t = alg.t(1, 2)
    assert (c2 - t * t * F(1, 2)).is_zero()
    with pytest.raises(CapError):
        g.component(5)
