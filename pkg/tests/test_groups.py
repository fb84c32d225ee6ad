"""Group construction: orders, centers, element-order profiles, and the
table-level invariants everything downstream leans on."""

import numpy as np
import pytest

from ncomega.groups import get_group
from ncomega.groups.linear import linear_order
from ncomega.groups.suzuki import suzuki_order
from ncomega.groups.table import (GroupBuildError, bits_list, bits_size)


def profile(G):
    out = {}
    for o in G.element_orders():
        out[int(o)] = out.get(int(o), 0) + 1
    return out


# -- orders and centers --

@pytest.mark.parametrize("kind,q,order,center", [
    ("gl", 2, 6, 1), ("gl", 3, 48, 2), ("gl", 5, 480, 4),
    ("sl", 3, 24, 2), ("sl", 5, 120, 2), ("sl", 7, 336, 2), ("sl", 9, 720, 2),
    ("pgl", 3, 24, 1), ("pgl", 5, 120, 1), ("pgl", 7, 336, 1), ("pgl", 9, 720, 1),
    ("psl", 2, 6, 1), ("psl", 3, 12, 1), ("psl", 4, 60, 1), ("psl", 5, 60, 1),
    ("psl", 7, 168, 1), ("psl", 8, 504, 1), ("psl", 9, 360, 1), ("psl", 11, 660, 1),
])
def test_degree2_linear(grp, kind, q, order, center):
    G = grp(kind, n=2, q=q)
    assert G.order == order == linear_order(kind.upper(), 2, q)
    assert G.center_order() == center


def test_psl33(psl33):
    assert psl33.order == 5616
    assert psl33.center_order() == 1
    assert profile(psl33) == {1: 1, 2: 117, 3: 728, 4: 702,
                              6: 936, 8: 1404, 13: 1728}


def test_suzuki(sz8):
    assert suzuki_order(1) == 29120 == sz8.order
    assert sz8.center_order() == 1
    assert profile(sz8) == {1: 1, 2: 455, 4: 3640, 5: 5824,
                            7: 12480, 13: 6720}


@pytest.mark.parametrize("kind,q,want", [
    ("psl", 7, {1: 1, 2: 21, 3: 56, 4: 42, 7: 48}),
    ("sl", 5, {1: 1, 2: 1, 3: 20, 4: 30, 5: 24, 6: 20, 10: 24}),
])
def test_profiles(grp, kind, q, want):
    assert profile(grp(kind, n=2, q=q)) == want


def test_sl25_unique_involution_and_perfect(grp):
    G = grp("sl", n=2, q=5)
    assert profile(G)[2] == 1
    assert bits_size(G.derived_subgroup()) == G.order
    assert not G.is_solvable()


# -- extra-special groups --

@pytest.mark.parametrize("p,n,form", [(2, 1, "plus"), (2, 1, "minus"),
                                      (2, 2, "plus"), (3, 1, "plus"),
                                      (3, 1, "minus"), (3, 2, "minus"),
                                      (5, 1, "plus")])
def test_extraspecial_shape(grp, p, n, form):
    G = grp("extraspecial", p=p, n=n, form=form)
    assert G.order == p ** (2 * n + 1)
    assert G.center_order() == p
    assert bits_list(G.derived_subgroup()) == bits_list(G.center_bits())


def test_extraspecial_exponent(grp):
    # plus type of odd p has exponent p; minus type has exponent p^2
    assert profile(grp("extraspecial", p=3, n=1, form="plus")) == {1: 1, 3: 26}
    assert profile(grp("extraspecial", p=3, n=1, form="minus")) == {1: 1, 3: 8, 9: 18}
    # the two order-8 types: dihedral and quaternion
    assert profile(grp("extraspecial", p=2, n=1, form="plus")) == {1: 1, 2: 5, 4: 2}
    assert profile(grp("extraspecial", p=2, n=1, form="minus")) == {1: 1, 2: 1, 4: 6}


# -- named groups --

@pytest.mark.parametrize("name,order,center", [
    ("dihedral(3)", 6, 1), ("dihedral(4)", 8, 2), ("dihedral(5)", 10, 1),
    ("dihedral(6)", 12, 2), ("quaternion8", 8, 2),
    ("symmetric(3)", 6, 1), ("symmetric(4)", 24, 1), ("symmetric(5)", 120, 1),
    ("alternating(4)", 12, 1), ("alternating(5)", 60, 1),
])
def test_named(grp, name, order, center):
    G = grp("named", name=name)
    assert G.order == order
    assert G.center_order() == center


def test_solvability(grp):
    assert grp("named", name="symmetric(4)").is_solvable()
    assert not grp("named", name="alternating(5)").is_solvable()
    assert grp("sl", n=2, q=3).is_solvable()
    assert not grp("psl", n=2, q=7).is_solvable()


def test_s4_derived_is_a4(grp):
    S4 = grp("named", name="symmetric(4)")
    der = S4.derived_subgroup()
    assert bits_size(der) == 12
    orders = sorted(int(S4.element_orders()[i]) for i in bits_list(der))
    assert orders.count(3) == 8            # the eight 3-cycles sit inside


# -- table invariants --

@pytest.mark.parametrize("family,params", [
    ("named", {"name": "symmetric(4)"}),
    ("psl", {"n": 2, "q": 7}),
    ("extraspecial", {"p": 3, "n": 1, "form": "minus"}),
])
def test_commute_relation_consistency(grp, family, params):
    G = grp(family, **params)
    inv = G.inverses()
    for g in range(G.order):
        cg = G.centralizer_bits(g)
        assert cg >> g & 1                              # reflexive
        assert cg >> 0 & 1                              # identity commutes
        for h in (0, 1, G.order - 1, g, int(inv[g])):
            assert (cg >> h & 1) == (G.centralizer_bits(h) >> g & 1)
            assert (cg >> h & 1) == (G.mul_index(g, h) == G.mul_index(h, g))


@pytest.mark.parametrize("family,params,samples", [
    ("psl", {"n": 2, "q": 7}, 40),
    ("psl", {"n": 3, "q": 3}, 25),
    ("suzuki", {"m": 1}, 25),
])
def test_bicentralizer_always_abelian(grp, family, params, samples):
    G = grp(family, **params)
    center = G.center_bits()
    rng = np.random.default_rng(7)
    for g in rng.choice(G.order, size=samples, replace=False):
        g = int(g)
        if center >> g & 1:
            continue
        bic = G.bicentralizer_bits(g)
        assert G.subset_is_abelian(bic)
        assert bic & center == center                   # contains the center
        assert bic >> g & 1
        # bicentralizer sits inside the centralizer
        cz = G.centralizer_bits(g)
        assert bic & cz == bic


def test_centralizer_of_identity(grp):
    G = grp("named", name="symmetric(4)")
    assert G.centralizer_bits(0) == (1 << G.order) - 1


def test_closure_cap_raises(grp):
    G = grp("psl", n=2, q=7)
    with pytest.raises(GroupBuildError):
        G.subgroup_closure([1, 2, 3, 4, 5], cap=8)
    closed = G.subgroup_closure([1, 2, 3, 4, 5])
    assert G.order % bits_size(closed) == 0               # Lagrange


def test_conjugation_preserves_centralizer_size(grp):
    G = grp("named", name="symmetric(4)")
    for g in (1, 5, 10):
        cz = G.centralizer_bits(g)
        for t in (2, 7):
            moved = G.conjugate_subset(cz, t)
            assert bits_size(moved) == bits_size(cz)


@pytest.mark.parametrize("bad", [
    ("psl", {"n": 2, "q": 6}),
    ("suzuki", {"m": 0}),
    ("extraspecial", {"p": 4, "n": 1, "form": "plus"}),
    ("named", {"name": "frobenius(20)"}),
])
def test_bad_parameters_rejected(bad):
    family, params = bad
    with pytest.raises((GroupBuildError, ValueError)):
        get_group(family, **params)
