"""Finite field arithmetic: exhaustive axiom checks on the table level
plus the element-level operation layer."""

import numpy as np
import pytest

from ncomega.field import (FieldError, ff_add, ff_code, ff_elem, ff_inv,
                           ff_make_spec, ff_mul, ff_one, ff_pow, ff_zero,
                           field_tables, multiplicative_order,
                           primitive_element, suzuki_theta)

PRIME_POWERS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2),
                (2, 4), (5, 2), (3, 3), (7, 2), (2, 6), (3, 4)]


@pytest.mark.parametrize("p,e", PRIME_POWERS)
def test_axioms_exhaustive(p, e):
    q = p ** e
    tabs = field_tables(ff_make_spec(p, e))
    add, mul = tabs["add"], tabs["mul"]
    neg, inv = tabs["neg"], tabs["inv"]
    a = np.arange(q)
    assert np.array_equal(add, add.T)
    assert np.array_equal(mul, mul.T)
    for tab in (add, mul):
        # (x op y) op z == x op (y op z), all q^3 triples at once
        lhs = tab[tab[:, :, None], a[None, None, :]]
        rhs = tab[a[:, None, None], tab[None, :, :]]
        assert np.array_equal(lhs, rhs)
    dist_l = mul[a[:, None, None], add[None, :, :]]
    dist_r = add[mul[:, :, None], mul[:, None, :]]
    assert np.array_equal(dist_l, dist_r)
    assert np.array_equal(add[:, 0], a)
    assert np.array_equal(mul[:, 1], a)
    assert np.all(add[a, neg[a]] == 0)
    assert np.all(mul[a[1:], inv[a[1:]]] == 1)
    assert inv[0] == 0
    assert np.all(mul[0] == 0)


@pytest.mark.parametrize("p,e", [(2, 3), (3, 2), (5, 1), (7, 2)])
def test_element_ops_match_tables(p, e):
    spec = ff_make_spec(p, e)
    q = p ** e
    tabs = field_tables(spec)
    for ca in range(q):
        xa = ff_elem(spec, ca)
        assert ff_code(spec, xa) == ca
        for cb in range(q):
            xb = ff_elem(spec, cb)
            assert ff_code(spec, ff_add(spec, xa, xb)) == tabs["add"][ca, cb]
            assert ff_code(spec, ff_mul(spec, xa, xb)) == tabs["mul"][ca, cb]


def test_inverse_and_power():
    spec = ff_make_spec(3, 2)
    for c in range(1, 9):
        x = ff_elem(spec, c)
        assert ff_mul(spec, x, ff_inv(spec, x)) == ff_one(spec)
        assert ff_pow(spec, x, 8) == ff_one(spec)      # x^(q-1) = 1
    assert ff_pow(spec, ff_elem(spec, 5), 0) == ff_one(spec)
    with pytest.raises(FieldError):
        ff_inv(spec, ff_zero(spec))


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 3), (3, 2), (5, 2), (2, 5)])
def test_primitive_element(p, e):
    spec = ff_make_spec(p, e)
    g = primitive_element(spec)
    assert multiplicative_order(spec, g) == p ** e - 1


@pytest.mark.parametrize("m", [1, 2])
def test_suzuki_twist_squares(m):
    # theta is the automorphism with theta(theta(x)) = x^2 on GF(2^(2m+1))
    spec = ff_make_spec(2, 2 * m + 1)
    for c in range(2 ** (2 * m + 1)):
        x = ff_elem(spec, c)
        twice = suzuki_theta(spec, suzuki_theta(spec, x, m), m)
        assert twice == ff_mul(spec, x, x)


@pytest.mark.parametrize("bad", [(6, 1), (1, 1), (4, 2), (0, 3)])
def test_rejects_non_prime_base(bad):
    with pytest.raises((FieldError, ValueError)):
        ff_make_spec(*bad)
