from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import gf_inv, gf_mul, gf_trace, irreducible_by_trial_division
from transccz import FieldBasis, FieldElem, FieldSpec, make_field
from transccz.embed import find_self_dual_basis
from transccz.field import (
    CANONICAL_MODULI,
    FieldError,
    combine,
    expand,
    polynomial_basis,
    trace,
)


def test_make_field_small_moduli():
    assert make_field(1).modulus == 0b11
    assert make_field(2).modulus == 0b111
    assert make_field(4).modulus == make_field(4).modulus


@pytest.mark.parametrize("m", range(2, 11))
def test_modulus_is_least_irreducible(m):
    mod = CANONICAL_MODULI[m]
    assert irreducible_by_trial_division(mod)
    # nothing smaller of the same degree with a constant term is irreducible
    for cand in range((1 << m) | 1, mod, 2):
        assert not irreducible_by_trial_division(cand)


@pytest.mark.parametrize("m", [0, 17, -1])
def test_make_field_range(m):
    with pytest.raises(FieldError):
        make_field(m)


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        FieldSpec(2, 0b101)
    with pytest.raises(FieldError):
        FieldSpec(3, 0b111)


def test_spec_text_round_trip():
    F = make_field(8)
    assert str(F) == "gf2m m=8 poly=0x11b"
    assert FieldSpec.parse(str(F)) == F


def test_gf4_products(gf4):
    w = gf4(2)
    assert w * (w * w) == gf4.one
    assert w * w == gf4(3)
    assert w + w == gf4.zero
    assert w * gf4.one == w


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_tables_match_schoolbook(m):
    F = make_field(m)
    a, b = np.meshgrid(np.arange(F.q), np.arange(F.q), indexing="ij")
    want = np.vectorize(lambda x, y: gf_mul(int(x), int(y), F.modulus))(a, b)
    assert np.array_equal(F.mul(a, b), want)


@pytest.mark.parametrize("m", [4, 8, 12, 16])
def test_random_products_match_schoolbook(m):
    F = make_field(m)
    rng = np.random.default_rng(m)
    a, b = rng.integers(0, F.q, size=(2, 500))
    want = [gf_mul(int(x), int(y), F.modulus) for x, y in zip(a, b)]
    assert F.mul(a, b).tolist() == want
    nz = a[a > 0][:50]
    assert F.inv(nz).tolist() == [gf_inv(int(x), F.modulus) for x in nz]


def test_inverse_of_zero():
    F = make_field(3)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)
    with pytest.raises(ZeroDivisionError):
        F.zero.inverse()


def test_mixed_fields_rejected():
    with pytest.raises(FieldError):
        make_field(2)(1) + make_field(3)(1)
    with pytest.raises(FieldError):
        FieldElem(4, make_field(2))


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_field_axioms_exhaustive(m):
    F = make_field(m)
    x, y, z = (a.ravel() for a in np.meshgrid(*(np.arange(F.q),) * 3, indexing="ij"))
    assert np.array_equal(F.mul(F.mul(x, y), z), F.mul(x, F.mul(y, z)))
    assert np.array_equal(F.mul(x, y ^ z), F.mul(x, y) ^ F.mul(x, z))
    nz = np.arange(1, F.q)
    assert np.all(F.mul(nz, F.inv(nz)) == 1)


@pytest.mark.parametrize("m", [5, 8, 13, 16])
def test_field_axioms_sampled(m):
    F = make_field(m)
    x, y, z = np.random.default_rng(m).integers(0, F.q, size=(3, 10_000))
    assert np.array_equal(F.mul(F.mul(x, y), z), F.mul(x, F.mul(y, z)))
    assert np.array_equal(F.mul(x, y ^ z), F.mul(x, y) ^ F.mul(x, z))
    nz = x[x > 0]
    assert np.all(F.mul(nz, F.inv(nz)) == 1)


def test_trace_gf4(gf4):
    w = gf4(2)
    assert trace(gf4.zero) == 0
    assert trace(w) == 1
    assert trace(w * w) == 1
    assert trace(gf4.one) == 0


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6, 7, 8])
def test_trace_properties_exhaustive(m):
    F = make_field(m)
    a = np.arange(F.q)
    tr = F.trace(a)
    assert set(np.unique(tr)) <= {0, 1}
    assert np.array_equal(F.trace(a[:, None] ^ a[None, :]), tr[:, None] ^ tr[None, :])
    assert np.array_equal(F.trace(F.mul(a, a)), tr)
    assert tr.any()
    assert tr.tolist() == [gf_trace(int(x), F.modulus) for x in a]


@pytest.mark.parametrize("m", [2, 5, 9])
def test_scalar_trace_matches_table(m):
    F = make_field(m)
    for x in list(F.elements())[:64]:
        assert x.trace() == int(F.trace(x.bits))


def test_expand_combine(gf4, gf16):
    sdb = find_self_dual_basis(2)
    assert sdb.elements == (2, 3)
    assert expand(sdb, gf4.one).tolist() == [1, 1]
    assert expand(sdb, gf4.zero).tolist() == [0, 0]
    for basis in (polynomial_basis(gf16), find_self_dual_basis(4)):
        for x in gf16.elements():
            assert combine(basis, expand(basis, x)) == x


def test_expand_is_linear():
    basis = find_self_dual_basis(6)
    a = np.arange(64)
    ea = basis.expand_array(a)
    assert np.array_equal(basis.expand_array(a[:, None] ^ a[None, :]), ea[:, None, :] ^ ea[None, :, :])


def test_basis_validation(gf16):
    with pytest.raises(FieldError):
        FieldBasis(gf16, (1, 2, 3, 8))
    with pytest.raises(FieldError):
        FieldBasis(gf16, (1, 2, 4))
    with pytest.raises(FieldError):
        FieldBasis(gf16, (1, 2, 4, 8), "self-dual")
    with pytest.raises(FieldError):
        polynomial_basis(gf16).combine(np.zeros(3, dtype=int))


@given(st.integers(1, 16), st.data())
def test_trace_linear_random(m, data):
    F = make_field(m)
    x = data.draw(st.integers(0, F.q - 1))
    y = data.draw(st.integers(0, F.q - 1))
    assert F.trace(x ^ y) == F.trace(x) ^ F.trace(y)
    assert F.trace(F.mul(x, x)) == F.trace(x)


@given(st.integers(1, 16), st.data())
def test_pow_matches_repeated_multiplication(m, data):
    F = make_field(m)
    x = F(data.draw(st.integers(0, F.q - 1)))
    e = data.draw(st.integers(0, 9))
    acc = F.one
    for _ in range(e):
        acc = acc * x
    assert x**e == acc
