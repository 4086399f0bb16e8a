from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import gf_mul, gf_trace, min_weight
from transccz import (
    Mfe,
    Rmfe,
    dual,
    expand_code,
    find_self_dual_basis,
    hermitian_code,
    make_field,
    mfe3,
    mfe_verify,
    min_distance,
    qubitize_css,
    rmfe_search,
    rmfe_trivial,
    rs_code,
)
from transccz.embed import collapse_vectors, expand_vectors, rmfe_exhaustive, rmfe_verify
from transccz.field import polynomial_basis


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6, 7, 8, 12, 16])
def test_self_dual_gram(m):
    basis = find_self_dual_basis(m)
    F = basis.field
    gram = [[gf_trace(gf_mul(a, b, F.modulus), F.modulus) for b in basis.elements] for a in basis.elements]
    assert np.array_equal(gram, np.eye(m, dtype=int))
    assert basis.kind == "self-dual"


def test_self_dual_small_cases():
    assert find_self_dual_basis(1).elements == (1,)
    assert find_self_dual_basis(2).elements == (2, 3)
    assert find_self_dual_basis(4).elements == (14, 10, 12, 9)
    assert find_self_dual_basis(8) == find_self_dual_basis(8)


def test_commutation_matches_trace_gf16():
    basis = find_self_dual_basis(4)
    F = basis.field
    a = np.arange(16)
    bits = basis.expand_array(a)
    parity = (bits @ bits.T) % 2
    want = np.array([[gf_trace(gf_mul(int(u), int(v), F.modulus), F.modulus) for v in a] for u in a])
    assert np.array_equal(parity, want)
    # the polynomial basis is not self-dual, and the rule fails there
    pb = polynomial_basis(F).expand_array(a)
    assert not np.array_equal((pb @ pb.T) % 2, want)


def test_expand_collapse_round_trip():
    basis = find_self_dual_basis(3)
    V = np.random.default_rng(1).integers(0, 8, size=(5, 7))
    assert np.array_equal(collapse_vectors(basis, expand_vectors(basis, V)), V)


def _instances():
    return [
        rs_code(make_field(2), 1),
        rs_code(make_field(2), 2),
        hermitian_code(2, 2),
        hermitian_code(2, 3),
        rs_code(make_field(3), 2),
        rs_code(make_field(4), 2),
    ]


@pytest.mark.parametrize("C", _instances(), ids=lambda C: C.label)
def test_expansion_commutes_with_duality(C):
    basis = find_self_dual_basis(C.field.m)
    BC = expand_code(C, basis)
    assert (BC.n, BC.k) == (C.n * C.field.m, C.k * C.field.m)
    assert dual(BC).same_code(expand_code(dual(C), basis))


@pytest.mark.parametrize("C", _instances(), ids=lambda C: C.label)
def test_expansion_does_not_lower_distance(C):
    BC = expand_code(C, find_self_dual_basis(C.field.m))
    d = min_distance(C)
    dB = min_distance(BC)
    assert dB >= d
    if BC.k <= 12:
        assert dB == min_weight(BC.gen.entries, 0b11)


def test_expand_examples():
    rep = rs_code(make_field(2), 1)
    B = expand_code(rep, find_self_dual_basis(2))
    assert (B.n, B.k) == (8, 2)
    assert min_distance(expand_code(hermitian_code(2, 2), find_self_dual_basis(2))) == 8
    with pytest.raises(ValueError):
        expand_code(rep, find_self_dual_basis(3))


def test_qubitize_examples(herm_css, rep_css):
    for Q, shape in ((herm_css, (14, 2)), (rep_css, (6, 2))):
        q = qubitize_css(Q, find_self_dual_basis(2))
        assert (q.N, q.K) == shape
        assert all(q.check().values())
    with pytest.raises(ValueError):
        qubitize_css(herm_css, polynomial_basis(herm_css.field))


def test_mfe3_hand_trace():
    mfe = mfe3(2)
    assert mfe.r == 8
    w = 2
    sx, sy, sz = mfe.embed(w), mfe.embed(w), mfe.embed(w)
    slots = sx * sy[mfe.pi2] * sz[mfe.pi3]
    assert np.flatnonzero(slots).tolist() == [7]
    assert int(mfe.unembed(slots)) == 1 == gf_mul(gf_mul(w, w, 7), w, 7)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_mfe3_exhaustive(m):
    v = mfe_verify(mfe3(m))
    assert v.ok and v.mode == "exhaustive" and v.checks == (2**m) ** 3


def test_mfe3_sampled_gf16():
    v = mfe_verify(mfe3(4), trials=100_000, seed=0)
    assert v.ok and v.mode == "sampled" and v.checks == 100_000


@pytest.mark.parametrize("m", [2, 4, 5])
def test_mfe_identity_on_one(m):
    mfe = mfe3(m)
    z = np.arange(2**m)
    assert np.array_equal(mfe.product(np.ones_like(z), np.ones_like(z), z), z)


def test_tampered_mfe_fails():
    good = mfe3(2)
    pi2 = good.pi2.copy()
    pi2[[1, 2]] = pi2[[2, 1]]
    bad = Mfe(good.m, good.r, good.sigma, pi2, good.pi3, good.psi)
    v = mfe_verify(bad)
    assert not v.ok and v.witness["got"] != v.witness["want"]


@pytest.mark.parametrize("m", [1, 2, 4, 8])
def test_rmfe_trivial(m):
    rm = rmfe_trivial(m)
    v = rmfe_verify(rm)
    assert v.ok and v.checks == 8
    assert int(rm.embed([1])) == 1
    assert rm.unembed(0).tolist() == [0]


def test_rmfe_search_regression():
    assert rmfe_search(1, 3) is not None
    assert rmfe_search(2, 2) is None and rmfe_exhaustive(2, 2)
    assert rmfe_search(2, 3) is None and rmfe_exhaustive(2, 3)
    found = rmfe_search(2, 4)
    assert found is not None
    assert found.phi.T.tolist() == [[0, 1, 0, 0], [1, 0, 0, 0]]
    assert rmfe_verify(found).ok and rmfe_verify(found).checks == 64


def test_tampered_rmfe_fails():
    found = rmfe_search(2, 4)
    psi = found.psi.copy()
    psi[0] ^= 1
    assert not rmfe_verify(Rmfe(2, 4, found.phi, psi)).ok


def test_rmfe_search_limits():
    with pytest.raises(ValueError):
        rmfe_search(5, 8)
    assert rmfe_search(3, 2) is None


@given(st.integers(1, 8), st.data())
def test_expansion_is_linear(m, data):
    basis = find_self_dual_basis(m)
    x = data.draw(st.integers(0, 2**m - 1))
    y = data.draw(st.integers(0, 2**m - 1))
    assert np.array_equal(basis.expand(x ^ y), basis.expand(x) ^ basis.expand(y))
