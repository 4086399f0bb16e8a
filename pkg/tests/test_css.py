from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import gf_mul, gf_rank
from transccz import (
    EXCEEDED,
    HypothesisError,
    LinearCode,
    ag_param_bounds,
    basis_state_coset,
    build_css,
    hermitian_code,
    logical_paulis,
    make_field,
    pivot_form,
    rs_code,
)
from transccz.css import logical_min_weight, qudit_distances
from transccz.linalg import Mat, rank, rowspace_equal


def brute_logical_weight(checks: np.ndarray, logicals: np.ndarray, modulus: int) -> int:
    """Min weight over all of F^n with checks.e = 0 and logicals.e != 0."""
    q = 1 << (modulus.bit_length() - 1)
    table = np.array([[gf_mul(a, b, modulus) for b in range(q)] for a in range(q)])
    n = logicals.shape[1]
    best = 0
    for e in itertools.product(range(q), repeat=n):
        e = np.array(e)
        w = np.count_nonzero(e)
        if w == 0 or (best and w >= best):
            continue
        dot = lambda row: np.bitwise_xor.reduce(table[row, e])
        if any(dot(r) for r in checks):
            continue
        if any(dot(r) for r in logicals):
            best = w
    return best


def test_pivot_form_examples(gf4, gf16, herm22):
    H1, H0, perm = pivot_form(rs_code(gf4, 1), 1)
    assert H1.entries.tolist() == [[1, 1, 1]] and H0.rows == 0
    H1, H0, perm = pivot_form(herm22, 1)
    assert H1.shape == (1, 7) and H0.shape == (1, 7)
    C = rs_code(gf16, 5)
    H1, H0, perm = pivot_form(C, 2)
    assert H1.shape == (2, 14) and H0.shape == (3, 14)
    # reassemble [[1, H1], [0, H0]] in permuted column order
    block = np.zeros((5, 16), dtype=np.int64)
    block[:2, :2] = np.eye(2, dtype=np.int64)
    block[:2, 2:] = H1.entries
    block[2:, 2:] = H0.entries
    original = np.zeros_like(block)
    original[:, list(perm)] = block
    assert rowspace_equal(Mat(gf16, original), C.gen)


def test_pivot_form_requires_all_ones():
    even = LinearCode.from_rows(make_field(1), [[1, 1, 0, 0], [0, 0, 1, 1]])
    assert even.k == 2
    odd = LinearCode.from_rows(make_field(1), [[1, 1, 0, 0], [0, 1, 1, 0]])
    with pytest.raises(HypothesisError):
        pivot_form(odd, 1)


def test_build_css_examples(herm_css, rs_css, rep_css):
    assert (herm_css.N, herm_css.K, herm_css.field.q) == (7, 1, 4)
    assert herm_css.dx_bound == 5
    assert (rs_css.N, rs_css.K, rs_css.field.q) == (14, 2, 16)
    assert rs_css.dx_bound == 10
    assert (rep_css.N, rep_css.K) == (3, 1)
    assert rep_css.H0.rows == 0 and rep_css.dz == 1


def test_build_css_rejects_bad_inputs(gf16, herm22):
    with pytest.raises(HypothesisError, match="multiplication property"):
        build_css(rs_code(gf16, 6), 1)
    with pytest.raises(HypothesisError):
        build_css(herm22, 3)
    with pytest.raises(HypothesisError):
        build_css(herm22, 0)


@pytest.mark.parametrize("fixture", ["herm_css", "rs_css", "rep_css"])
def test_css_structure(request, fixture):
    Q = request.getfixturevalue(fixture)
    F = Q.field
    assert Q.N + Q.K == Q.N + Q.H1.rows == len(Q.col_perm)
    assert rank(Q.H1) == Q.K
    assert rank(Q.generator()) == Q.k
    # z stabilizers annihilate every codeword of C'
    if Q.z_stab.rows:
        assert not (Q.generator() @ Q.z_stab.T).entries.any()
    X, Z = logical_paulis(Q)
    pair = (Z @ X.T).entries
    assert np.array_equal(pair, np.eye(Q.K, dtype=np.int64))
    if Q.H0.rows:
        assert not (Z @ Q.H0.T).entries.any()
    assert gf_rank(Q.generator().entries, F.modulus) == Q.k


def test_logical_pauli_rep_code(rep_css, gf4):
    X, Z = logical_paulis(rep_css)
    z = Z.entries[0]
    acc = 0
    for a, b in zip(z, rep_css.H1.entries[0]):
        acc ^= gf_mul(int(a), int(b), gf4.modulus)
    assert acc == 1


def test_basis_state_cosets(herm_css, rep_css):
    assert basis_state_coset(rep_css, [0]).tolist() == [[0, 0, 0]]
    seen = set()
    for u in range(4):
        coset = basis_state_coset(herm_css, [u])
        assert len(coset) == 4
        words = {tuple(w) for w in coset.tolist()}
        assert len(words) == 4 and not (words & seen)
        seen |= words
    with pytest.raises(ValueError):
        basis_state_coset(herm_css, [1, 2])


def test_basis_state_coset_sampling(rs_css):
    full = basis_state_coset(rs_css, [1, 2])
    assert len(full) == 16**3
    sampled = basis_state_coset(rs_css, [1, 2], budget=10, samples=50, seed=3)
    assert len(sampled) == 50
    assert {tuple(r) for r in sampled.tolist()} <= {tuple(r) for r in full.tolist()}
    with pytest.raises(ValueError):
        basis_state_coset(rs_css, [1, 2], budget=10)


def test_qudit_distances_hermitian(herm_css):
    X, Z = logical_paulis(herm_css)
    mod = herm_css.field.modulus
    want_dx = brute_logical_weight(herm_css.z_stab.entries, Z.entries, mod)
    want_dz = brute_logical_weight(herm_css.H0.entries, X.entries, mod)
    assert (want_dx, want_dz) == (5, 1)
    assert qudit_distances(herm_css) == {"dx": 5, "dz": 1}
    assert herm_css.dz == 1


def test_dz_matches_shortened_dual_bound():
    # Hermitian(4, s) codes: computed dz respects the Riemann-Roch bound
    C = hermitian_code(4, 9)
    Q = build_css(C, 1, distance_budget=2**22)
    bound = ag_param_bounds(64, 6, 9).shortened_dual_d_bound(1)
    assert isinstance(Q.dz, int) and Q.dz >= bound


def test_distance_routes_agree(herm_css, rep_css):
    for Q in (herm_css, rep_css):
        X, Z = logical_paulis(Q)
        for checks, logicals in ((Q.z_stab, Z), (Q.H0, X)):
            a = logical_min_weight(checks, logicals, route="kernel")
            b = logical_min_weight(checks, logicals, route="syndrome")
            if a is not EXCEEDED and b is not EXCEEDED:
                assert a == b


def test_rs_qudit_distances_meet_bound(rs_css):
    assert qudit_distances(rs_css) == {"dx": 10, "dz": 4}
    assert rs_css.dx_bound == 10 and rs_css.dz == 4


def test_logical_min_weight_edge_cases(gf4):
    assert logical_min_weight(Mat.zeros(gf4, 0, 3), Mat.zeros(gf4, 0, 3)) == 0
    with pytest.raises(ValueError):
        logical_min_weight(Mat.identity(gf4, 3)[:1], Mat.identity(gf4, 3)[1:], route="nope")
    assert logical_min_weight(Mat.zeros(gf4, 0, 3), Mat.identity(gf4, 3), cap=2) is EXCEEDED


@given(st.integers(1, 5), st.integers(1, 5))
def test_rs_css_dx_bound_formula(k, K):
    F = make_field(4)
    if K > k:
        return
    Q = build_css(rs_code(F, k), K)
    assert Q.dx_bound == 16 - k + 1 - K
    assert Q.N == 16 - K and Q.H0.rows == k - K
    # rowspan(H0) is a shortened RS code, so its dual is MDS of distance k - K + 1
    assert Q.dz == k - K + 1
