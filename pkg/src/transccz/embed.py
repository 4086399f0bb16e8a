"""Embeddings between GF(2^m) and bit vectors.

* self-dual bases and binary expansion of codes and qudit CSS codes,
* the degree-3 multiplication-friendly embedding (MFE) with r = m^3,
* reverse MFEs (RMFE): the trivial s = 1 instance and an exhaustive search.

Binary vectors are int64 arrays of 0/1.  Expanding a length-n vector gives
length n*m with coordinate t*m + b holding bit b of entry t.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codes import LinearCode
from .css import QuditCssCode, logical_paulis
from .field import FieldBasis, FieldSpec, make_field, pack_bits, unpack_bits
from .linalg import GF2, Mat, binary, rank, solve

# self-dual bases


def find_self_dual_basis(m: int) -> FieldBasis:
    """Deterministic orthonormal basis for (x, y) -> Tr(xy).

    Starting from the polynomial basis, repeatedly pick the first remaining
    vector of norm 1 and project it out of the rest.  When only norm-0
    vectors remain they come in hyperbolic pairs (u, w); such a pair and an
    already chosen e are replaced by e+u+w, e+u, e+w, which are orthonormal.
    """
    F = make_field(m)

    def B(x: int, y: int) -> int:
        return int(F.trace(F.mul(x, y)))

    chosen: list[int] = []
    remaining = [1 << i for i in range(m)]
    while remaining:
        idx = next((i for i, v in enumerate(remaining) if B(v, v)), None)
        if idx is not None:
            v = remaining.pop(idx)
            chosen.append(v)
            remaining = [w ^ (v if B(w, v) else 0) for w in remaining]
            continue
        if not chosen:
            raise AssertionError(f"trace form on GF(2^{m}) is alternating")
        u = remaining.pop(0)
        j = next((i for i, w in enumerate(remaining) if B(u, w)), None)
        if j is None:
            raise AssertionError("trace form is degenerate")
        w = remaining.pop(j)
        e = chosen.pop(0)
        chosen[:0] = [e ^ u ^ w, e ^ u, e ^ w]
        remaining = [x ^ (u if B(x, w) else 0) ^ (w if B(x, u) else 0) for x in remaining]
    basis = FieldBasis(F, tuple(chosen), "self-dual")
    return basis


def expand_vectors(basis: FieldBasis, V) -> np.ndarray:
    """Binary expansion of each row (last axis n -> n*m)."""
    V = np.asarray(V, dtype=np.int64)
    bits = basis.expand_array(V)
    return bits.reshape(*V.shape[:-1], V.shape[-1] * basis.field.m)


def collapse_vectors(basis: FieldBasis, bits) -> np.ndarray:
    """Inverse of expand_vectors."""
    bits = np.asarray(bits, dtype=np.int64)
    m = basis.field.m
    shaped = bits.reshape(*bits.shape[:-1], bits.shape[-1] // m, m)
    return basis.from_coords(pack_bits(shaped))


def expand_rows(basis: FieldBasis, M: Mat) -> Mat:
    """Rows B(alpha_j * M_i) at index i*m + j: the F2-span of the expansion of rowspan(M)."""
    F = basis.field
    alphas = np.array(basis.elements, dtype=np.int64)
    scaled = F.mul(alphas[None, :, None], M.entries[:, None, :])  # (rows, m, n)
    flat = scaled.reshape(M.rows * F.m, M.cols)
    return binary(expand_vectors(basis, flat)) if M.rows else Mat.zeros(GF2, 0, M.cols * F.m)


def expand_code(C: LinearCode, basis: FieldBasis) -> LinearCode:
    if basis.field != C.field:
        raise ValueError("basis is over a different field than the code")
    return LinearCode(expand_rows(basis, C.gen), f"B({C.label})")


def qubitize_css(Q: QuditCssCode, basis: FieldBasis):
    """Binary expansion of every stabilizer and logical operator of Q.

    Logical qubit (a, j) at index a*m + j is alpha_j times logical qudit a.
    """
    from .qubitize import QubitCssCode

    if basis.field != Q.field:
        raise ValueError("basis is over a different field than the code")
    if basis.kind != "self-dual":
        raise ValueError("qubitization needs a self-dual basis")
    X, Z = logical_paulis(Q)
    m = Q.field.m
    return QubitCssCode(
        N=Q.N * m,
        K=Q.K * m,
        x_stab=expand_rows(basis, Q.H0),
        z_stab=expand_rows(basis, Q.z_stab),
        logical_x=expand_rows(basis, X),
        logical_z=expand_rows(basis, Z),
        lineage="step1",
        register_size=m,
    )


# multiplication-friendly embedding


def _poly_bits(F: FieldSpec, values) -> np.ndarray:
    return unpack_bits(np.asarray(values, dtype=np.int64), F.m)


@dataclass(frozen=True, eq=False)
class Mfe:
    """sigma: r x m, psi: m x r (polynomial coordinates), pi2/pi3 gather maps.

    Permuted vectors are read as ``v[pi2]``; the identity is
    psi(sigma(x) * sigma(y)[pi2] * sigma(z)[pi3]) = xyz.
    """

    m: int
    r: int
    sigma: np.ndarray
    pi2: np.ndarray
    pi3: np.ndarray
    psi: np.ndarray

    @property
    def field(self) -> FieldSpec:
        return make_field(self.m)

    def embed(self, x) -> np.ndarray:
        """sigma applied to field elements (any shape; new trailing axis of length r)."""
        return (_poly_bits(self.field, x) @ self.sigma.T) & 1

    def unembed(self, v) -> np.ndarray:
        bits = (np.asarray(v, dtype=np.int64) @ self.psi.T) & 1
        return pack_bits(bits)

    def product(self, x, y, z) -> np.ndarray:
        sx, sy, sz = self.embed(x), self.embed(y), self.embed(z)
        return self.unembed(sx * sy[..., self.pi2] * sz[..., self.pi3])

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "r": self.r,
            "sigma": _hex_rows(self.sigma),
            "psi": _hex_rows(self.psi),
            "pi2": [int(i) for i in self.pi2],
            "pi3": [int(i) for i in self.pi3],
        }


def _hex_rows(M: np.ndarray) -> list[str]:
    return [hex(int(sum(int(b) << i for i, b in enumerate(row)))) for row in np.asarray(M)]


def mfe3(m: int) -> Mfe:
    """Slot (i, j, k) at index i*m^2 + j*m + k carries x_i, y_j, z_k after permuting."""
    F = make_field(m)
    r = m**3
    i, j, k = (a.ravel() for a in np.meshgrid(*(np.arange(m),) * 3, indexing="ij"))
    slots = np.arange(r)
    sigma = np.zeros((r, m), dtype=np.int64)
    sigma[slots, i] = 1
    pi2 = j * m * m + i * m + k
    pi3 = k * m * m + i * m + j
    psi = _poly_bits(F, _x_powers(F, i + j + k)).T
    return Mfe(m, r, sigma, pi2, pi3, np.ascontiguousarray(psi))


def _x_powers(F: FieldSpec, exps: np.ndarray) -> np.ndarray:
    """x^e reduced modulo the field polynomial (x the class of the variable)."""
    out = np.empty(len(exps), dtype=np.int64)
    cache = {0: 1}
    cur = 1
    for e in range(1, int(exps.max(initial=0)) + 1):
        cur <<= 1
        if cur >> F.m:
            cur ^= F.modulus
        cache[e] = cur
    for t, e in enumerate(exps):
        out[t] = cache[int(e)]
    return out


@dataclass
class EmbedVerdict:
    ok: bool
    checks: int
    mode: str
    witness: dict | None = None

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": self.checks, "mode": self.mode, "witness": self.witness}


def mfe_verify(
    mfe: Mfe, mode: str = "auto", *, trials: int = 100_000, seed: int = 0
) -> EmbedVerdict:
    """Compare mfe.product with field multiplication.

    ``auto`` is exhaustive for m <= 3 and seeded sampling otherwise.
    """
    F = mfe.field
    if mode == "auto":
        mode = "exhaustive" if mfe.m <= 3 else "sampled"
    if mode == "exhaustive":
        x, y, z = (a.ravel() for a in np.meshgrid(*(np.arange(F.q),) * 3, indexing="ij"))
    elif mode == "sampled":
        x, y, z = np.random.default_rng(seed).integers(0, F.q, size=(3, trials))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    got = mfe.product(x, y, z)
    want = F.mul(F.mul(x, y), z)
    bad = np.flatnonzero(got != want)
    if bad.size:
        t = int(bad[0])
        return EmbedVerdict(
            False, t + 1, mode,
            {"x": int(x[t]), "y": int(y[t]), "z": int(z[t]), "got": int(got[t]), "want": int(want[t])},
        )
    return EmbedVerdict(True, len(x), mode)


# reverse multiplication-friendly embedding


@dataclass(frozen=True, eq=False)
class Rmfe:
    """phi: m x s and psi: s x m over GF(2), in polynomial coordinates.

    psi(phi(x) phi(y) phi(z)) = x * y * z (componentwise) for x, y, z in F2^s.
    """

    s: int
    m: int
    phi: np.ndarray
    psi: np.ndarray

    @property
    def field(self) -> FieldSpec:
        return make_field(self.m)

    def embed(self, x) -> np.ndarray:
        """Bit vectors (trailing axis s) to field elements."""
        return pack_bits((np.asarray(x, dtype=np.int64) @ self.phi.T) & 1)

    def unembed(self, a) -> np.ndarray:
        """Field elements to bit vectors (new trailing axis s)."""
        return (_poly_bits(self.field, a) @ self.psi.T) & 1

    def to_json(self) -> dict:
        return {"s": self.s, "m": self.m, "phi": _hex_rows(self.phi), "psi": _hex_rows(self.psi)}


def rmfe_trivial(m: int) -> Rmfe:
    """s = 1: phi(b) = b * 1 and psi reads the constant coefficient."""
    if m < 1:
        raise ValueError("m must be positive")
    phi = np.zeros((m, 1), dtype=np.int64)
    phi[0, 0] = 1
    return Rmfe(1, m, phi, phi.T.copy())


def _all_bit_triples(s: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    vecs = unpack_bits(np.arange(2**s), s)
    i, j, k = (a.ravel() for a in np.meshgrid(*(np.arange(2**s),) * 3, indexing="ij"))
    return vecs[i], vecs[j], vecs[k]


def rmfe_verify(rmfe: Rmfe) -> EmbedVerdict:
    """Exhaustive check over all 2^(3s) bit triples."""
    F = rmfe.field
    x, y, z = _all_bit_triples(rmfe.s)
    prod = F.mul(F.mul(rmfe.embed(x), rmfe.embed(y)), rmfe.embed(z))
    got = rmfe.unembed(prod)
    want = x * y * z
    bad = np.flatnonzero(np.any(got != want, axis=1))
    if bad.size:
        t = int(bad[0])
        return EmbedVerdict(
            False, t + 1, "exhaustive",
            {"x": x[t].tolist(), "y": y[t].tolist(), "z": z[t].tolist(), "got": got[t].tolist()},
        )
    return EmbedVerdict(True, len(x), "exhaustive")


def _psi_for(phi: np.ndarray, s: int, m: int) -> np.ndarray | None:
    """The psi solving the triple system for this phi (free variables zero), or None."""
    F = make_field(m)
    x, y, z = _all_bit_triples(s)
    emb = lambda v: pack_bits((v @ phi.T) & 1)  # noqa: E731
    prod = F.mul(F.mul(emb(x), emb(y)), emb(z))
    A = binary(_poly_bits(F, prod))
    X = solve(A, binary(x * y * z))
    return None if X is None else X.entries.T.copy()


def rmfe_search(s: int, m: int, seed: int = 0, budget: int = 2**16) -> Rmfe | None:
    """First injective phi (by index, or in seeded random order) admitting a psi.

    Candidates are enumerated in index order when 2^(ms) <= budget and drawn
    from a seeded PRNG otherwise, so ``None`` proves non-existence only in
    the enumerated case.
    """
    if not (1 <= s <= 4 and 1 <= m <= 12):
        raise ValueError("search is limited to s <= 4 and m <= 12")
    if s > m:
        return None
    total = 2 ** (m * s)
    if total <= budget:
        candidates = range(total)
    else:
        rng = np.random.default_rng(seed)
        candidates = (int(c) for c in rng.integers(0, total, size=budget, dtype=np.int64))
    for c in candidates:
        phi = unpack_bits(np.array(c, dtype=np.int64), m * s).reshape(m, s)
        if rank(binary(phi)) < s:
            continue
        psi = _psi_for(phi, s, m)
        if psi is None:
            continue
        found = Rmfe(s, m, phi, psi)
        if not rmfe_verify(found).ok:
            raise AssertionError("solved psi failed the exhaustive check")
        return found
    return None


def rmfe_exhaustive(s: int, m: int, budget: int = 2**16) -> bool:
    """True when rmfe_search enumerated every phi (so a None result is conclusive)."""
    return 2 ** (m * s) <= budget
