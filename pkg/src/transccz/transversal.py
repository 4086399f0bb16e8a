"""Diagonal low-degree phase gates and their transversal action on qudit CSS codes.

A gate U_{f,g} multiplies |x, y, z> by (-1)^{f(g(x, y, z))}, with g a
polynomial of total degree at most 3 over GF(2^m) and f an F2-linear
functional.  Everything here works at the level of phase bits on
computational basis states, which is exact for diagonal gates acting on
uniform coset superpositions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

import numpy as np

from .css import QuditCssCode
from .errors import BudgetExceededError
from .field import FieldBasis, FieldSpec, polynomial_basis
from .linalg import Mat, combine_rows, span_elements

DEFAULT_VERIFY_BUDGET = 2**24
DEFAULT_TRIALS = 100_000


def _parity(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    out = np.zeros_like(x)
    while np.any(x):
        out ^= x & 1
        x = x >> 1
    return out


@dataclass(frozen=True, eq=False)
class PhaseGateSpec:
    """g = sum coeff * x^e1 y^e2 z^e3 and f(a) = parity(f_mask & expand(a)).

    ``basis`` fixes the coordinates in which ``f_mask`` is read.
    """

    field: FieldSpec
    monomials: dict[tuple[int, int, int], int]
    f_mask: int
    basis: FieldBasis = None  # type: ignore[assignment]
    _f_table: np.ndarray = dc_field(init=False, repr=False)

    def __post_init__(self):
        if self.basis is None:
            object.__setattr__(self, "basis", polynomial_basis(self.field))
        if self.basis.field != self.field:
            raise ValueError("basis and gate use different fields")
        clean = {}
        for e, c in self.monomials.items():
            e = tuple(int(x) for x in e)
            if len(e) != 3 or min(e) < 0 or sum(e) > 3:
                raise ValueError(f"monomial exponents {e} must be 3 non-negative ints of total degree <= 3")
            self.field.check_elements(c)
            if c:
                clean[e] = clean.get(e, 0) ^ int(c)
        object.__setattr__(self, "monomials", {e: c for e, c in sorted(clean.items()) if c})
        if not 0 <= self.f_mask < 2**self.field.m:
            raise ValueError(f"f_mask must have at most {self.field.m} bits")
        packed = self.basis.coords(np.arange(self.field.q))
        object.__setattr__(self, "_f_table", _parity(packed & self.f_mask))

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.monomials), default=0)

    def f(self, a) -> np.ndarray:
        return self._f_table[np.asarray(a, dtype=np.int64)]

    def g(self, x, y, z) -> np.ndarray:
        F = self.field
        x, y, z = np.broadcast_arrays(*(np.asarray(t, dtype=np.int64) for t in (x, y, z)))
        out = np.zeros(x.shape, dtype=np.int64)
        for (e1, e2, e3), c in self.monomials.items():
            term = F.mul(F.mul(F.pow(x, e1), F.pow(y, e2)), F.pow(z, e3))
            out ^= F.mul(c, term)
        return out

    def with_mask(self, f_mask: int) -> PhaseGateSpec:
        return PhaseGateSpec(self.field, dict(self.monomials), f_mask, self.basis)

    def to_json(self) -> dict:
        kind = "selfdual" if self.basis.kind == "self-dual" else "polynomial"
        return {
            "monomials": [{"e": list(e), "coeff": hex(c)} for e, c in self.monomials.items()],
            "f_mask": hex(self.f_mask),
            "basis": kind,
        }

    @classmethod
    def from_json(cls, field: FieldSpec, data: dict | str) -> PhaseGateSpec:
        if isinstance(data, str):
            data = json.loads(data)
        kind = data.get("basis", "polynomial")
        if kind == "polynomial":
            basis = polynomial_basis(field)
        elif kind == "selfdual":
            from .embed import find_self_dual_basis

            basis = find_self_dual_basis(field.m)
        else:
            raise ValueError(f"unknown basis {kind!r}")
        monomials: dict[tuple[int, int, int], int] = {}
        for mono in data["monomials"]:
            e = tuple(int(x) for x in mono["e"])
            monomials[e] = monomials.get(e, 0) ^ int(str(mono["coeff"]), 0)
        return cls(field, monomials, int(str(data["f_mask"]), 0), basis)


def ccz_spec(field: FieldSpec) -> PhaseGateSpec:
    """g = xyz with f = trace (trace mask in the polynomial basis)."""
    return PhaseGateSpec(field, {(1, 1, 1): 1}, field.trace_mask)


def physical_phase(spec: PhaseGateSpec, a, b, c) -> np.ndarray | int:
    """sum_i f(g(a_i, b_i, c_i)) mod 2 over the last axis."""
    a, b, c = (np.asarray(t, dtype=np.int64) for t in (a, b, c))
    if not a.shape[-1:] == b.shape[-1:] == c.shape[-1:]:
        raise ValueError(f"length mismatch: {a.shape}, {b.shape}, {c.shape}")
    out = spec.f(spec.g(a, b, c)).sum(axis=-1) & 1
    return int(out) if np.ndim(out) == 0 else out


logical_phase = physical_phase


@dataclass
class Verdict:
    ok: bool
    checks: int
    mode: str
    witness: dict | None = None

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": self.checks, "mode": self.mode, "witness": self.witness}


def _witness(Q: QuditCssCode, coeffs: list[np.ndarray], words: list[np.ndarray], phys: int, logi: int) -> dict:
    K = Q.K
    out: dict = {}
    for name, hname, c, w in zip("uvw", ("h", "h'", "h''"), coeffs, words):
        out[name] = [int(x) for x in c[:K]]
        out[hname] = [int(x) for x in c[K:]]
        out[f"{name}_word"] = [int(x) for x in w]
    out["physical"] = int(phys)
    out["logical"] = int(logi)
    return out


def _digits(index: int, q: int, length: int) -> np.ndarray:
    return np.array([(index // q**i) % q for i in range(length)], dtype=np.int64)


def verify_transversal(
    Q: QuditCssCode,
    spec: PhaseGateSpec,
    mode: str = "exhaustive",
    *,
    trials: int = DEFAULT_TRIALS,
    seed: int | None = None,
    budget: int = DEFAULT_VERIFY_BUDGET,
) -> Verdict:
    """Check physical_phase(uH1+h, vH1+h', wH1+h'') == logical_phase(u, v, w).

    ``exhaustive`` runs every logical triple against every coset triple;
    ``sampled`` draws ``trials`` such tuples from a PRNG seeded by ``seed``.
    """
    if spec.field != Q.field:
        raise ValueError("gate and code use different fields")
    F, K, k = Q.field, Q.K, Q.k
    G = Q.generator()
    if mode == "exhaustive":
        M = F.q**k
        if M**3 > budget:
            raise BudgetExceededError(f"{M}^3 phase checks exceed the budget {budget}")
        words = span_elements(G)  # index u + q^K * h, digits = coefficients
        logical_idx = np.arange(M) % F.q**K
        logicals = span_elements(Mat.identity(F, K))
        # logical phase for every (u, v, w) as a q^K cube
        lu = logicals[:, None, None, :]
        lv = logicals[None, :, None, :]
        lw = logicals[None, None, :, :]
        expected = physical_phase(spec, lu, lv, lw)
        bc_b = words[:, None, :]
        bc_c = words[None, :, :]
        for ia in range(M):
            phys = physical_phase(spec, words[ia][None, None, :], bc_b, bc_c)
            want = expected[logical_idx[ia]][np.ix_(logical_idx, logical_idx)]
            bad = np.argwhere(phys != want)
            if bad.size:
                ib, ic = (int(t) for t in bad[0])
                coeffs = [_digits(i, F.q, k) for i in (ia, ib, ic)]
                return Verdict(
                    False,
                    ia * M * M + ib * M + ic + 1,
                    mode,
                    _witness(Q, coeffs, [words[i] for i in (ia, ib, ic)], phys[ib, ic], want[ib, ic]),
                )
        return Verdict(True, M**3, mode)
    if mode == "sampled":
        if seed is None:
            raise ValueError("sampled mode needs an explicit seed")
        rng = np.random.default_rng(seed)
        done = 0
        batch = 4096
        while done < trials:
            t = min(batch, trials - done)
            coeffs = rng.integers(0, F.q, size=(3, t, k))
            words = [combine_rows(G, coeffs[j]) for j in range(3)]
            phys = physical_phase(spec, *words)
            want = physical_phase(spec, *(coeffs[j][:, :K] for j in range(3)))
            bad = np.flatnonzero(phys != want)
            if bad.size:
                i = int(bad[0])
                return Verdict(
                    False,
                    done + i + 1,
                    mode,
                    _witness(Q, [coeffs[j][i] for j in range(3)], [w[i] for w in words], phys[i], want[i]),
                )
            done += t
        return Verdict(True, trials, mode)
    raise ValueError(f"unknown mode {mode!r}")


@dataclass
class TripleReport:
    """Violations of the three row identities of (H1; H0); rows 0..K-1 are H1."""

    eq3: list[tuple[int, int, int]]
    eq4: list[tuple[int, int]]
    eq5: list[int]

    @property
    def ok(self) -> bool:
        return not (self.eq3 or self.eq4 or self.eq5)

    def to_json(self) -> dict:
        return {
            "eq3": {"ok": not self.eq3, "violations": [list(t) for t in self.eq3]},
            "eq4": {"ok": not self.eq4, "violations": [list(t) for t in self.eq4]},
            "eq5": {"ok": not self.eq5, "violations": list(self.eq5)},
        }


def check_triple_conditions(H1: Mat, H0: Mat) -> TripleReport:
    """Compare |r_a * r_b * r_c|, |r_a * r_b| and |r_a| with their H1 indicators.

    All k^3 ordered triples are evaluated; violations are reported once per
    sorted index tuple.
    """
    F = H1.field
    R = H1.vstack(H0) if H0.rows else H1
    K, k = H1.rows, R.rows
    E = R.entries
    pair = F.mul(E[:, None, :], E[None, :, :])  # (k, k, N)
    triple = np.bitwise_xor.reduce(F.mul(pair[:, :, None, :], E[None, None, :, :]), axis=-1)
    pair_sum = np.bitwise_xor.reduce(pair, axis=-1)
    single = np.bitwise_xor.reduce(E, axis=-1)
    in_h1 = np.arange(k) < K

    want3 = np.zeros((k, k, k), dtype=np.int64)
    want3[np.arange(K), np.arange(K), np.arange(K)] = 1
    want2 = np.diag(in_h1.astype(np.int64))
    want1 = in_h1.astype(np.int64)

    eq3 = sorted({tuple(sorted(int(i) for i in t)) for t in np.argwhere(triple != want3)})
    eq4 = sorted({tuple(sorted(int(i) for i in t)) for t in np.argwhere(pair_sum != want2)})
    eq5 = [int(i) for i in np.flatnonzero(single != want1)]
    return TripleReport(eq3, eq4, eq5)
