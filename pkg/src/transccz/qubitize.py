"""From a qudit CSS code over GF(2^m) to a qubit CSS code with transversal CCZ.

Three steps, each producing a :class:`QubitCssCode`:

1. expand every qudit into m qubits in a self-dual basis;
2. fix each logical qudit to the image of an RMFE by adding Z stabilizers,
   leaving s logical qubits per block;
3. encode every m-qubit register into r = m^3 qubits through the MFE and
   read off the physical CCZ schedule from the mask P.

Qubit indices in the final code are ``register * r + slot``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .codes import DEFAULT_DISTANCE_BUDGET, Budget, LinearCode
from .css import QuditCssCode, build_css, logical_min_weight, qudit_distances
from .embed import (
    Mfe,
    Rmfe,
    expand_vectors,
    find_self_dual_basis,
    mfe3,
    qubitize_css,
    rmfe_search,
    rmfe_trivial,
)
from .errors import BudgetExceededError, HypothesisError
from .field import FieldBasis, polynomial_basis
from .linalg import Mat, binary, mat_mul, nullspace, rank, solve, solve_change_of_basis
from .transversal import PhaseGateSpec, Verdict


@dataclass(frozen=True, eq=False)
class QubitCssCode:
    """Binary CSS code with explicit logical representatives.

    ``register_size`` physical qubits form one register (the image of one
    qudit); logical qubits come in groups of ``logical_group`` per block.
    """

    N: int
    K: int
    x_stab: Mat
    z_stab: Mat
    logical_x: Mat
    logical_z: Mat
    lineage: str
    register_size: int = 1
    logical_group: int = 1

    def check(self) -> dict[str, bool]:
        """CSS orthogonality, logical pairing and the qubit count."""
        zero = lambda A, B: bool(  # noqa: E731
            A.rows == 0 or B.rows == 0 or not np.any(mat_mul(A, B.T).entries)
        )
        pairing = mat_mul(self.logical_x, self.logical_z.T).entries if self.K else np.zeros((0, 0))
        return {
            "css_orthogonal": zero(self.x_stab, self.z_stab),
            "logical_x_commutes": zero(self.z_stab, self.logical_x),
            "logical_z_commutes": zero(self.x_stab, self.logical_z),
            "logical_pairing": bool(np.array_equal(pairing, np.eye(self.K, dtype=np.int64))),
            "qubit_count": self.K == self.N - rank(self.x_stab) - rank(self.z_stab),
        }

    def __repr__(self) -> str:
        return f"[[{self.N},{self.K}]] ({self.lineage})"


@dataclass
class CczSchedule:
    """Physical CCZ gates across three code blocks of the final code."""

    triples: np.ndarray  # (T, 3) qubit indices into blocks 1, 2, 3
    provenance: list[tuple[int, int]]  # (register, slot) for each triple
    N3: int
    K3: int
    r: int
    mask: np.ndarray  # P in F2^r

    def __post_init__(self):
        self.triples = np.asarray(self.triples, dtype=np.int64).reshape(-1, 3)
        if self.triples.size and (self.triples.min() < 0 or self.triples.max() >= self.N3):
            raise ValueError("schedule index out of range")

    def __len__(self) -> int:
        return len(self.triples)

    def without(self, index: int) -> CczSchedule:
        keep = [t for t in range(len(self)) if t != index]
        return CczSchedule(
            self.triples[keep], [self.provenance[t] for t in keep], self.N3, self.K3, self.r, self.mask
        )

    def to_json(self) -> dict:
        return {
            "N3": self.N3,
            "K3": self.K3,
            "r": self.r,
            "layout": "qubit index = register * r + slot",
            "P": "".join(str(int(b)) for b in self.mask),
            "triples": self.triples.tolist(),
            "provenance": [{"register": g, "slot": i, "P": 1} for g, i in self.provenance],
        }


@dataclass
class PipelineResult:
    q0: QuditCssCode
    q1: QubitCssCode
    q2: QubitCssCode
    q3: QubitCssCode
    rmfe: Rmfe
    mfe: Mfe
    sdb: FieldBasis
    schedule: CczSchedule
    params: dict = dc_field(default_factory=dict)


def step1(q0: QuditCssCode, sdb: FieldBasis) -> QubitCssCode:
    """Expand the qudit code in a self-dual basis: [[N m, K m]]."""
    return qubitize_css(q0, sdb)


def _phi_selfdual(rmfe: Rmfe, sdb: FieldBasis) -> np.ndarray:
    """s x m matrix whose row l is B(phi(e_l)) in self-dual coordinates."""
    images = rmfe.embed(np.eye(rmfe.s, dtype=np.int64))
    return expand_vectors(sdb, images[:, None]).astype(np.int64)


def _blockwise(rows: np.ndarray, blocks: Mat, m: int) -> np.ndarray:
    """For each block a, the combinations rows @ blocks[a*m:(a+1)*m]."""
    groups = blocks.entries.reshape(-1, m, blocks.cols)
    return ((rows[None, :, :] @ groups) & 1).reshape(-1, blocks.cols)


def step2(q1: QubitCssCode, rmfe: Rmfe, sdb: FieldBasis) -> QubitCssCode:
    """Restrict each block of m logical qubits to B(Im phi): [[N m, K s]].

    The added Z stabilizers are sum_j w_j Zbar_{a,j} for w in a basis of the
    annihilator of B(Im phi).  Im phi is a subspace through 0, so every added
    stabilizer has sign +1.
    """
    m = q1.register_size
    if rmfe.m != m or sdb.field.m != m:
        raise HypothesisError(f"RMFE degree {rmfe.m} does not match the register size {m}")
    K0 = q1.K // m
    Bphi = _phi_selfdual(rmfe, sdb)
    W = nullspace(binary(Bphi)).entries  # (m - s) x m
    added = _blockwise(W, q1.logical_z, m) if W.size else np.zeros((0, q1.N), dtype=np.int64)
    # dual pairing Y Bphi^T = I picks the logical Z of each retained qubit
    Y = solve(binary(Bphi), binary(np.eye(rmfe.s, dtype=np.int64)))
    if Y is None:
        raise HypothesisError("phi is not injective")
    new_x = _blockwise(Bphi, q1.logical_x, m)
    new_z = _blockwise(Y.entries.T, q1.logical_z, m)
    out = QubitCssCode(
        N=q1.N,
        K=K0 * rmfe.s,
        x_stab=q1.x_stab,
        z_stab=q1.z_stab.vstack(binary(added)) if len(added) else q1.z_stab,
        logical_x=binary(new_x),
        logical_z=binary(new_z),
        lineage="step2",
        register_size=m,
        logical_group=rmfe.s,
    )
    if len(added) and np.any(mat_mul(out.logical_x, binary(added).T).entries):
        raise AssertionError("added stabilizers do not fix the RMFE image")
    return out


def f_from_rmfe(rmfe: Rmfe, basis: FieldBasis | None = None) -> PhaseGateSpec:
    """g = xyz with f(a) = parity of psi(a)."""
    F = rmfe.field
    basis = basis or polynomial_basis(F)
    # psi reads polynomial coordinates; re-express the mask if another basis is asked for
    mask_poly = np.bitwise_xor.reduce(rmfe.psi, axis=0) & 1
    if basis.kind != "polynomial":
        T = solve_change_of_basis(basis, polynomial_basis(F)).entries  # poly = T . other
        mask_bits = (mask_poly @ T) & 1
    else:
        mask_bits = mask_poly
    mask = int(sum(int(b) << i for i, b in enumerate(mask_bits)))
    return PhaseGateSpec(F, {(1, 1, 1): 1}, mask, basis)


def step3(
    q2: QubitCssCode, mfe: Mfe, sdb: FieldBasis, rmfe: Rmfe
) -> tuple[QubitCssCode, CczSchedule]:
    """Concatenate every register with the inner code Im(sigma') and build CCZ(P)."""
    m = q2.register_size
    if mfe.m != m or sdb.field.m != m or rmfe.m != m:
        raise HypothesisError("embedding degrees do not match the register size")
    r = mfe.r
    N0 = q2.N // m
    A = solve_change_of_basis(sdb, polynomial_basis(sdb.field)).entries  # poly = A . selfdual
    sigma_p = (mfe.sigma @ A) & 1  # r x m
    R = solve(binary(sigma_p.T), binary(np.eye(m, dtype=np.int64)))
    if R is None:
        raise HypothesisError("sigma is not injective")
    R = R.entries  # r x m with sigma'^T R = I
    inner = nullspace(binary(sigma_p.T)).entries  # (r - m) x r

    def map_x(M: Mat) -> Mat:
        v = M.entries.reshape(M.rows, N0, m)
        return binary(((v @ sigma_p.T) & 1).reshape(M.rows, N0 * r))

    def map_z(M: Mat) -> Mat:
        v = M.entries.reshape(M.rows, N0, m)
        return binary(((v @ R.T) & 1).reshape(M.rows, N0 * r))

    inner_all = np.zeros((N0 * inner.shape[0], N0 * r), dtype=np.int64)
    for g in range(N0):
        inner_all[g * inner.shape[0] : (g + 1) * inner.shape[0], g * r : (g + 1) * r] = inner
    z_outer = map_z(q2.z_stab)
    q3 = QubitCssCode(
        N=N0 * r,
        K=q2.K,
        x_stab=map_x(q2.x_stab),
        z_stab=z_outer.vstack(binary(inner_all)) if len(inner_all) else z_outer,
        logical_x=map_x(q2.logical_x),
        logical_z=map_z(q2.logical_z),
        lineage="step3",
        register_size=r,
        logical_group=q2.logical_group,
    )
    P = (rmfe.psi @ mfe.psi).sum(axis=0) & 1
    slots = np.flatnonzero(P)
    triples, prov = [], []
    for g in range(N0):
        for i in slots:
            triples.append((g * r + i, g * r + int(mfe.pi2[i]), g * r + int(mfe.pi3[i])))
            prov.append((g, int(i)))
    schedule = CczSchedule(np.array(triples, dtype=np.int64), prov, q3.N, q3.K, r, P)
    return q3, schedule


def resolve_rmfe(spec, m: int, seed: int = 0) -> Rmfe:
    """``"trivial"``, ``"search:<s>"``, ``("search", s)`` or an :class:`Rmfe`."""
    if isinstance(spec, Rmfe):
        return spec
    if spec == "trivial":
        return rmfe_trivial(m)
    if isinstance(spec, str) and spec.startswith("search:"):
        spec = ("search", int(spec.split(":", 1)[1]))
    if isinstance(spec, tuple) and spec[0] == "search":
        found = rmfe_search(int(spec[1]), m, seed=seed)
        if found is None:
            raise HypothesisError(f"no degree-3 RMFE with s={spec[1]} found for m={m}")
        return found
    raise ValueError(f"unknown RMFE mode {spec!r}")


def run_pipeline(
    C: LinearCode,
    K: int,
    rmfe="trivial",
    *,
    seed: int = 0,
    distance_budget: int = DEFAULT_DISTANCE_BUDGET,
) -> PipelineResult:
    """build_css -> step1 -> step2 -> step3 with every intermediate kept."""
    q0 = build_css(C, K, distance_budget)
    m = C.field.m
    sdb = find_self_dual_basis(m)
    rm = resolve_rmfe(rmfe, m, seed)
    mf = mfe3(m)
    q1 = step1(q0, sdb)
    q2 = step2(q1, rm, sdb)
    q3, schedule = step3(q2, mf, sdb, rm)
    params = {
        "N0": q0.N,
        "K0": q0.K,
        "m": m,
        "s": rm.s,
        "r": mf.r,
        "N1": q1.N,
        "K1": q1.K,
        "N2": q2.N,
        "K2": q2.K,
        "N3": q3.N,
        "K3": q3.K,
        "weight_P": int(schedule.mask.sum()),
        "triples": len(schedule),
        "dx_bound_q0": _jsonable(q0.dx_bound),
        "dz_q0": _jsonable(q0.dz),
    }
    if q3.N != q0.N * mf.r or q3.K != q0.K * rm.s:
        raise AssertionError("parameter arithmetic broken")
    return PipelineResult(q0, q1, q2, q3, rm, mf, sdb, schedule, params)


def _jsonable(x):
    return x.value if isinstance(x, Budget) else x


def _schedule_parity(schedule: CczSchedule, a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Parity of sum over triples of a[t0] b[t1] c[t2], for all combinations of the rows."""
    T = schedule.triples
    if not len(T):
        return np.zeros((len(a), len(b), len(c)), dtype=np.int64)
    A, B, Cc = a[:, T[:, 0]], b[:, T[:, 1]], c[:, T[:, 2]]
    out = np.empty((len(a), len(b), len(c)), dtype=np.int64)
    for i in range(len(a)):
        out[i] = ((A[i][None, :] * B) @ Cc.T) & 1
    return out


def _span_bits(M: Mat) -> np.ndarray:
    """All 2^rows binary combinations; row index = packed coefficient bits."""
    out = np.zeros((1, M.cols), dtype=np.int64)
    for row in M.entries:
        out = np.concatenate([out, out ^ row[None, :]])
    return out


def verify_pipeline(
    result: PipelineResult,
    mode: str = "exhaustive",
    *,
    trials: int = 100_000,
    seed: int | None = None,
    budget: int = 2**24,
    schedule: CczSchedule | None = None,
) -> Verdict:
    """Compare the schedule's physical CCZ parity with sum_j u_j v_j w_j.

    Logical basis states of the final code are u.LX + span(X stabilizers);
    ``exhaustive`` runs every logical triple against every coset triple.
    """
    q3 = result.q3
    sched = schedule if schedule is not None else result.schedule
    K3 = q3.K
    xs = q3.x_stab
    if mode == "exhaustive":
        gens = q3.logical_x.vstack(xs) if xs.rows else q3.logical_x
        M = 2**gens.rows
        if M**3 > budget:
            raise BudgetExceededError(f"{M}^3 phase checks exceed the budget {budget}")
        words = _span_bits(gens)
        logical = np.arange(M) % (2**K3)
        ubits = (logical[:, None] >> np.arange(K3)) & 1
        phys = _schedule_parity(sched, words, words, words)
        want = np.einsum("ai,bi,ci->abc", ubits, ubits, ubits) & 1
        bad = np.argwhere(phys != want)
        if bad.size:
            ia, ib, ic = (int(t) for t in bad[0])
            return Verdict(False, int(ia * M * M + ib * M + ic + 1), mode, _pipeline_witness(ubits, (ia, ib, ic), phys, want, K3))
        return Verdict(True, M**3, mode)
    if mode == "sampled":
        if seed is None:
            raise ValueError("sampled mode needs an explicit seed")
        rng = np.random.default_rng(seed)
        T = sched.triples
        done = 0
        while done < trials:
            t = min(2048, trials - done)
            u = rng.integers(0, 2, size=(3, t, K3))
            h = rng.integers(0, 2, size=(3, t, xs.rows))
            words = [
                ((u[j] @ q3.logical_x.entries) ^ (h[j] @ xs.entries if xs.rows else 0)) & 1
                for j in range(3)
            ]
            if len(T):
                phys = (words[0][:, T[:, 0]] * words[1][:, T[:, 1]] * words[2][:, T[:, 2]]).sum(axis=1) & 1
            else:
                phys = np.zeros(t, dtype=np.int64)
            want = (u[0] * u[1] * u[2]).sum(axis=1) & 1
            bad = np.flatnonzero(phys != want)
            if bad.size:
                i = int(bad[0])
                return Verdict(
                    False,
                    done + i + 1,
                    mode,
                    {
                        "u": u[0, i].tolist(), "v": u[1, i].tolist(), "w": u[2, i].tolist(),
                        "h": h[0, i].tolist(), "h'": h[1, i].tolist(), "h''": h[2, i].tolist(),
                        "physical": int(phys[i]), "logical": int(want[i]),
                    },
                )
            done += t
        return Verdict(True, trials, mode)
    raise ValueError(f"unknown mode {mode!r}")


def _pipeline_witness(ubits, idx, phys, want, K3) -> dict:
    ia, ib, ic = idx
    return {
        "u": ubits[ia].tolist(),
        "v": ubits[ib].tolist(),
        "w": ubits[ic].tolist(),
        "coset_index": [i >> K3 for i in idx],
        "physical": int(phys[ia, ib, ic]),
        "logical": int(want[ia, ib, ic]),
    }


def code_distances(q: QubitCssCode, budget: int = DEFAULT_DISTANCE_BUDGET, route: str = "auto") -> dict:
    """Exact dx (X-type logical weight) and dz, or ``exceeded``."""
    dx = logical_min_weight(q.z_stab, q.logical_z, budget, route)
    dz = logical_min_weight(q.x_stab, q.logical_x, budget, route)
    return {"dx": _jsonable(dx), "dz": _jsonable(dz)}


def q3_distance(result: PipelineResult, budget: int = DEFAULT_DISTANCE_BUDGET) -> dict:
    """Exact distances of the final code next to those of the qudit code.

    ``D3_ge_D0`` is True/False when every distance is known and
    ``"unverified-bound"`` otherwise.
    """
    d3 = code_distances(result.q3, budget)
    d0 = {k: _jsonable(v) for k, v in qudit_distances(result.q0, budget).items()}
    known = all(isinstance(v, int) for v in (*d3.values(), *d0.values()))
    out = {
        "dx": d3["dx"],
        "dz": d3["dz"],
        "D3": min(d3.values()) if known else None,
        "q0_dx": d0["dx"],
        "q0_dz": d0["dz"],
        "D0": min(d0.values()) if known else None,
        "q0_dx_bound": _jsonable(result.q0.dx_bound),
    }
    out["D3_ge_D0"] = (out["D3"] >= out["D0"]) if known else "unverified-bound"
    return out
