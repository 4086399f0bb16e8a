"""Qudit CSS codes with transversal low-degree phase gates.

A classical code C = [n, k] with the multiplication property and the all-ones
word is brought to the block form

    [[1_K, H1],
     [0,   H0]]

by a column permutation; the qudit code on N = n - K coordinates has logical
basis states |u> = sum_{h in rowspan(H0)} |u H1 + h>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .codes import (
    DEFAULT_DISTANCE_BUDGET,
    EXCEEDED,
    Budget,
    LinearCode,
    contains_all_ones,
    min_distance,
    mult_property_witness,
)
from .errors import HypothesisError
from .field import FieldSpec
from .linalg import (
    Mat,
    combine_rows,
    nullspace,
    reduce_against,
    row_basis,
    rref,
    solve,
    span_elements,
)


@dataclass(frozen=True, eq=False)
class QuditCssCode:
    """CSS(rowspan(H1, H0), rowspan(H0)^perp) over GF(2^m).

    X-type stabilizers are the rows of H0, Z-type stabilizers a basis of the
    dual of rowspan(H1; H0).  ``col_perm`` lists the original coordinates of
    the source code: the first K are the removed identity block.
    """

    field: FieldSpec
    N: int
    K: int
    H1: Mat
    H0: Mat
    z_stab: Mat
    col_perm: tuple[int, ...] = ()
    dx_bound: int | Budget | None = None
    dz: int | Budget | None = None
    source: str = ""

    @classmethod
    def from_blocks(cls, H1: Mat, H0: Mat, **kwargs) -> QuditCssCode:
        if H1.cols != H0.cols and H0.rows:
            raise ValueError("H1 and H0 must have the same width")
        both = H1.vstack(H0)
        return cls(
            field=H1.field,
            N=H1.cols,
            K=H1.rows,
            H1=H1,
            H0=H0 if H0.rows else Mat.zeros(H1.field, 0, H1.cols),
            z_stab=nullspace(both),
            **kwargs,
        )

    @property
    def x_stab(self) -> Mat:
        return self.H0

    @property
    def k(self) -> int:
        """Dimension of the source classical code."""
        return self.K + self.H0.rows

    def generator(self) -> Mat:
        """(H1; H0), the rows r_1..r_k used by the triple identities."""
        return self.H1.vstack(self.H0)

    def __repr__(self) -> str:
        return f"[[{self.N},{self.K}]]_{self.field.q} from {self.source or '?'}"


def pivot_form(C: LinearCode, K: int) -> tuple[Mat, Mat, tuple[int, ...]]:
    """Split the rref of C's generator into (H1, H0) around its first K pivot columns."""
    if not 0 <= K <= C.k:
        raise ValueError(f"K must lie in [0, {C.k}], got {K}")
    if not contains_all_ones(C):
        raise HypothesisError(f"{C!r} does not contain the all-ones word")
    R, r, pivots = rref(C.gen)
    removed = pivots[:K]
    kept = [c for c in range(C.n) if c not in set(removed)]
    H1 = Mat(C.field, R.entries[:K][:, kept])
    H0 = Mat(C.field, R.entries[K:r][:, kept])
    return H1, H0, tuple(removed) + tuple(kept)


def build_css(
    C: LinearCode, K: int, distance_budget: int = DEFAULT_DISTANCE_BUDGET
) -> QuditCssCode:
    """The qudit code of C with K logical qudits, with its distance data.

    ``dx_bound`` is d(C) - K; ``dz`` is the exact distance of rowspan(H0)^perp.
    Either is ``EXCEEDED`` when the enumeration budget does not allow it.
    """
    if not 1 <= K <= C.k:
        raise HypothesisError(f"K must lie in [1, k={C.k}], got {K}")
    witness = mult_property_witness(C)
    if witness is not None:
        a, b, c = witness
        raise HypothesisError(
            f"multiplication property fails: |g_{a} * g_{b} * g_{c}| != 0 in {C!r}"
        )
    H1, H0, perm = pivot_form(C, K)

    d = min_distance(C, distance_budget)
    dx_bound = d - K if isinstance(d, int) else d
    shortened_dual = LinearCode(nullspace(H0) if H0.rows else Mat.identity(C.field, H0.cols))
    dz = min_distance(shortened_dual, distance_budget)
    return QuditCssCode.from_blocks(
        H1, H0, col_perm=perm, dx_bound=dx_bound, dz=dz, source=C.label
    )


def basis_state_coset(
    Q: QuditCssCode,
    u,
    *,
    budget: int = 2**20,
    samples: int = 1024,
    seed: int | None = None,
) -> np.ndarray:
    """Vectors u H1 + h for h in rowspan(H0).

    All q^(k-K) of them when that fits in ``budget``; otherwise ``samples``
    uniformly drawn members (``seed`` required).
    """
    u = np.asarray(u, dtype=np.int64)
    if u.shape != (Q.K,):
        raise ValueError(f"logical vector must have length {Q.K}")
    base = combine_rows(Q.H1, u)
    F = Q.field
    if F.q ** Q.H0.rows <= budget:
        return base[None, :] ^ span_elements(Q.H0)
    if seed is None:
        raise ValueError("coset exceeds the enumeration budget; pass a seed to sample it")
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(0, F.q, size=(samples, Q.H0.rows))
    return base[None, :] ^ combine_rows(Q.H0, coeffs)


def logical_paulis(Q: QuditCssCode) -> tuple[Mat, Mat]:
    """X-type representatives (rows of H1) and Z-type representatives z_a.

    z_a pairs to delta_ab with row b of H1 and to zero with every row of H0,
    so sum_i z_a,i (u H1 + h)_i = u_a.
    """
    F = Q.field
    target = np.zeros((Q.k, Q.K), dtype=np.int64)
    target[: Q.K] = np.eye(Q.K, dtype=np.int64)
    X = solve(Q.generator(), Mat(F, target))
    if X is None:
        raise HypothesisError("rows of (H1; H0) are not linearly independent")
    return Q.H1, X.T


# exact logical distances


def _min_weight_outside(inner: Mat, outer_extra: Mat, cap: int) -> int | Budget:
    """Least weight in span(outer_extra + inner) minus span(inner).

    ``outer_extra`` must be independent modulo ``inner``.  The q^dim elements
    are swept with a bounded table so memory stays small for long vectors.
    """
    F = inner.field
    n = inner.cols
    c, b = outer_extra.rows, inner.rows
    if F.q ** (c + b) > cap:
        return EXCEEDED
    rows = outer_extra.vstack(inner) if b else outer_extra
    dim = c + b
    # table of q^a elements with a*m bits per row of n entries kept under ~2^22 cells
    a = max(1, min(dim, int(math.log2(max(2, 2**22 // n)) // F.m)))
    table = span_elements(Mat(F, rows.entries[:a]))
    idx = np.arange(table.shape[0])
    ca = min(c, a)
    table_hits_c = idx % (F.q**ca) != 0  # table element carries an outer_extra part
    rest = Mat(F, rows.entries[a:]) if a < dim else Mat.zeros(F, 0, n)
    rest_c = max(0, c - a)
    best = n + 1
    for i, offset in enumerate(span_elements(rest)):
        weights = np.count_nonzero(table ^ offset, axis=1)
        if rest_c == 0 or i % (F.q**rest_c) == 0:
            weights = weights[table_hits_c]
        if weights.size:
            best = min(best, int(weights.min()))
        if best == 1:
            break
    return best


def _syndrome_bfs(checks: Mat, logicals: Mat, cap: int) -> int | Budget:
    """Breadth-first search over (logical | check) syndromes reached by weight-w errors."""
    F = checks.field if checks.rows else logicals.field
    m, l = F.m, logicals.rows
    stacked = logicals.vstack(checks) if checks.rows else logicals
    bits = m * stacked.rows
    if 2**bits > cap:
        return EXCEEDED
    shifts = (m * np.arange(stacked.rows, dtype=np.int64))[:, None]
    scalars = np.arange(1, F.q, dtype=np.int64)
    cols = F.mul(scalars[:, None, None], stacked.entries[None, :, :])  # (q-1, rows, n)
    gens = np.unique(np.bitwise_xor.reduce(cols << shifts[None], axis=1).ravel())
    gens = gens[gens != 0]
    logical_only = 1 << (m * l)
    seen = np.zeros(2**bits, dtype=bool)
    seen[0] = True
    frontier = np.zeros(1, dtype=np.int64)
    w = 0
    while frontier.size:
        w += 1
        nxt = np.unique((frontier[:, None] ^ gens[None, :]).ravel())
        nxt = nxt[~seen[nxt]]
        if np.any(nxt < logical_only):
            return w
        seen[nxt] = True
        frontier = nxt
    return 0  # no logical operator exists


def logical_min_weight(
    checks: Mat, logicals: Mat, cap: int = DEFAULT_DISTANCE_BUDGET, route: str = "auto"
) -> int | Budget:
    """Least weight of e with checks.e = 0 and logicals.e != 0.

    With checks the opposite-type stabilizers and logicals the opposite-type
    logical representatives this is the CSS distance for one error type.
    ``route`` picks kernel enumeration ("kernel"), syndrome search
    ("syndrome") or the cheaper of the two ("auto").  Returns 0 if there is
    no logical operator at all.
    """
    F = logicals.field
    if logicals.rows == 0:
        return 0
    checks = row_basis(checks) if checks.rows else Mat.zeros(F, 0, logicals.cols)
    n = logicals.cols
    kernel_dim = n - checks.rows
    syndrome_bits = F.m * (checks.rows + logicals.rows)
    if route == "auto":
        route = "kernel" if kernel_dim * F.m <= syndrome_bits else "syndrome"
    if route == "syndrome":
        return _syndrome_bfs(checks, logicals, cap)
    if route != "kernel":
        raise ValueError(f"unknown route {route!r}")
    if F.q**kernel_dim > cap:
        return EXCEEDED
    trivial = nullspace(checks.vstack(logicals))
    R, _, pivots = rref(trivial)
    kernel = nullspace(checks) if checks.rows else Mat.identity(F, n)
    reduced = reduce_against(R, pivots, kernel.entries)
    extra = row_basis(Mat(F, reduced))
    return _min_weight_outside(trivial, extra, cap)


def qudit_distances(Q: QuditCssCode, cap: int = DEFAULT_DISTANCE_BUDGET) -> dict:
    """Exact X and Z distances of the qudit code (minimum over logical operators)."""
    X, Z = logical_paulis(Q)
    dx = logical_min_weight(Q.z_stab, Z, cap)
    dz = logical_min_weight(Q.H0, X, cap)
    return {"dx": dx, "dz": dz}
