"""Classical linear codes over GF(2^m).

Covers star products and the multiplication property, duals, puncturing and
shortening, exact minimum distance by enumeration, and the two explicit
evaluation-code families used downstream: full-length Reed-Solomon codes and
one-point Hermitian codes.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import FieldSpec, make_field
from .linalg import (
    Mat,
    in_rowspace,
    nullspace,
    rank,
    row_basis,
    rowspace_contains,
    rowspace_equal,
    span_elements,
)

DEFAULT_DISTANCE_BUDGET = 2**24


class Budget(enum.Enum):
    EXCEEDED = "exceeded"

    def __repr__(self) -> str:
        return "EXCEEDED"


EXCEEDED = Budget.EXCEEDED


@dataclass(frozen=True, eq=False)
class LinearCode:
    """A linear code given by a full-row-rank generator matrix."""

    gen: Mat
    label: str = ""

    def __post_init__(self) -> None:
        if self.gen.cols < 1:
            raise ValueError("a code needs length >= 1")
        if self.gen.rows and rank(self.gen) != self.gen.rows:
            raise ValueError(f"generator of {self.label or 'code'} is not full row rank")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows, label: str = "") -> LinearCode:
        rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
        return cls(row_basis(Mat(field, rows)), label)

    @property
    def field(self) -> FieldSpec:
        return self.gen.field

    @property
    def n(self) -> int:
        return self.gen.cols

    @property
    def k(self) -> int:
        return self.gen.rows

    def contains(self, v) -> bool | np.ndarray:
        return in_rowspace(self.gen, v)

    def same_code(self, other: LinearCode) -> bool:
        return self.n == other.n and rowspace_equal(self.gen, other.gen)

    def is_subcode_of(self, other: LinearCode) -> bool:
        return rowspace_contains(other.gen, self.gen)

    def codewords(self) -> np.ndarray:
        return span_elements(self.gen)

    def __repr__(self) -> str:
        name = self.label or "LinearCode"
        return f"{name}[{self.n},{self.k}]_{self.field.q}"


def star(field: FieldSpec, x, y) -> np.ndarray:
    """Componentwise product of two codewords."""
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if x.shape != y.shape:
        raise ValueError(f"length mismatch: {x.shape} vs {y.shape}")
    return field.mul(x, y)


def star_power_code(C: LinearCode, t: int) -> LinearCode:
    """Span of all t-fold star products of codewords of C."""
    if t < 2:
        raise ValueError("t must be at least 2")
    F, G = C.field, C.gen.entries
    products = []
    for idx in itertools.combinations_with_replacement(range(C.k), t):
        p = G[idx[0]]
        for i in idx[1:]:
            p = F.mul(p, G[i])
        products.append(p)
    if not products:
        return LinearCode(Mat.zeros(F, 0, C.n), f"{C.label}^*{t}")
    return LinearCode.from_rows(F, np.array(products), f"{C.label}^*{t}")


def dual(C: LinearCode) -> LinearCode:
    label = C.label[:-5] if C.label.endswith("^perp") else f"{C.label}^perp"
    return LinearCode(nullspace(C.gen), label)


def mult_property_witness(C: LinearCode) -> tuple[int, int, int] | None:
    """First generator triple (a <= b <= c) with sum_i g_a,i g_b,i g_c,i != 0, if any."""
    F, G = C.field, C.gen.entries
    for a in range(C.k):
        ab = F.mul(G[a][None, :], G[a:])  # rows b = a..k-1
        for j, row in enumerate(ab):
            b = a + j
            sums = F.dot(row[None, :], G[b:])
            bad = np.flatnonzero(sums)
            if bad.size:
                return (a, b, b + int(bad[0]))
    return None


def has_mult_property(C: LinearCode, t: int = 2) -> bool:
    """True iff C^{*t} is contained in the dual of C.

    For t = 2 the answer is cross-checked against the generator-triple
    criterion; disagreement is an internal error.
    """
    if t < 2:
        raise ValueError("t must be at least 2")
    power = star_power_code(C, t)
    subset = power.k == 0 or not (power.gen @ C.gen.T).entries.any()
    if t == 2:
        triple = mult_property_witness(C) is None
        if triple != subset:
            raise AssertionError(f"star-product criteria disagree on {C!r}")
    return subset


def contains_all_ones(C: LinearCode) -> bool:
    return bool(C.contains(np.ones(C.n, dtype=np.int64)))


# minimum distance


def _enumerate_min_weight(C: LinearCode) -> int:
    F, G = C.field, C.gen.entries
    k = C.k
    a = max(1, min(k, 16 // F.m))  # table of q^a <= 2^16 codewords
    table = span_elements(Mat(F, G[:a]))
    best = C.n + 1
    rest = Mat(F, G[a:]) if a < k else Mat.zeros(F, 0, C.n)
    for i, offset in enumerate(span_elements(rest)):
        weights = np.count_nonzero(table ^ offset, axis=1)
        if i == 0:
            weights = weights[1:]
        best = min(best, int(weights.min()))
        if best == 1:
            break
    return best


def _dependent_column_weight(H: Mat, budget: int) -> int | Budget:
    """Least w such that some w columns of H are linearly dependent."""
    n = H.cols
    if H.rows == 0:
        return 1
    spent = 0
    for w in range(1, min(n, H.rows + 1) + 1):
        spent += math.comb(n, w)
        if spent > budget:
            return EXCEEDED
        for cols in itertools.combinations(range(n), w):
            if rank(H[:, list(cols)]) < w:
                return w
    return n + 1  # unreachable for a nonzero code


def min_distance(C: LinearCode, cap: int = DEFAULT_DISTANCE_BUDGET) -> int | Budget:
    """Exact minimum nonzero weight, or ``EXCEEDED`` if the work budget is too small.

    Enumerates all q^k codewords when that fits in ``cap``; otherwise searches
    for the smallest linearly dependent column set of a parity-check matrix.
    """
    if C.k == 0:
        raise ValueError("the zero code has no minimum distance")
    if C.field.q**C.k <= cap:
        return _enumerate_min_weight(C)
    return _dependent_column_weight(dual(C).gen, cap // 64)


# puncturing and shortening


def _keep(n: int, cols) -> list[int]:
    drop = set(int(c) for c in cols)
    if not drop <= set(range(n)):
        raise ValueError(f"coordinates {sorted(drop)} out of range for length {n}")
    keep = [i for i in range(n) if i not in drop]
    if not keep:
        raise ValueError("no coordinates left after removal")
    return keep


def puncture(C: LinearCode, cols) -> LinearCode:
    keep = _keep(C.n, cols)
    return LinearCode(row_basis(C.gen[:, keep]), f"punct({C.label})")


def shorten(C: LinearCode, cols) -> LinearCode:
    """Codewords vanishing on ``cols``, with those coordinates removed."""
    keep = _keep(C.n, cols)
    cols = sorted(set(int(c) for c in cols))
    F = C.field
    if cols and C.k:
        # message combinations whose codeword is zero on cols
        msgs = nullspace(C.gen[:, cols].T)
        sub = (msgs @ C.gen) if msgs.rows else Mat.zeros(F, 0, C.n)
    else:
        sub = C.gen
    kept = row_basis(sub[:, keep]) if sub.rows else Mat.zeros(F, 0, len(keep))
    out = LinearCode(kept, f"short({C.label})")
    if not out.same_code(dual(puncture(dual(C), cols))):
        raise AssertionError("shortening is not dual to puncturing the dual")
    return out


# Reed-Solomon


def rs_code(field: FieldSpec, k: int) -> LinearCode:
    """Full-length RS code: evaluations of polynomials of degree < k at every field element."""
    if not 1 <= k <= field.q:
        raise ValueError(f"RS dimension must lie in [1, {field.q}], got {k}")
    points = np.arange(field.q, dtype=np.int64)
    rows = np.array([field.pow(points, j) for j in range(k)])
    return LinearCode(Mat(field, rows), f"rs(q={field.q},k={k})")


def rs_mult_window(q: int) -> int:
    """Largest k with 3k <= q + 1 (the RS multiplication-property range)."""
    return (q + 1) // 3


def rs_mult_code(field: FieldSpec) -> LinearCode:
    C = rs_code(field, rs_mult_window(field.q))
    if not has_mult_property(C):
        raise AssertionError(f"{C!r} lacks the multiplication property")
    return C


# one-point Hermitian codes


_HERMITIAN_FIELDS = {2: 2, 4: 4}


def hermitian_field(q0: int) -> FieldSpec:
    if q0 not in _HERMITIAN_FIELDS:
        raise ValueError(f"q0 must be one of {sorted(_HERMITIAN_FIELDS)}, got {q0}")
    return make_field(_HERMITIAN_FIELDS[q0])


def hermitian_genus(q0: int) -> int:
    return q0 * (q0 - 1) // 2


def hermitian_points(q0: int) -> np.ndarray:
    """Affine points (x, y) of y^q0 + y = x^(q0+1), lexicographic by (x, y)."""
    F = hermitian_field(q0)
    x, y = np.meshgrid(np.arange(F.q), np.arange(F.q), indexing="ij")
    x, y = x.ravel(), y.ravel()
    on_curve = (F.pow(y, q0) ^ y) == F.pow(x, q0 + 1)
    return np.stack([x[on_curve], y[on_curve]], axis=1)


def hermitian_monomials(q0: int, s: int) -> list[tuple[int, int]]:
    """Exponents (i, j) of x^i y^j with pole order i q0 + j (q0+1) <= s, j < q0, ordered by (j, i)."""
    out = []
    for j in range(q0):
        i = 0
        while i * q0 + j * (q0 + 1) <= s:
            out.append((i, j))
            i += 1
    return out


def hermitian_code(q0: int, s: int) -> LinearCode:
    F = hermitian_field(q0)
    n = q0**3
    if not 0 <= s < n:
        raise ValueError(f"pole order s must lie in [0, {n}), got {s}")
    pts = hermitian_points(q0)
    rows = [F.mul(F.pow(pts[:, 0], i), F.pow(pts[:, 1], j)) for i, j in hermitian_monomials(q0, s)]
    return LinearCode(Mat(F, np.array(rows)), f"hermitian(q0={q0},s={s})")


def hermitian_mult_window(q0: int) -> int:
    """Largest s with 3s <= n + 2g - 2."""
    return (q0**3 + 2 * hermitian_genus(q0) - 2) // 3


def hermitian_mult_code(q0: int) -> LinearCode:
    C = hermitian_code(q0, hermitian_mult_window(q0))
    if not has_mult_property(C):
        raise AssertionError(f"{C!r} lacks the multiplication property")
    return C


def hermitian_dual_degree(q0: int, s: int) -> int:
    """Pole order of the one-point dual: n + 2g - 2 - s."""
    return q0**3 + 2 * hermitian_genus(q0) - 2 - s


# Riemann-Roch parameter bounds


@dataclass(frozen=True)
class AgParams:
    n: int
    genus: int
    deg_g: int
    k_bound: int
    k_exact: bool
    d_bound: int
    dual_k: int
    dual_d_bound: int
    K: int = 0
    shortened_dual_d: int = dc_field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "shortened_dual_d", self.shortened_dual_d_bound(self.K))

    def shortened_dual_d_bound(self, K: int) -> int:
        """Lower bound on the dual distance of the K-shortened code (clamped at 0)."""
        return max(0, self.deg_g - K + 2 - 2 * self.genus)


def ag_param_bounds(n: int, genus: int, deg_g: int, K: int = 0) -> AgParams:
    """Riemann-Roch bounds for a one-point AG code of length n and divisor degree deg_g."""
    if deg_g >= n:
        raise ValueError(f"need deg(G) < n, got deg(G)={deg_g}, n={n}")
    return AgParams(
        n=n,
        genus=genus,
        deg_g=deg_g,
        k_bound=max(0, deg_g + 1 - genus),
        k_exact=deg_g >= 2 * genus - 1,
        d_bound=n - deg_g,
        dual_k=n + genus - 1 - deg_g,
        dual_d_bound=deg_g + 2 - 2 * genus,
        K=K,
    )
