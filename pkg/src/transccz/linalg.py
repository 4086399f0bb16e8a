"""Dense exact linear algebra over GF(2) and GF(2^m).

Binary matrices are eliminated bit-packed (64 columns per word); extension
field matrices are eliminated with table-driven numpy arithmetic.  Every
routine uses the leftmost-pivot rule, so outputs are reproducible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .field import FieldBasis, FieldError, FieldSpec, make_field

GF2 = make_field(1)


@dataclass(frozen=True, eq=False)
class Mat:
    """A rows x cols matrix over a GF(2^m).

    ``entries`` holds element integers; the array is made read-only.
    """

    field: FieldSpec
    entries: np.ndarray

    def __post_init__(self) -> None:
        a = np.array(self.entries, dtype=np.int64)
        if a.ndim == 1:
            a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
        if a.ndim != 2:
            raise ValueError(f"matrix entries must be 2-dimensional, got shape {a.shape}")
        self.field.check_elements(a)
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def T(self) -> Mat:
        return Mat(self.field, self.entries.T)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.entries, other.entries)

    def __matmul__(self, other: Mat) -> Mat:
        return mat_mul(self, other)

    def __getitem__(self, key) -> Mat:
        sub = self.entries[key]
        if sub.ndim == 1:
            sub = sub.reshape(1, -1)
        return Mat(self.field, sub)

    def __repr__(self) -> str:
        return f"Mat({self.rows}x{self.cols} over {self.field})"

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> Mat:
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> Mat:
        return cls(field, np.eye(n, dtype=np.int64))

    def vstack(self, *others: Mat) -> Mat:
        for o in others:
            _same_field(self, o)
        parts = [self.entries] + [o.entries for o in others]
        parts = [p for p in parts if p.shape[0]]
        if not parts:
            return Mat.zeros(self.field, 0, self.cols)
        return Mat(self.field, np.vstack(parts))


def _same_field(a: Mat, b: Mat) -> None:
    if a.field != b.field:
        raise FieldError(f"mixed fields: {a.field} and {b.field}")


def binary(entries) -> Mat:
    """Wrap a 0/1 array as a matrix over GF(2)."""
    a = np.asarray(entries, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return Mat(GF2, a)


def mat_mul(a: Mat, b: Mat) -> Mat:
    _same_field(a, b)
    if a.cols != b.rows:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.field.m == 1:
        return Mat(a.field, (a.entries @ b.entries) & 1)
    out = np.zeros((a.rows, b.cols), dtype=np.int64)
    F = a.field
    for k in range(a.cols):
        col = a.entries[:, k]
        if not col.any():
            continue
        out ^= F.mul(col[:, None], b.entries[k][None, :])
    return Mat(F, out)


# bit-packed GF(2) elimination


def pack_rows(bits: np.ndarray) -> np.ndarray:
    """Pack a 0/1 matrix into little-endian uint64 words, 64 columns per word."""
    bits = np.asarray(bits, dtype=np.uint8)
    r, c = bits.shape
    words = max(1, (c + 63) // 64)
    padded = np.zeros((r, words * 64), dtype=np.uint8)
    padded[:, :c] = bits
    return np.packbits(padded, axis=1, bitorder="little").view("<u8").copy()


def unpack_rows(words: np.ndarray, cols: int) -> np.ndarray:
    words = np.ascontiguousarray(words, dtype="<u8")
    bits = np.unpackbits(words.view(np.uint8), axis=1, bitorder="little")
    return bits[:, :cols]


def _rref_gf2(bits: np.ndarray) -> tuple[np.ndarray, list[int]]:
    rows, cols = bits.shape
    W = pack_rows(bits)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        w, b = divmod(c, 64)
        sh = np.uint64(b)
        nz = np.flatnonzero((W[r:, w] >> sh) & np.uint64(1))
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            W[[r, p]] = W[[p, r]]
        hits = np.flatnonzero((W[:, w] >> sh) & np.uint64(1))
        hits = hits[hits != r]
        if hits.size:
            W[hits] ^= W[r]
        pivots.append(c)
        r += 1
    return unpack_rows(W, cols).astype(np.int64), pivots


def _rref_gf2m(F: FieldSpec, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    A = a.copy()
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        A[r] = F.mul(A[r], F.inv(A[r, c]))
        hits = np.flatnonzero(A[:, c])
        hits = hits[hits != r]
        if hits.size:
            A[hits] ^= F.mul(A[hits, c][:, None], A[r][None, :])
        pivots.append(c)
        r += 1
    return A, pivots


def rref(M: Mat) -> tuple[Mat, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns (leftmost-pivot rule).

    The returned matrix has the same shape as ``M`` with zero rows last.
    """
    if M.rows == 0 or M.cols == 0:
        return M, 0, []
    if M.field.m == 1:
        R, pivots = _rref_gf2(M.entries)
    else:
        R, pivots = _rref_gf2m(M.field, M.entries)
    return Mat(M.field, R), len(pivots), pivots


def rank(M: Mat) -> int:
    return rref(M)[1]


def row_basis(M: Mat) -> Mat:
    """The nonzero rows of the rref: a canonical basis of the row space."""
    R, r, _ = rref(M)
    return Mat(M.field, R.entries[:r]) if r else Mat.zeros(M.field, 0, M.cols)


def nullspace(M: Mat) -> Mat:
    """Basis (as rows) of {x : M x = 0}."""
    R, r, pivots = rref(M)
    free = [c for c in range(M.cols) if c not in set(pivots)]
    N = np.zeros((len(free), M.cols), dtype=np.int64)
    if free:
        N[np.arange(len(free)), free] = 1
        if r:
            # characteristic 2: -R = R
            N[:, pivots] = R.entries[:r][:, free].T
    return Mat(M.field, N)


def reduce_against(R: Mat, pivots: list[int], V: np.ndarray) -> np.ndarray:
    """Reduce each row of V modulo the row space of an rref matrix."""
    F = R.field
    V = np.array(V, dtype=np.int64, copy=True)
    if V.ndim == 1:
        V = V[None, :]
    for i, p in enumerate(pivots):
        coeff = V[:, p]
        if not coeff.any():
            continue
        if F.m == 1:
            V[coeff == 1] ^= R.entries[i]
        else:
            V ^= F.mul(coeff[:, None], R.entries[i][None, :])
    return V


def in_rowspace(M: Mat, v) -> bool | np.ndarray:
    """True iff v (or each row of a 2-d v) lies in the row span of M."""
    v = np.asarray(v, dtype=np.int64)
    if v.shape[-1] != M.cols:
        raise ValueError(f"vector width {v.shape[-1]} != matrix width {M.cols}")
    R, _, pivots = rref(M)
    residue = reduce_against(R, pivots, v)
    inside = ~residue.any(axis=1)
    return bool(inside[0]) if v.ndim == 1 else inside


def rowspace_contains(big: Mat, small: Mat) -> bool:
    if small.rows == 0:
        return True
    return bool(np.all(in_rowspace(big, small.entries)))


def rowspace_equal(a: Mat, b: Mat) -> bool:
    return rowspace_contains(a, b) and rowspace_contains(b, a)


def solve(M: Mat, B: Mat) -> Mat | None:
    """A particular X with M X = B (free variables zero), or None if inconsistent."""
    _same_field(M, B)
    if M.rows != B.rows:
        raise ValueError(f"row mismatch {M.shape} vs {B.shape}")
    aug = Mat(M.field, np.hstack([M.entries, B.entries]))
    R, r, pivots = rref(aug)
    if any(p >= M.cols for p in pivots):
        return None
    X = np.zeros((M.cols, B.cols), dtype=np.int64)
    X[pivots] = R.entries[:r, M.cols :]
    return Mat(M.field, X)


def inverse(M: Mat) -> Mat:
    if M.rows != M.cols:
        raise ValueError("only square matrices are invertible")
    X = solve(M, Mat.identity(M.field, M.rows))
    if X is None or rank(M) != M.rows:
        raise ValueError("matrix is singular")
    return X


def span_elements(M: Mat) -> np.ndarray:
    """All q^rows combinations of the rows of M.

    Row ``sum_i c_i q^i`` of the result is ``sum_i c_i M[i]``.
    """
    F = M.field
    out = np.zeros((1, M.cols), dtype=np.int64)
    scalars = np.arange(F.q, dtype=np.int64)
    for row in M.entries:
        multiples = F.mul(scalars[:, None], row[None, :])
        out = (multiples[:, None, :] ^ out[None, :, :]).reshape(-1, M.cols)
    return out


def combine_rows(M: Mat, coeffs) -> np.ndarray:
    """coeffs @ M for a batch of coefficient vectors (last axis = rows of M)."""
    coeffs = np.asarray(coeffs, dtype=np.int64)
    squeeze = coeffs.ndim == 1
    coeffs = np.atleast_2d(coeffs)
    out = np.zeros((coeffs.shape[0], M.cols), dtype=np.int64)
    F = M.field
    for i, row in enumerate(M.entries):
        c = coeffs[:, i]
        if F.m == 1:
            out[c == 1] ^= row
        else:
            out ^= F.mul(c[:, None], row[None, :])
    return out[0] if squeeze else out


def solve_change_of_basis(A: FieldBasis, B: FieldBasis) -> Mat:
    """Binary T with expand_B(x) = T . expand_A(x) for every x."""
    if A.field != B.field:
        raise FieldError(f"mixed fields: {A.field} and {B.field}")
    MA = binary(A.matrix().T)  # poly(x) = MA . expand_A(x)
    MB = binary(B.matrix().T)
    return inverse(MB) @ MA


# text format


def format_mat(M: Mat, comments: dict[str, str] | None = None) -> str:
    lines = [f"# {k}: {v}" for k, v in (comments or {}).items()]
    lines.append(f"mat {M.rows} {M.cols} {M.field}")
    for row in M.entries:
        lines.append(" ".join(format(int(x), "x") for x in row))
    return "\n".join(lines) + "\n"


_HEADER_RE = re.compile(r"^mat\s+(\d+)\s+(\d+)\s+(gf2m\s+.*)$")


def parse_mat(text: str) -> tuple[Mat, dict[str, str]]:
    """Parse the text produced by :func:`format_mat`; returns (matrix, comments)."""
    comments: dict[str, str] = {}
    header = None
    body: list[list[int]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            comments[key.strip()] = value.strip()
            continue
        if header is None:
            match = _HEADER_RE.match(line)
            if match is None:
                raise ValueError(f"bad matrix header: {line!r}")
            header = (int(match.group(1)), int(match.group(2)), FieldSpec.parse(match.group(3)))
            continue
        body.append([int(tok, 16) for tok in line.split()])
    if header is None:
        raise ValueError("missing matrix header")
    rows, cols, field = header
    if len(body) != rows or any(len(r) != cols for r in body):
        raise ValueError(f"matrix body does not match header {rows}x{cols}")
    entries = np.array(body, dtype=np.int64).reshape(rows, cols)
    return Mat(field, entries), comments


def stack_rows(field: FieldSpec, rows: Iterable, cols: int) -> Mat:
    rows = [np.asarray(r, dtype=np.int64) for r in rows]
    if not rows:
        return Mat.zeros(field, 0, cols)
    return Mat(field, np.vstack(rows))
