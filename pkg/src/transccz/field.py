"""Exact arithmetic in GF(2^m).

Elements are integers in ``[0, 2^m)`` whose bit ``i`` is the coefficient of
``x^i`` in the polynomial basis.  Scalar work goes through :class:`FieldElem`;
bulk work goes through the vectorized methods of :class:`FieldSpec`, which act
on integer numpy arrays and use log/antilog tables.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterator, Literal

import numpy as np

MAX_DEGREE = 16

# Least irreducible polynomial of each degree with nonzero constant term.
CANONICAL_MODULI: dict[int, int] = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11B,
    9: 0x203,
    10: 0x409,
    11: 0x805,
    12: 0x1009,
    13: 0x201B,
    14: 0x4021,
    15: 0x8003,
    16: 0x1002B,
}


class FieldError(ValueError):
    """Raised for invalid field parameters or mixed-field operations."""


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def polymod(a: int, modulus: int) -> int:
    deg = modulus.bit_length() - 1
    while a.bit_length() - 1 >= deg:
        a ^= modulus << (a.bit_length() - 1 - deg)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree <= deg/2."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(2, 1 << (deg // 2 + 1)):
        if polymod(poly, d) == 0:
            return False
    return True


@dataclass(frozen=True)
class _Tables:
    exp: np.ndarray
    log: np.ndarray
    trace: np.ndarray
    trace_mask: int
    generator: int


@functools.lru_cache(maxsize=None)
def _build_tables(m: int, modulus: int) -> _Tables:
    q = 1 << m
    order = q - 1

    def mulmod(a: int, b: int) -> int:
        return polymod(clmul(a, b), modulus)

    # smallest multiplicative generator; x itself need not be primitive
    for g in range(1 if m == 1 else 2, q):
        powers = [1]
        v = 1
        for _ in range(order - 1):
            v = mulmod(v, g)
            if v == 1:
                break
            powers.append(v)
        if len(powers) == order:
            break
    else:  # pragma: no cover - a finite field always has a generator
        raise FieldError(f"no generator found for modulus {modulus:#x}")

    exp = np.array(powers + powers, dtype=np.int64)
    log = np.zeros(q, dtype=np.int64)
    log[exp[:order]] = np.arange(order)

    mask = 0
    for i in range(m):
        t = _trace_by_frobenius(1 << i, m, mulmod)
        if t not in (0, 1):
            raise FieldError(f"trace of x^{i} left GF(2): {t:#x}")
        mask |= t << i
    values = np.arange(q, dtype=np.int64)
    trace = (np.bitwise_count(values & mask) & 1).astype(np.int64)
    exp.setflags(write=False)
    log.setflags(write=False)
    trace.setflags(write=False)
    return _Tables(exp=exp, log=log, trace=trace, trace_mask=mask, generator=g)


def _trace_by_frobenius(x: int, m: int, mulmod) -> int:
    total, power = 0, x
    for _ in range(m):
        total ^= power
        power = mulmod(power, power)
    return total


_SPEC_RE = re.compile(r"^\s*gf2m\s+m=(\d+)\s+poly=0x([0-9a-fA-F]+)\s*$")


@dataclass(frozen=True)
class FieldSpec:
    """The field GF(2^m) = GF(2)[x] / (modulus)."""

    m: int
    modulus: int

    def __post_init__(self) -> None:
        if not 1 <= self.m <= MAX_DEGREE:
            raise FieldError(f"extension degree must lie in [1, {MAX_DEGREE}], got {self.m}")
        if self.modulus.bit_length() - 1 != self.m:
            raise FieldError(f"modulus {self.modulus:#x} does not have degree {self.m}")
        if not is_irreducible(self.modulus):
            raise FieldError(f"modulus {self.modulus:#x} is reducible")

    @property
    def q(self) -> int:
        return 1 << self.m

    @property
    def _t(self) -> _Tables:
        return _build_tables(self.m, self.modulus)

    @property
    def generator(self) -> int:
        """Smallest primitive element (as an integer)."""
        return self._t.generator

    @property
    def trace_mask(self) -> int:
        """Bit ``i`` is ``Tr(x^i)``, so ``Tr(a) = parity(a & trace_mask)``."""
        return self._t.trace_mask

    def __str__(self) -> str:
        return f"gf2m m={self.m} poly={self.modulus:#x}"

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        match = _SPEC_RE.match(text)
        if match is None:
            raise FieldError(f"not a field spec: {text!r}")
        return cls(int(match.group(1)), int(match.group(2), 16))

    def __call__(self, bits: int) -> FieldElem:
        return FieldElem(int(bits), self)

    def elements(self) -> Iterator[FieldElem]:
        for b in range(self.q):
            yield FieldElem(b, self)

    @property
    def zero(self) -> FieldElem:
        return FieldElem(0, self)

    @property
    def one(self) -> FieldElem:
        return FieldElem(1, self)

    # vectorized arithmetic on integer arrays

    def add(self, a, b) -> np.ndarray:
        return np.bitwise_xor(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        t = self._t
        out = t.exp[t.log[a] + t.log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in GF(2^m)")
        t = self._t
        return t.exp[(self.q - 1 - t.log[a]) % (self.q - 1)]

    def pow(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            return self.pow(self.inv(a), -e)
        if e == 0:
            return np.ones_like(a)
        t = self._t
        out = t.exp[(t.log[a] * e) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def trace(self, a) -> np.ndarray:
        return self._t.trace[np.asarray(a, dtype=np.int64)]

    def dot(self, a, b, axis: int = -1) -> np.ndarray:
        """Field inner product sum_i a_i b_i along ``axis``."""
        return np.bitwise_xor.reduce(self.mul(a, b), axis=axis)

    def check_elements(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if a.size and (a.min() < 0 or a.max() >= self.q):
            raise FieldError(f"entries out of range for {self}")
        return a


@functools.lru_cache(maxsize=None)
def make_field(m: int) -> FieldSpec:
    """Canonical GF(2^m) using the compiled-in modulus table."""
    if m not in CANONICAL_MODULI:
        raise FieldError(f"extension degree must lie in [1, {MAX_DEGREE}], got {m}")
    return FieldSpec(m, CANONICAL_MODULI[m])


@dataclass(frozen=True, slots=True)
class FieldElem:
    """A single element of GF(2^m)."""

    bits: int
    field: FieldSpec

    def __post_init__(self) -> None:
        if not 0 <= self.bits < self.field.q:
            raise FieldError(f"{self.bits:#x} is not an element of {self.field}")

    def _other(self, other: FieldElem | int) -> int:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldError(f"mixed fields: {self.field} and {other.field}")
            return other.bits
        if isinstance(other, (int, np.integer)) and 0 <= other < self.field.q:
            return int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElem(self.bits ^ b, self.field)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self) -> FieldElem:
        return self

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElem(int(self.field.mul(self.bits, b)), self.field)

    __rmul__ = __mul__

    def inverse(self) -> FieldElem:
        return FieldElem(int(self.field.inv(self.bits)), self.field)

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return NotImplemented
        return self * FieldElem(b, self.field).inverse()

    def __pow__(self, e: int) -> FieldElem:
        return FieldElem(int(self.field.pow(self.bits, e)), self.field)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __int__(self) -> int:
        return self.bits

    def __index__(self) -> int:
        return self.bits

    def trace(self) -> int:
        """Absolute trace x + x^2 + x^4 + ... + x^(2^(m-1)), which lies in {0, 1}."""
        total, power = self.field.zero, self
        for _ in range(self.field.m):
            total = total + power
            power = power * power
        if total.bits not in (0, 1):
            raise FieldError(f"trace left GF(2): {total.bits:#x}")
        return total.bits

    def __repr__(self) -> str:
        return f"{self.bits:#x}"


def add(x: FieldElem, y: FieldElem) -> FieldElem:
    return x + y


def mul(x: FieldElem, y: FieldElem) -> FieldElem:
    return x * y


def inv(x: FieldElem) -> FieldElem:
    return x.inverse()


def power(x: FieldElem, e: int) -> FieldElem:
    return x**e


def trace(x: FieldElem) -> int:
    return x.trace()


def unpack_bits(values, m: int) -> np.ndarray:
    """Little-endian bit expansion along a new trailing axis of length m."""
    values = np.asarray(values, dtype=np.int64)
    return ((values[..., None] >> np.arange(m)) & 1).astype(np.uint8)


def pack_bits(bits) -> np.ndarray:
    """Inverse of :func:`unpack_bits` over the trailing axis."""
    bits = np.asarray(bits, dtype=np.int64)
    return (bits << np.arange(bits.shape[-1])).sum(axis=-1)


BasisKind = Literal["polynomial", "self-dual", "other"]


@dataclass(frozen=True, eq=False)
class FieldBasis:
    """An ordered GF(2)-basis of GF(2^m).

    ``expand`` maps a field element to its coordinate vector and ``combine``
    maps coordinates back.  Both are table lookups.
    """

    field: FieldSpec
    elements: tuple[int, ...]
    kind: BasisKind = "other"

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(int(e) for e in self.elements))
        if len(self.elements) != self.field.m:
            raise FieldError(f"a basis of {self.field} needs {self.field.m} elements")
        combine = np.zeros(1, dtype=np.int64)
        for e in self.elements:
            combine = np.concatenate([combine, combine ^ e])
        expand = np.full(self.field.q, -1, dtype=np.int64)
        expand[combine] = np.arange(self.field.q)
        if np.any(expand < 0):
            raise FieldError("basis elements are linearly dependent over GF(2)")
        combine.setflags(write=False)
        expand.setflags(write=False)
        object.__setattr__(self, "_combine", combine)
        object.__setattr__(self, "_expand", expand)
        if self.kind == "self-dual" and not np.array_equal(self.trace_gram(), np.eye(self.field.m)):
            raise FieldError("basis is not self-dual")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldBasis):
            return NotImplemented
        return self.field == other.field and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.field, self.elements))

    def trace_gram(self) -> np.ndarray:
        """Matrix of Tr(a_i a_j)."""
        e = np.array(self.elements, dtype=np.int64)
        return self.field.trace(self.field.mul(e[:, None], e[None, :])).astype(np.uint8)

    def expand(self, x: FieldElem | int) -> np.ndarray:
        if isinstance(x, FieldElem) and x.field != self.field:
            raise FieldError(f"mixed fields: {self.field} and {x.field}")
        return unpack_bits(self._expand[int(x)], self.field.m)

    def combine(self, v) -> FieldElem:
        v = np.asarray(v)
        if v.shape != (self.field.m,):
            raise FieldError(f"expected a length-{self.field.m} bit vector, got shape {v.shape}")
        return FieldElem(int(self._combine[int(pack_bits(v & 1))]), self.field)

    def coords(self, values) -> np.ndarray:
        """Packed coordinates: bit j of the result is the coefficient of element j."""
        return self._expand[np.asarray(values, dtype=np.int64)]

    def from_coords(self, packed) -> np.ndarray:
        return self._combine[np.asarray(packed, dtype=np.int64)]

    def expand_array(self, values) -> np.ndarray:
        """Expand every entry of an integer array into m bits (new trailing axis)."""
        return unpack_bits(self.coords(values), self.field.m)

    def matrix(self) -> np.ndarray:
        """m x m GF(2) matrix whose row i is the polynomial-basis bits of element i."""
        return unpack_bits(np.array(self.elements), self.field.m)


def polynomial_basis(field: FieldSpec) -> FieldBasis:
    return FieldBasis(field, tuple(1 << i for i in range(field.m)), "polynomial")


def expand(basis: FieldBasis, x: FieldElem | int) -> np.ndarray:
    return basis.expand(x)


def combine(basis: FieldBasis, v) -> FieldElem:
    return basis.combine(v)
