"""Dense matrices over F2 and F2 + uF2.

``BinaryMatrix`` packs each row into uint64 words (column j lives in word
j // 64, bit j % 64).  ``RingMatrix`` keeps two 0/1 planes, the residue
plane ``a`` and the u-plane ``b``, so that residue reduction and the Gray
map are plane operations.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from borderedsd import _kernels
from borderedsd.alphabet import RingElement, RingId, RingMismatch, format_vector, parse_vector


def _nwords(ncols: int) -> int:
    return max(1, (ncols + 63) // 64)


def pack_bits(bits) -> np.ndarray:
    bits = np.atleast_2d(np.asarray(bits, dtype=np.uint8) & 1)
    nrows, ncols = bits.shape
    nw = _nwords(ncols)
    padded = np.zeros((nrows, nw * 64), dtype=np.uint8)
    padded[:, :ncols] = bits
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64).reshape(nrows, nw)


def unpack_bits(data: np.ndarray, ncols: int) -> np.ndarray:
    nrows = data.shape[0]
    if nrows == 0:
        return np.zeros((0, ncols), np.uint8)
    raw = np.ascontiguousarray(data.astype("<u8")).view(np.uint8).reshape(nrows, -1)
    return np.unpackbits(raw, axis=1, bitorder="little")[:, :ncols]


class BinaryMatrix:
    """Immutable bit-packed matrix over F2."""

    __slots__ = ("_data", "ncols")

    def __init__(self, data: np.ndarray, ncols: int):
        data = np.array(data, dtype=np.uint64, copy=True).reshape(-1, _nwords(ncols))
        tail = ncols % 64
        if tail:
            data[:, -1] &= np.uint64((1 << tail) - 1)
        data.flags.writeable = False
        self._data = data
        self.ncols = ncols

    @classmethod
    def from_bits(cls, bits) -> "BinaryMatrix":
        bits = np.asarray(bits, dtype=np.uint8)
        if bits.ndim == 1:
            bits = bits.reshape(1, -1)
        return cls(pack_bits(bits), bits.shape[1])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BinaryMatrix":
        return cls(np.zeros((nrows, _nwords(ncols)), np.uint64), ncols)

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls.from_bits(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_strings(cls, rows: Iterable[str], ncols: int | None = None) -> "BinaryMatrix":
        rows = [r.strip() for r in rows]
        if not rows:
            return cls.zeros(0, ncols or 0)
        return cls.from_bits([[int(ch) for ch in r] for r in rows])

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def nrows(self) -> int:
        return self._data.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def to_bits(self) -> np.ndarray:
        return unpack_bits(self._data, self.ncols)

    def row_strings(self) -> list[str]:
        return ["".join("01"[x] for x in row) for row in self.to_bits()]

    def transpose(self) -> "BinaryMatrix":
        return BinaryMatrix.from_bits(self.to_bits().T)

    def vstack(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if other.ncols != self.ncols:
            raise ValueError("column counts differ")
        return BinaryMatrix(np.vstack([self._data, other._data]), self.ncols)

    def __matmul__(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        prod = self.to_bits().astype(np.int64) @ other.to_bits().astype(np.int64)
        return BinaryMatrix.from_bits(prod & 1)

    def __add__(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return BinaryMatrix(self._data ^ other._data, self.ncols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self._data, other._data)

    def __hash__(self):
        return hash((self.ncols, self._data.tobytes()))

    def is_zero(self) -> bool:
        return not self._data.any()

    def __repr__(self) -> str:
        return f"BinaryMatrix({self.nrows}x{self.ncols})"


def rref(A: BinaryMatrix) -> tuple[BinaryMatrix, np.ndarray]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns."""
    work = np.array(A.data, copy=True)
    pivots = _kernels.rref_inplace(work, A.ncols)
    return BinaryMatrix(work[: len(pivots)], A.ncols), pivots


def rank_f2(A: BinaryMatrix) -> int:
    if A.nrows == 0:
        return 0
    return len(rref(A)[1])


def kernel_f2(A: BinaryMatrix) -> BinaryMatrix:
    """Basis of {v : A v^T = 0}."""
    n = A.ncols
    if A.nrows == 0:
        return BinaryMatrix.identity(n)
    red, pivots = rref(A)
    bits = red.to_bits()
    free = [j for j in range(n) if j not in set(pivots.tolist())]
    out = np.zeros((len(free), n), dtype=np.uint8)
    for i, f in enumerate(free):
        out[i, f] = 1
        out[i, pivots] = bits[:, f]
    return BinaryMatrix.from_bits(out) if free else BinaryMatrix.zeros(0, n)


def intersect_rowspaces(A: BinaryMatrix, B: BinaryMatrix) -> BinaryMatrix:
    """Basis of rowspace(A) ∩ rowspace(B), via (A^⊥ + B^⊥)^⊥."""
    if A.ncols != B.ncols:
        raise ValueError("column counts differ")
    duals = kernel_f2(A).vstack(kernel_f2(B))
    if duals.nrows == 0:
        return BinaryMatrix.identity(A.ncols)
    return kernel_f2(duals)


def row_space_contains(A: BinaryMatrix, v) -> bool:
    vec = BinaryMatrix.from_bits(np.asarray(v, dtype=np.uint8).reshape(1, -1))
    return rank_f2(A.vstack(vec)) == rank_f2(A)


@dataclass(frozen=True, eq=False)
class RingMatrix:
    """Matrix over F2 or F2 + uF2 stored as a residue plane and a u-plane."""

    ring: RingId
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=np.uint8) & 1
        b = np.asarray(self.b, dtype=np.uint8) & 1
        if a.ndim != 2 or a.shape != b.shape:
            raise ValueError("planes must be equal-shape 2-D arrays")
        if self.ring is RingId.F2 and b.any():
            raise ValueError("F2 matrix with nonzero u-plane")
        a.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def from_elements(cls, ring: RingId, rows: Sequence[Sequence[RingElement]]) -> "RingMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        a = np.zeros((len(rows), ncols), np.uint8)
        b = np.zeros_like(a)
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, x in enumerate(row):
                if x.ring is not ring:
                    raise RingMismatch(f"entry ({i},{j}) is over {x.ring.value}")
                a[i, j], b[i, j] = x.a, x.b
        return cls(ring, a, b)

    @classmethod
    def from_strings(cls, ring: RingId, rows: Iterable[str]) -> "RingMatrix":
        return cls.from_elements(ring, [parse_vector(r, ring) for r in rows])

    @classmethod
    def zeros(cls, ring: RingId, nrows: int, ncols: int) -> "RingMatrix":
        z = np.zeros((nrows, ncols), np.uint8)
        return cls(ring, z, z)

    @classmethod
    def from_binary(cls, M: BinaryMatrix, ring: RingId = RingId.F2) -> "RingMatrix":
        bits = M.to_bits()
        return cls(ring, bits, np.zeros_like(bits))

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    @property
    def nrows(self) -> int:
        return self.a.shape[0]

    @property
    def ncols(self) -> int:
        return self.a.shape[1]

    def __getitem__(self, ij) -> RingElement:
        i, j = ij
        return RingElement(self.ring, int(self.a[i, j]), int(self.b[i, j]))

    def row(self, i: int) -> tuple[RingElement, ...]:
        return tuple(self[i, j] for j in range(self.ncols))

    def rows(self) -> list[tuple[RingElement, ...]]:
        return [self.row(i) for i in range(self.nrows)]

    def row_strings(self) -> list[str]:
        return [format_vector(r) for r in self.rows()]

    def residue(self) -> BinaryMatrix:
        return BinaryMatrix.from_bits(self.a)

    def u_plane(self) -> BinaryMatrix:
        return BinaryMatrix.from_bits(self.b)

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "RingMatrix":
        return RingMatrix(self.ring, self.a[r0:r1, c0:c1], self.b[r0:r1, c0:c1])

    def scale(self, x: RingElement) -> "RingMatrix":
        if x.ring is not self.ring:
            raise RingMismatch("scalar ring differs")
        return RingMatrix(self.ring, self.a * x.a, (self.b * x.a) ^ (self.a * x.b))

    def is_zero(self) -> bool:
        return not (self.a.any() or self.b.any())

    def T(self) -> "RingMatrix":
        return transpose(self)

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        return mat_mul(self, other)

    def __add__(self, other: "RingMatrix") -> "RingMatrix":
        return add(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return (
            self.ring is other.ring
            and self.shape == other.shape
            and np.array_equal(self.a, other.a)
            and np.array_equal(self.b, other.b)
        )

    def __hash__(self):
        return hash((self.ring, self.shape, self.a.tobytes(), self.b.tobytes()))

    def __repr__(self) -> str:
        return f"RingMatrix({self.ring.value}, {self.nrows}x{self.ncols})"


def _same_ring(A: RingMatrix, B: RingMatrix) -> None:
    if A.ring is not B.ring:
        raise RingMismatch(f"{A.ring.value} vs {B.ring.value}")


def mat_mul(A: RingMatrix, B: RingMatrix) -> RingMatrix:
    _same_ring(A, B)
    if A.ncols != B.nrows:
        raise ValueError(f"cannot multiply {A.shape} by {B.shape}")
    Aa, Ab = A.a.astype(np.int64), A.b.astype(np.int64)
    Ba, Bb = B.a.astype(np.int64), B.b.astype(np.int64)
    a = (Aa @ Ba) & 1
    if A.ring is RingId.F2:
        return RingMatrix(A.ring, a, np.zeros_like(a))
    b = (Aa @ Bb + Ab @ Ba) & 1
    return RingMatrix(A.ring, a, b)


def transpose(A: RingMatrix) -> RingMatrix:
    return RingMatrix(A.ring, A.a.T, A.b.T)


def add(A: RingMatrix, B: RingMatrix) -> RingMatrix:
    _same_ring(A, B)
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch {A.shape} vs {B.shape}")
    return RingMatrix(A.ring, A.a ^ B.a, A.b ^ B.b)


def identity(n: int, ring: RingId) -> RingMatrix:
    eye = np.eye(n, dtype=np.uint8)
    return RingMatrix(ring, eye, np.zeros_like(eye))


def hstack(*blocks: RingMatrix) -> RingMatrix:
    ring = blocks[0].ring
    return RingMatrix(ring, np.hstack([m.a for m in blocks]), np.hstack([m.b for m in blocks]))


def vstack(*blocks: RingMatrix) -> RingMatrix:
    ring = blocks[0].ring
    return RingMatrix(ring, np.vstack([m.a for m in blocks]), np.vstack([m.b for m in blocks]))


def free_rank(A: RingMatrix) -> int:
    """Free rank of the row module of A.

    For F2 + uF2 (a chain ring with maximal ideal <u>) the unit pivots of a
    standard form sit exactly where the residue matrix has pivots, so this is
    the binary rank of A mod u.
    """
    if A.nrows == 0 or A.ncols == 0:
        return 0
    return rank_f2(A.residue())
