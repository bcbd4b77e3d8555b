"""Binary linear codes, self-duality and the neighbour construction."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from borderedsd.linalg import BinaryMatrix, intersect_rowspaces, rank_f2, row_space_contains, rref


class CodeType(enum.Enum):
    TypeI = "I"
    TypeII = "II"


class NotSelfDual(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class BinaryCode:
    """A binary linear code held as a reduced, full-rank generator."""

    length: int
    generator: BinaryMatrix
    pivots: tuple[int, ...]

    @classmethod
    def from_generator(cls, M: BinaryMatrix) -> "BinaryCode":
        red, piv = rref(M)
        return cls(M.ncols, red, tuple(int(x) for x in piv))

    @classmethod
    def from_bits(cls, bits) -> "BinaryCode":
        return cls.from_generator(BinaryMatrix.from_bits(bits))

    @property
    def k(self) -> int:
        return self.generator.nrows

    def contains(self, x) -> bool:
        return row_space_contains(self.generator, x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryCode):
            return NotImplemented
        return self.length == other.length and self.generator == other.generator

    def __hash__(self):
        return hash(self.generator)

    def __repr__(self) -> str:
        return f"BinaryCode[{self.length},{self.k}]"


def from_generator(M: BinaryMatrix) -> BinaryCode:
    return BinaryCode.from_generator(M)


def _gram(C: BinaryCode) -> np.ndarray:
    G = C.generator.to_bits().astype(np.int64)
    return (G @ G.T) & 1


def is_self_orthogonal(C: BinaryCode) -> bool:
    return not _gram(C).any()


def is_self_dual(C: BinaryCode) -> bool:
    return 2 * C.k == C.length and is_self_orthogonal(C)


def type_of(C: BinaryCode) -> CodeType:
    """Type II iff every codeword weight is divisible by 4.

    In a self-orthogonal code wt(x + y) = wt(x) + wt(y) - 2|x & y| with
    |x & y| even, so weights mod 4 are additive and the generator rows decide.
    """
    if not is_self_dual(C):
        raise NotSelfDual("type is defined for self-dual codes")
    weights = C.generator.to_bits().sum(axis=1)
    return CodeType.TypeII if np.all(weights % 4 == 0) else CodeType.TypeI


def pad_vector(x0, length: int) -> np.ndarray:
    """(0, ..., 0, x0) of the given length."""
    x0 = np.asarray(x0, dtype=np.uint8)
    if x0.size > length:
        raise ValueError(f"vector of length {x0.size} exceeds code length {length}")
    out = np.zeros(length, np.uint8)
    out[length - x0.size :] = x0
    return out


def neighbour(Cstar: BinaryCode, x) -> BinaryCode:
    """<<x>^perp ∩ C*, x> for a self-dual C* and an even-weight x outside it."""
    x = np.asarray(x, dtype=np.uint8) & 1
    if x.size != Cstar.length:
        raise ValueError(f"x has length {x.size}, code has length {Cstar.length}")
    if not is_self_dual(Cstar):
        raise NotSelfDual("neighbours are taken of self-dual codes")
    if int(x.sum()) % 2:
        raise ValueError("x has odd weight; the neighbour would not be self-orthogonal")
    G = Cstar.generator.to_bits()
    inner = (G.astype(np.int64) @ x) & 1
    if not inner.any():
        # x is orthogonal to C* = C*^perp, hence x in C*
        raise ValueError("x lies in C*; the neighbour would be C* itself")
    r = int(np.flatnonzero(inner)[0])
    sub = G ^ np.outer(inner, G[r]).astype(np.uint8)
    sub = np.delete(sub, r, axis=0)
    return BinaryCode.from_bits(np.vstack([sub, x[None, :]]))


def intersection_dim(C: BinaryCode, D: BinaryCode) -> int:
    return rank_f2(intersect_rowspaces(C.generator, D.generator))
