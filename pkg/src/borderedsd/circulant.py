"""lambda-circulant matrices: each row is the previous one shifted right, with
the wrapped-around entry multiplied by the twist lambda."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from borderedsd.alphabet import RingElement, RingId, RingMismatch, mul, add, one, zero, square
from borderedsd.linalg import RingMatrix


@dataclass(frozen=True)
class CirculantSpec:
    ring: RingId
    lam: RingElement
    first_row: tuple[RingElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "first_row", tuple(self.first_row))
        if self.lam.ring is not self.ring or any(x.ring is not self.ring for x in self.first_row):
            raise RingMismatch("circulant entries must share the declared ring")
        if not self.first_row:
            raise ValueError("empty first row")

    @property
    def n(self) -> int:
        return len(self.first_row)


def require_involutory(lam: RingElement) -> None:
    if square(lam) != one(lam.ring):
        raise ValueError(f"twist {lam!r} is not involutory (lambda^2 != 1)")


def shift_matrix(n: int, lam: RingElement) -> RingMatrix:
    """P_lambda: I_{n-1} in the upper-right block, lambda in the lower-left corner."""
    if n < 1:
        raise ValueError("n must be positive")
    a = np.zeros((n, n), np.uint8)
    b = np.zeros((n, n), np.uint8)
    for i in range(n - 1):
        a[i, i + 1] = 1
    a[n - 1, 0] = lam.a
    b[n - 1, 0] = lam.b
    return RingMatrix(lam.ring, a, b)


def circulant(spec: CirculantSpec) -> RingMatrix:
    n = spec.n
    ring = spec.ring
    va = np.array([x.a for x in spec.first_row], np.uint8)
    vb = np.array([x.b for x in spec.first_row], np.uint8)
    # entries that wrapped around get multiplied by lambda
    wa = va & spec.lam.a
    wb = (vb & spec.lam.a) ^ (va & spec.lam.b)
    i = np.arange(n)[:, None]
    j = np.arange(n)[None, :]
    src = (j - i) % n
    wrapped = j < i
    a = np.where(wrapped, wa[src], va[src])
    b = np.where(wrapped, wb[src], vb[src])
    return RingMatrix(ring, a, b)


def cir(first_row: Sequence[RingElement], lam: RingElement | None = None) -> RingMatrix:
    ring = first_row[0].ring
    return circulant(CirculantSpec(ring, lam if lam is not None else one(ring), tuple(first_row)))


def product_first_row(x: CirculantSpec, y: CirculantSpec) -> tuple[RingElement, ...]:
    """First row of cir(x) @ cir(y) from the convolution with a lambda-twisted wrap."""
    if x.n != y.n or x.lam != y.lam or x.ring is not y.ring:
        raise ValueError("circulants must share size, ring and twist")
    n = x.n
    out = [zero(x.ring)] * n
    for i, ai in enumerate(x.first_row):
        for j, bj in enumerate(y.first_row):
            term = mul(ai, bj)
            if i + j >= n:
                term = mul(x.lam, term)
            k = (i + j) % n
            out[k] = add(out[k], term)
    return tuple(out)


def is_lambda_circulant(A: RingMatrix, lam: RingElement) -> bool:
    if A.nrows != A.ncols:
        raise ValueError("square matrix required")
    if A.nrows == 0:
        return True
    return circulant(CirculantSpec(A.ring, lam, A.row(0))) == A

