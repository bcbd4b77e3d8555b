"""Bordered lambda-circulant construction of self-dual codes.

The generator is

    G = ( v     | 0 | xi5  xi6 )
        ( I_2n  | X | v^T  v^T )      X = ( AC     B   )
                                          ( B^T C  A^T )

with A = cir_lam(a), B = cir_lam(b), C = cir_mu(c) and the border
v = (v1, v2), v1 = (xi1,...,xi1, xi2), v2 = (xi3,...,xi3, xi4, xi4).
"""
from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Sequence

import numpy as np

from borderedsd.alphabet import (
    RingElement,
    RingId,
    add,
    decode_symbol,
    encode_symbol,
    format_vector,
    mul,
    one,
    parse_vector,
    square,
    zero,
)
from borderedsd.circulant import CirculantSpec, circulant, require_involutory
from borderedsd.gray import gray_generator
from borderedsd.linalg import BinaryMatrix, RingMatrix, free_rank, hstack, identity, vstack
from borderedsd.selfdual import BinaryCode


class ConditionError(ValueError):
    """Raised when parameters do not give a self-dual code."""

    def __init__(self, report: "ConditionReport"):
        super().__init__("construction conditions failed: " + ", ".join(report.failed()))
        self.report = report


@dataclass(frozen=True)
class ConstructionParams:
    ring: RingId
    n: int
    lam: RingElement
    mu: RingElement
    a: tuple[RingElement, ...]
    b: tuple[RingElement, ...]
    c: tuple[RingElement, ...]
    xi: tuple[RingElement, ...]

    def __post_init__(self):
        for name in ("a", "b", "c", "xi"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if self.n < 2:
            raise ValueError("n must be at least 2")
        for name in ("a", "b", "c"):
            if len(getattr(self, name)) != self.n:
                raise ValueError(f"vector {name} must have length n={self.n}")
        if len(self.xi) != 6:
            raise ValueError("xi must have 6 entries")
        for x in (self.lam, self.mu, *self.a, *self.b, *self.c, *self.xi):
            if x.ring is not self.ring:
                raise ValueError(f"entry {x!r} is not over {self.ring.value}")
        require_involutory(self.lam)
        require_involutory(self.mu)

    @classmethod
    def from_strings(cls, ring, n, lam, mu, a, b, c, xi) -> "ConstructionParams":
        ring = ring if isinstance(ring, RingId) else RingId.parse(ring)
        return cls(
            ring,
            int(n),
            decode_symbol(str(lam), ring),
            decode_symbol(str(mu), ring),
            parse_vector(a, ring),
            parse_vector(b, ring),
            parse_vector(c, ring),
            parse_vector(xi, ring),
        )

    @property
    def length(self) -> int:
        """Length of the code over the ring, 2(2n+1)."""
        return 2 * (2 * self.n + 1)

    @property
    def binary_length(self) -> int:
        return self.length * (2 if self.ring is RingId.F2u else 1)


def format_params(p: ConstructionParams) -> str:
    """``ring n lam mu a b c xi`` in the tables' symbol notation."""
    return " ".join(
        [
            p.ring.value,
            str(p.n),
            encode_symbol(p.lam),
            encode_symbol(p.mu),
            format_vector(p.a),
            format_vector(p.b),
            format_vector(p.c),
            format_vector(p.xi),
        ]
    )


def parse_params(line: str) -> ConstructionParams:
    parts = line.split()
    if len(parts) != 8:
        raise ValueError(f"expected 8 fields (ring n lam mu a b c xi), got {len(parts)}")
    return ConstructionParams.from_strings(*parts)


def n_prime(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return 2 * (n % 2) + 1


def border_vectors(p: ConstructionParams) -> tuple[tuple[RingElement, ...], tuple[RingElement, ...]]:
    if p.n < 2:
        raise ValueError("n must be at least 2")
    x1, x2, x3, x4 = p.xi[:4]
    v1 = (x1,) * (p.n - 1) + (x2,)
    v2 = (x3,) * (p.n - 2) + (x4, x4)
    return v1, v2


def blocks(p: ConstructionParams) -> tuple[RingMatrix, RingMatrix, RingMatrix]:
    A = circulant(CirculantSpec(p.ring, p.lam, p.a))
    B = circulant(CirculantSpec(p.ring, p.lam, p.b))
    C = circulant(CirculantSpec(p.ring, p.mu, p.c))
    return A, B, C


def build_X(p: ConstructionParams) -> RingMatrix:
    A, B, C = blocks(p)
    return vstack(hstack(A @ C, B), hstack(B.T() @ C, A.T()))


def _row(v: Sequence[RingElement], ring: RingId) -> RingMatrix:
    return RingMatrix.from_elements(ring, [list(v)])


def build_G(p: ConstructionParams) -> RingMatrix:
    ring, n = p.ring, p.n
    v1, v2 = border_vectors(p)
    v = _row(v1 + v2, ring)
    top = hstack(v, RingMatrix.zeros(ring, 1, 2 * n), _row(p.xi[4:6], ring))
    bottom = hstack(identity(2 * n, ring), build_X(p), v.T(), v.T())
    return vstack(top, bottom)


@dataclass(frozen=True)
class ConditionReport:
    cond_orthA: bool
    cond_orthC: bool
    cond_xi_square: bool
    cond_xi_annihilate: bool
    cond_free_rank: bool

    @property
    def ok(self) -> bool:
        return all(getattr(self, f.name) for f in fields(self))

    def failed(self) -> list[str]:
        return [f.name for f in fields(self) if not getattr(self, f.name)]

    def as_dict(self) -> dict[str, bool]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def free_rank_datum(p: ConstructionParams) -> RingMatrix:
    """The 1 x (2n+2) row (v1 A + v2 B^T, v1 B + v2 A^T, xi5, xi6)."""
    A, B, _ = blocks(p)
    v1, v2 = border_vectors(p)
    r1, r2 = _row(v1, p.ring), _row(v2, p.ring)
    left = r1 @ A + r2 @ B.T()
    right = r1 @ B + r2 @ A.T()
    return hstack(left, right, _row(p.xi[4:6], p.ring))


def check_conditions(p: ConstructionParams) -> ConditionReport:
    """Evaluate every condition; does not stop at the first failure."""
    ring, n = p.ring, p.n
    A, B, C = blocks(p)
    I = identity(n, ring)
    orth_a = (A @ A.T()) + (B @ B.T()) == I
    orth_c = C @ C.T() == I
    xi = p.xi
    sq = zero(ring)
    for x in (xi[n_prime(n) - 1], xi[1], xi[4], xi[5]):
        sq = add(sq, square(x))
    factor = add(add(xi[4], xi[5]), one(ring))
    # xi3 only occurs in the border when n >= 3
    used = (0, 1, 2, 3) if n >= 3 else (0, 1, 3)
    annihilate = all(not mul(xi[j], factor) for j in used)
    return ConditionReport(
        cond_orthA=orth_a,
        cond_orthC=orth_c,
        cond_xi_square=not sq,
        cond_xi_annihilate=annihilate,
        cond_free_rank=free_rank(free_rank_datum(p)) == 1,
    )


def binary_generator(p: ConstructionParams) -> BinaryMatrix:
    """Binary generator of the construction (Gray image over F2+uF2), unchecked."""
    G = build_G(p)
    if p.ring is RingId.F2:
        return G.residue()
    return gray_generator(G)


def build_selfdual(p: ConstructionParams, check: bool = True) -> BinaryCode:
    if check:
        report = check_conditions(p)
        if not report.ok:
            raise ConditionError(report)
    return BinaryCode.from_generator(binary_generator(p))
