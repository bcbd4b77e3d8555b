"""Arithmetic over F2 and F2 + uF2 (u^2 = 0).

Elements are bit pairs ``(a, b)`` standing for ``a + b*u``.  F2 is the
degenerate case ``b == 0`` so every higher module works through one type.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence


class RingId(enum.Enum):
    F2 = "F2"
    F2u = "F2u"

    @property
    def order(self) -> int:
        return 2 if self is RingId.F2 else 4

    @classmethod
    def parse(cls, text: str) -> "RingId":
        key = text.strip()
        for ring in cls:
            if ring.value.lower() == key.lower():
                return ring
        if key in ("F2+uF2", "R1"):
            return cls.F2u
        raise ValueError(f"unknown ring {text!r}")


class RingMismatch(ValueError):
    pass


@dataclass(frozen=True, order=True)
class RingElement:
    ring: RingId
    a: int = 0
    b: int = 0

    def __post_init__(self):
        if self.a not in (0, 1) or self.b not in (0, 1):
            raise ValueError(f"element bits must be 0/1, got ({self.a}, {self.b})")
        if self.ring is RingId.F2 and self.b:
            raise ValueError("F2 elements have no u-part")

    def __add__(self, other: "RingElement") -> "RingElement":
        return add(self, other)

    def __mul__(self, other: "RingElement") -> "RingElement":
        return mul(self, other)

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __str__(self) -> str:
        return encode_symbol(self)

    def __repr__(self) -> str:
        names = {(0, 0): "0", (1, 0): "1", (0, 1): "u", (1, 1): "1+u"}
        return f"{names[self.a, self.b]}@{self.ring.value}"


def zero(ring: RingId) -> RingElement:
    return RingElement(ring, 0, 0)


def one(ring: RingId) -> RingElement:
    return RingElement(ring, 1, 0)


def elements(ring: RingId) -> list[RingElement]:
    """All elements of ``ring`` in symbol order 0, 1, (u, 1+u)."""
    if ring is RingId.F2:
        return [RingElement(ring, 0, 0), RingElement(ring, 1, 0)]
    return [RingElement(ring, a, b) for b in (0, 1) for a in (0, 1)]


def units(ring: RingId) -> list[RingElement]:
    return [x for x in elements(ring) if is_unit(x)]


def involutory_units(ring: RingId) -> list[RingElement]:
    """Units with x^2 = 1.  In F2 + uF2 every unit qualifies."""
    return [x for x in units(ring) if square(x) == one(ring)]


def _check(x: RingElement, y: RingElement) -> None:
    if x.ring is not y.ring:
        raise RingMismatch(f"{x.ring.value} vs {y.ring.value}")


def add(x: RingElement, y: RingElement) -> RingElement:
    _check(x, y)
    return RingElement(x.ring, x.a ^ y.a, x.b ^ y.b)


def mul(x: RingElement, y: RingElement) -> RingElement:
    _check(x, y)
    return RingElement(x.ring, x.a & y.a, (x.a & y.b) ^ (x.b & y.a))


def square(x: RingElement) -> RingElement:
    return mul(x, x)


def is_unit(x: RingElement) -> bool:
    return x.a == 1


_SYMBOLS = {(0, 0): "0", (1, 0): "1", (0, 1): "2", (1, 1): "3"}
_DECODE = {s: ab for ab, s in _SYMBOLS.items()}


def encode_symbol(x: RingElement) -> str:
    return _SYMBOLS[x.a, x.b]


def decode_symbol(s: str, ring: RingId) -> RingElement:
    try:
        a, b = _DECODE[s]
    except KeyError:
        raise ValueError(f"invalid symbol {s!r}") from None
    if ring is RingId.F2 and b:
        raise ValueError(f"symbol {s!r} is not an element of F2")
    return RingElement(ring, a, b)


def parse_vector(text: str, ring: RingId) -> tuple[RingElement, ...]:
    """Read a symbol string such as ``"(22120031)"`` or ``"22120031"``."""
    body = text.strip().strip("()").replace(" ", "").replace(",", "")
    return tuple(decode_symbol(ch, ring) for ch in body)


def format_vector(v: Iterable[RingElement]) -> str:
    return "".join(encode_symbol(x) for x in v)


def lift(bits: Sequence[int], ring: RingId) -> tuple[RingElement, ...]:
    return tuple(RingElement(ring, int(x) & 1, 0) for x in bits)
