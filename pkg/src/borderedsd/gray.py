"""Gray map from (F2 + uF2)^n to F2^(2n): a + bu -> (b, a + b), block-wise."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from borderedsd.alphabet import RingElement, RingId
from borderedsd.linalg import BinaryMatrix, RingMatrix, rref


def gray_vector(v: Sequence[RingElement]) -> np.ndarray:
    """Image of one vector: all u-parts first, then all (a xor b) parts."""
    if any(x.ring is not RingId.F2u for x in v):
        raise ValueError("the Gray map is defined on F2+uF2 vectors")
    a = np.array([x.a for x in v], np.uint8)
    b = np.array([x.b for x in v], np.uint8)
    return np.concatenate([b, a ^ b])


def gray_planes(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise Gray image of a matrix given by its residue and u planes."""
    return np.hstack([b, a ^ b]).astype(np.uint8)


def lee_weight(v: Sequence[RingElement]) -> int:
    return int(gray_vector(v).sum())


def gray_generator(G: RingMatrix) -> BinaryMatrix:
    """Row-reduced binary generator of phi(rowspace(G)).

    The R-span of the rows is the F2-span of the rows together with u times
    the rows, and phi is F2-linear, so stacking both images suffices.
    """
    if G.ring is not RingId.F2u:
        raise ValueError("gray_generator needs a matrix over F2+uF2")
    rows = gray_planes(G.a, G.b)
    # u * (a + bu) = a u
    urows = gray_planes(np.zeros_like(G.a), G.a)
    return rref(BinaryMatrix.from_bits(np.vstack([rows, urows])))[0]
