import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from borderedsd.alphabet import RingId, elements, one
from borderedsd.gray import gray_generator, gray_planes, gray_vector, lee_weight
from borderedsd.linalg import RingMatrix, rank_f2, row_space_contains
from conftest import random_self_orthogonal_R, ring_span, ring_vectors, self_dual_generators_over_R

R = RingId.F2u
E = elements(R)
SYMBOL_WEIGHT = {(0, 0): 0, (1, 0): 1, (0, 1): 2, (1, 1): 1}


def is_self_orthogonal_over_R(G: RingMatrix) -> bool:
    return (G @ G.T()).is_zero()


_SELF_DUAL_G = self_dual_generators_over_R()


@st.composite
def self_orthogonal_codes(draw, max_rows=4):
    g = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
    return random_self_orthogonal_R(g, _SELF_DUAL_G, max_rows)


def test_fixture_codes_are_self_dual_over_R():
    assert len(_SELF_DUAL_G) == 8
    for G in _SELF_DUAL_G:
        assert is_self_orthogonal_over_R(G)


@given(st.integers(1, 20).flatmap(lambda n: st.tuples(ring_vectors(R, n), ring_vectors(R, n))))
def test_gray_is_linear_and_isometric(pair):
    x, y = pair
    s = tuple(a + b for a, b in zip(x, y))
    assert np.array_equal(gray_vector(s), gray_vector(x) ^ gray_vector(y))
    assert lee_weight(x) == sum(SYMBOL_WEIGHT[v.a, v.b] for v in x)
    assert int(gray_vector(x).sum()) == lee_weight(x)
    # Lee distance equals Hamming distance of the images
    assert lee_weight(s) == int((gray_vector(x) != gray_vector(y)).sum())


def test_gray_layout():
    v = tuple(E[i] for i in (0, 1, 2, 3))
    # u-parts first, then a + b
    assert gray_vector(v).tolist() == [0, 0, 1, 1, 0, 1, 1, 0]
    assert gray_planes(np.array([[1, 1]]), np.array([[0, 1]])).tolist() == [[0, 1, 1, 0]]
    with pytest.raises(ValueError):
        gray_vector((one(RingId.F2),))


@settings(max_examples=150, deadline=None)
@given(self_orthogonal_codes())
def test_orthogonality_preserved(G):
    assert is_self_orthogonal_over_R(G)
    B = gray_generator(G).to_bits().astype(np.int64)
    assert not ((B @ B.T) % 2).any()


@settings(max_examples=100, deadline=None)
@given(self_orthogonal_codes(max_rows=3))
def test_image_has_same_size(G):
    assert 2 ** rank_f2(gray_generator(G)) == len(ring_span(G))


@settings(max_examples=60, deadline=None)
@given(self_orthogonal_codes(max_rows=3))
def test_image_is_the_image_of_the_ring_span(G):
    words = {gray_planes(a[None, :], b[None, :]).tobytes() for a, b in ring_span(G)}
    B = gray_generator(G)
    assert len(words) == 2 ** B.nrows
    for a, b in ring_span(G)[:16]:
        assert row_space_contains(B, gray_planes(a[None, :], b[None, :])[0])
