import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from borderedsd.alphabet import RingElement, RingId, elements, is_unit
from borderedsd.linalg import (
    BinaryMatrix,
    RingMatrix,
    free_rank,
    hstack,
    identity,
    intersect_rowspaces,
    kernel_f2,
    pack_bits,
    rank_f2,
    row_space_contains,
    rref,
    unpack_bits,
)
from conftest import bit_matrices, int_rank, naive_matmul, rings


def unit_pivot_count(A: RingMatrix) -> int:
    """Free rank from a standard form over F2+uF2: count unit pivots.

    Gaussian elimination that only ever pivots on units; after it stalls the
    remaining rows lie in u*R^n and contribute no free part.
    """
    rows = [list(r) for r in A.rows()]
    ncols = A.ncols
    count = 0
    used = set()
    for col in range(ncols):
        piv = next((i for i, r in enumerate(rows) if i not in used and is_unit(r[col])), None)
        if piv is None:
            continue
        used.add(piv)
        inv = rows[piv][col]  # units are involutions
        rows[piv] = [inv * x for x in rows[piv]]
        for i, r in enumerate(rows):
            if i != piv and r[col]:
                f = r[col]
                rows[i] = [x + f * y for x, y in zip(r, rows[piv])]
        count += 1
    return count


@st.composite
def ring_matrices(draw, ring=None, rows=None, cols=None, max_dim=7):
    ring = ring or draw(rings)
    r = rows if rows is not None else draw(st.integers(1, max_dim))
    c = cols if cols is not None else draw(st.integers(1, max_dim))
    E = elements(ring)
    data = [[draw(st.sampled_from(E)) for _ in range(c)] for _ in range(r)]
    return RingMatrix.from_elements(ring, data)


@given(bit_matrices(max_rows=6, max_cols=150))
def test_pack_roundtrip(bits):
    packed = pack_bits(bits)
    assert packed.dtype == np.uint64
    assert np.array_equal(unpack_bits(packed, bits.shape[1]), bits)
    assert np.array_equal(BinaryMatrix.from_bits(bits).to_bits(), bits)


@given(bit_matrices(max_rows=20, max_cols=140))
def test_rank_matches_integer_elimination(bits):
    assert rank_f2(BinaryMatrix.from_bits(bits)) == int_rank(bits)


@given(bit_matrices(max_rows=15, max_cols=90))
def test_rref_is_reduced(bits):
    red, piv = rref(BinaryMatrix.from_bits(bits))
    R = red.to_bits()
    assert R.shape[0] == len(piv) == int_rank(bits)
    for i, p in enumerate(piv):
        assert R[i, p] == 1
        assert R[:, p].sum() == 1
        assert not R[i, :p].any()
    # same row space
    assert int_rank(np.vstack([R, bits])) == len(piv)


@given(bit_matrices(max_rows=12, max_cols=70))
def test_kernel(bits):
    A = BinaryMatrix.from_bits(bits)
    K = kernel_f2(A)
    assert K.nrows == A.ncols - rank_f2(A)
    prod = (bits.astype(np.int64) @ K.to_bits().T.astype(np.int64)) % 2
    assert not prod.any()


@given(bit_matrices(max_rows=8, max_cols=30, min_cols=30), bit_matrices(max_rows=8, max_cols=30, min_cols=30))
def test_intersection_dimension_formula(x, y):
    A, B = BinaryMatrix.from_bits(x), BinaryMatrix.from_bits(y)
    I = intersect_rowspaces(A, B)
    dim = rank_f2(I)
    assert dim == int_rank(x) + int_rank(y) - int_rank(np.vstack([x, y]))
    for v in I.to_bits():
        assert row_space_contains(A, v) and row_space_contains(B, v)


@given(st.integers(1, 10), st.integers(1, 130), st.integers(1, 70), st.integers(0, 2**32 - 1))
def test_binary_matmul(r, m, c, seed):
    g = np.random.default_rng(seed)
    x = g.integers(0, 2, size=(r, m), dtype=np.uint8)
    y = g.integers(0, 2, size=(m, c), dtype=np.uint8)
    got = (BinaryMatrix.from_bits(x) @ BinaryMatrix.from_bits(y)).to_bits()
    assert np.array_equal(got, (x.astype(np.int64) @ y.astype(np.int64)) % 2)


@st.composite
def matmul_pair(draw):
    ring = draw(rings)
    n, m, p = (draw(st.integers(1, 6)) for _ in range(3))
    return draw(ring_matrices(ring, n, m)), draw(ring_matrices(ring, m, p))


@settings(max_examples=80)
@given(matmul_pair())
def test_ring_matmul_matches_triple_loop(pair):
    A, B = pair
    assert (A @ B).rows() == [tuple(r) for r in naive_matmul(A.rows(), B.rows())]


@given(matmul_pair())
def test_transpose_of_product(pair):
    A, B = pair
    assert (A @ B).T() == B.T() @ A.T()


@given(ring_matrices(ring=RingId.F2u, max_dim=8))
def test_free_rank_matches_unit_pivots(A):
    assert free_rank(A) == unit_pivot_count(A)


def test_free_rank_examples():
    R = RingId.F2u
    assert free_rank(RingMatrix.from_strings(R, ["2200", "0020"])) == 0
    assert free_rank(RingMatrix.from_strings(R, ["1200", "3200", "0020"])) == 1
    assert free_rank(identity(4, R)) == 4


def test_ring_matrix_accessors():
    R = RingId.F2u
    M = RingMatrix.from_strings(R, ["0123", "3210"])
    assert M.row_strings() == ["0123", "3210"]
    assert M[0, 3] == RingElement(R, 1, 1)
    assert M.residue().row_strings() == ["0101", "1010"]
    assert M.u_plane().row_strings() == ["0011", "1100"]
    assert hstack(M, M).ncols == 8
    assert M.block(0, 1, 1, 3).row_strings() == ["12"]
    with pytest.raises(ValueError):
        RingMatrix.from_strings(RingId.F2, ["012"])


def test_binary_matrix_is_immutable():
    M = BinaryMatrix.from_strings(["101", "011"])
    with pytest.raises(ValueError):
        M.data[0, 0] = 0
    assert M.transpose().transpose() == M
    assert (M + M).is_zero()
