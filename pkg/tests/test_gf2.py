import numpy as np
import pytest

from signedcode import BitMatrix, BitVector


def test_from_bits_roundtrip():
    v = BitVector.from_bits([1, 0, 1, 1, 0])
    assert v.length == 5
    assert v.to_list() == [1, 0, 1, 1, 0]
    assert v.support() == [0, 2, 3]
    assert v.weight() == 3
    assert str(v) == "10110"


def test_from_numpy_matches_from_bits():
    rng = np.random.default_rng(5)
    bits = rng.integers(0, 2, 100).astype(np.uint8)
    a = BitVector.from_numpy(bits)
    b = BitVector.from_bits(int(x) for x in bits)
    assert a == b
    assert np.array_equal(a.to_numpy(), bits)


def test_from_support():
    v = BitVector.from_support(8, [7, 0, 3])
    assert v.to_list() == [1, 0, 0, 1, 0, 0, 0, 1]
    with pytest.raises(ValueError):
        BitVector.from_support(4, [4])


def test_get_flip_xor():
    v = BitVector.from_bits([0, 1, 0])
    assert [v.get(j) for j in range(3)] == [0, 1, 0]
    assert v.flipped(0).to_list() == [1, 1, 0]
    assert (v ^ BitVector.from_bits([1, 1, 0])).to_list() == [1, 0, 0]
    with pytest.raises(IndexError):
        v.get(3)
    with pytest.raises(ValueError):
        v ^ BitVector.from_bits([1])


def test_hamming_and_dot():
    a = BitVector.from_bits([1, 1, 0, 1])
    b = BitVector.from_bits([1, 0, 0, 0])
    assert a.hamming(b) == 2
    assert a.dot(b) == 1  # one shared bit
    assert a.dot(a) == a.weight() % 2


def test_value_bounds_checked():
    with pytest.raises(ValueError):
        BitVector(3, 8)
    with pytest.raises(ValueError):
        BitVector(-1, 0)
    assert BitVector(0).is_zero()


def test_matrix_mul_vector_against_dense():
    rng = np.random.default_rng(11)
    for _ in range(25):
        r, c = int(rng.integers(1, 12)), int(rng.integers(1, 20))
        dense = rng.integers(0, 2, (r, c)).astype(np.uint8)
        mat = BitMatrix([np.flatnonzero(row) for row in dense], c)
        v = rng.integers(0, 2, c).astype(np.uint8)
        got = mat.mul_vector(BitVector.from_numpy(v)).to_numpy()
        want = (dense @ v) % 2
        assert np.array_equal(got, want)


def test_matrix_basics():
    mat = BitMatrix([[0, 2], [1], []], 3)
    assert mat.nrows == 3
    assert mat.ncols == 3
    assert list(mat.row(0)) == [0, 2]
    assert mat.row_vector(1).to_list() == [0, 1, 0]
    assert list(mat.column_degrees()) == [1, 1, 1]
    assert mat.to_text() == "1 0 1\n0 1 0\n0 0 0"
    assert mat == BitMatrix([[2, 0, 0], [1], []], 3)  # dedup + sort
    assert mat != BitMatrix([[0], [1], []], 3)
    with pytest.raises(ValueError):
        BitMatrix([[3]], 3)
    with pytest.raises(ValueError):
        mat.mul_vector(BitVector(2))
