"""GF(2) bit vectors and sparse binary matrices."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List

import numpy as np

__all__ = ["BitVector", "BitMatrix"]


@dataclass(frozen=True)
class BitVector:
    """Fixed-length vector over GF(2), packed into a Python int (bit j = coord j)."""

    length: int
    value: int = 0

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError("length must be >= 0")
        if self.value < 0 or self.value >> self.length:
            raise ValueError("value has bits outside the declared length")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        value = 0
        n = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError("bits must be 0 or 1")
            value |= b << n
            n += 1
        return cls(n, value)

    @classmethod
    def from_numpy(cls, arr: np.ndarray) -> "BitVector":
        arr = np.asarray(arr).astype(np.uint8)
        if arr.ndim != 1:
            raise ValueError("expected a 1-d array")
        if arr.size and arr.max() > 1:
            raise ValueError("bits must be 0 or 1")
        packed = np.packbits(arr, bitorder="little").tobytes()
        return cls(int(arr.size), int.from_bytes(packed, "little"))

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> "BitVector":
        value = 0
        for j in support:
            if not 0 <= j < length:
                raise ValueError(f"index {j} out of range")
            value |= 1 << j
        return cls(length, value)

    def get(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(f"index {j} out of range for length {self.length}")
        return (self.value >> j) & 1

    def flipped(self, j: int) -> "BitVector":
        if not 0 <= j < self.length:
            raise IndexError(f"index {j} out of range for length {self.length}")
        return BitVector(self.length, self.value ^ (1 << j))

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.value ^ other.value)

    def weight(self) -> int:
        return self.value.bit_count()

    def hamming(self, other: "BitVector") -> int:
        if self.length != other.length:
            raise ValueError("length mismatch")
        return (self.value ^ other.value).bit_count()

    def dot(self, other: "BitVector") -> int:
        """Inner product over GF(2)."""
        if self.length != other.length:
            raise ValueError("length mismatch")
        return (self.value & other.value).bit_count() & 1

    def to_numpy(self) -> np.ndarray:
        nbytes = (self.length + 7) // 8
        raw = np.frombuffer(self.value.to_bytes(nbytes, "little"), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[: self.length].copy()

    def to_list(self) -> List[int]:
        return [(self.value >> j) & 1 for j in range(self.length)]

    def support(self) -> List[int]:
        return [j for j in range(self.length) if (self.value >> j) & 1]

    def is_zero(self) -> bool:
        return self.value == 0

    def __len__(self) -> int:
        return self.length

    def __str__(self) -> str:
        return "".join(str(b) for b in self.to_list())


class BitMatrix:
    """Sparse binary matrix: per row, the sorted column indices of set bits."""

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int):
        if ncols < 0:
            raise ValueError("ncols must be >= 0")
        self.ncols = int(ncols)
        self.rows: List[np.ndarray] = []
        for cols in rows:
            arr = np.array(sorted(set(int(c) for c in cols)), dtype=np.int64)
            if arr.size and (arr[0] < 0 or arr[-1] >= self.ncols):
                raise ValueError("column index out of range")
            self.rows.append(arr)
        # int masks mirror the rows; cheap parity via popcount
        self._masks: List[int] = [int(sum(1 << int(c) for c in r)) for r in self.rows]

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> np.ndarray:
        return self.rows[i]

    def row_mask(self, i: int) -> int:
        return self._masks[i]

    def row_vector(self, i: int) -> BitVector:
        return BitVector(self.ncols, self._masks[i])

    def mul_vector(self, v: BitVector) -> BitVector:
        """Matrix-vector product over GF(2); result bit i is the parity of row i AND v."""
        if v.length != self.ncols:
            raise ValueError(f"vector length {v.length} != ncols {self.ncols}")
        out = 0
        for i, mask in enumerate(self._masks):
            out |= ((mask & v.value).bit_count() & 1) << i
        return BitVector(self.nrows, out)

    def column_degrees(self) -> np.ndarray:
        """Number of set bits per column."""
        if not self.rows:
            return np.zeros(self.ncols, dtype=np.int64)
        cat = np.concatenate(self.rows) if self.rows else np.array([], dtype=np.int64)
        return np.bincount(cat, minlength=self.ncols).astype(np.int64)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=np.uint8)
        for i, cols in enumerate(self.rows):
            out[i, cols] = 1
        return out

    def to_text(self) -> str:
        """Dense 0/1 dump, one row per line, entries space-separated."""
        return "\n".join(" ".join(str(b) for b in row) for row in self.to_dense())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.ncols == other.ncols and self._masks == other._masks

    def __repr__(self) -> str:
        return f"BitMatrix({self.nrows}x{self.ncols})"
