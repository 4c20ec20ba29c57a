"""Dense bit-packed matrices over GF(2).

Rows are packed little-endian into 64-bit words: column ``j`` lives in
word ``j // 64`` at bit ``j % 64``.  Padding bits past ``cols`` are kept
zero.  Elimination is column-pivoted and produces the reduced row
echelon form, which serves rank, null space and solving alike.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

WORD = 64


def _words(cols: int) -> int:
    return max(1, -(-cols // WORD))


@dataclass(frozen=True, eq=False)
class BitMatrix:
    rows: int
    cols: int
    data: np.ndarray  # (rows, words) uint64

    def __post_init__(self):
        d = np.asarray(self.data, dtype=np.uint64)
        if d.shape != (self.rows, _words(self.cols)):
            raise ValueError(f"packed data has shape {d.shape}, expected {(self.rows, _words(self.cols))}")
        object.__setattr__(self, "data", d)

    # construction

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols, np.zeros((rows, _words(cols)), dtype=np.uint64))

    @classmethod
    def identity(cls, k: int) -> BitMatrix:
        m = np.zeros((k, k), dtype=np.uint8)
        np.fill_diagonal(m, 1)
        return cls.from_dense(m)

    @classmethod
    def from_dense(cls, bits) -> BitMatrix:
        bits = np.asarray(bits, dtype=np.uint8) & 1
        if bits.ndim == 1:
            bits = bits[None, :]
        rows, cols = bits.shape
        w = _words(cols)
        padded = np.zeros((rows, w * WORD), dtype=np.uint8)
        padded[:, :cols] = bits
        packed = np.packbits(padded, axis=1, bitorder="little")
        data = packed.view("<u8").astype(np.uint64, copy=False).reshape(rows, w)
        return cls(rows, cols, data.copy())

    @classmethod
    def from_supports(cls, supports, cols: int) -> BitMatrix:
        """One row per iterable of column indices (entries XOR together)."""
        supports = [list(s) for s in supports]
        m = cls.zeros(len(supports), cols)
        for i, s in enumerate(supports):
            for j in s:
                if not 0 <= j < cols:
                    raise IndexError(f"column {j} out of range for {cols} columns")
                m.data[i, j // WORD] ^= np.uint64(1 << (j % WORD))
        return m

    @classmethod
    def from_ints(cls, values, cols: int) -> BitMatrix:
        values = list(values)
        w = _words(cols)
        data = np.zeros((len(values), w), dtype=np.uint64)
        nbytes = w * 8
        for i, v in enumerate(values):
            if v < 0 or v.bit_length() > cols:
                raise ValueError(f"row {i} does not fit in {cols} columns")
            data[i] = np.frombuffer(v.to_bytes(nbytes, "little"), dtype="<u8")
        return cls(len(values), cols, data)

    def copy(self) -> BitMatrix:
        return BitMatrix(self.rows, self.cols, self.data.copy())

    # access

    def to_dense(self) -> np.ndarray:
        raw = self.data.astype("<u8").view(np.uint8).reshape(self.rows, 8 * self.data.shape[1])
        return np.unpackbits(raw, axis=1, bitorder="little")[:, : self.cols]

    def row_int(self, i: int) -> int:
        return int.from_bytes(self.data[i].astype("<u8").tobytes(), "little")

    def row_weights(self) -> np.ndarray:
        return np.bitwise_count(self.data).sum(axis=1, dtype=np.int64)

    def __getitem__(self, ij) -> int:
        i, j = ij
        return int((self.data[i, j // WORD] >> np.uint64(j % WORD)) & np.uint64(1))

    def __eq__(self, other):
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and np.array_equal(self.data, other.data)

    def vstack(self, other: BitMatrix) -> BitMatrix:
        if other.cols != self.cols:
            raise ValueError("column counts differ")
        return BitMatrix(self.rows + other.rows, self.cols, np.vstack([self.data, other.data]))

    def select_rows(self, idx) -> BitMatrix:
        idx = np.asarray(idx, dtype=np.int64)
        return BitMatrix(len(idx), self.cols, self.data[idx])

    # algebra

    def mat_vec(self, v) -> np.ndarray:
        """GF(2) product m . v^T for a 0/1 vector of length ``cols``."""
        v = np.asarray(v, dtype=np.uint8)
        if v.shape != (self.cols,):
            raise ValueError(f"vector length {v.shape} does not match {self.cols} columns")
        packed = BitMatrix.from_dense(v).data[0]
        return (np.bitwise_count(self.data & packed).sum(axis=1) & 1).astype(np.uint8)

    def mat_mul_t(self, other: BitMatrix) -> BitMatrix:
        """self . other^T (rows of ``other`` are the vectors)."""
        if other.cols != self.cols:
            raise ValueError("column counts differ")
        out = np.zeros((self.rows, other.rows), dtype=np.uint8)
        for k in range(other.rows):
            out[:, k] = np.bitwise_count(self.data & other.data[k]).sum(axis=1) & 1
        return BitMatrix.from_dense(out) if self.rows else BitMatrix.zeros(0, other.rows)

    def rref(self) -> tuple[BitMatrix, list[int]]:
        """Reduced row echelon form and its pivot columns."""
        a = self.data.copy()
        rows = self.rows
        pivots: list[int] = []
        r = 0
        one = np.uint64(1)
        for c in range(self.cols):
            if r == rows:
                break
            w = c // WORD
            col = (a[:, w] >> np.uint64(c % WORD)) & one
            below = np.flatnonzero(col[r:])
            if below.size == 0:
                continue
            p = r + int(below[0])
            if p != r:
                a[[r, p]] = a[[p, r]]
                col[r], col[p] = col[p], col[r]
            col[r] = 0
            hit = np.flatnonzero(col)
            if hit.size:
                a[hit, w:] ^= a[r, w:]
            pivots.append(c)
            r += 1
        return BitMatrix(rows, self.cols, a), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace_basis(self) -> BitMatrix:
        """Rows spanning {v : self . v^T = 0}; one row per free column."""
        red, pivots = self.rref()
        pivset = set(pivots)
        free = [c for c in range(self.cols) if c not in pivset]
        k = len(free)
        if k == 0:
            return BitMatrix.zeros(0, self.cols)
        free_idx = np.asarray(free, dtype=np.int64)
        # built transposed: column j of the result is row j here
        dense_t = np.zeros((self.cols, k), dtype=np.uint8)
        dense_t[free_idx, np.arange(k)] = 1
        # basis vector for free column j: e_j + sum of pivots whose row has bit j
        block = 2048
        for r0 in range(0, len(pivots), block):
            r1 = min(r0 + block, len(pivots))
            raw = red.data[r0:r1].astype("<u8").view(np.uint8)
            bits = np.unpackbits(raw, axis=1, bitorder="little")
            dense_t[pivots[r0:r1]] = np.take(bits, free_idx, axis=1)
        return BitMatrix.from_dense(np.ascontiguousarray(dense_t.T))

    def solve(self, b) -> np.ndarray | None:
        """One solution x of self . x^T = b, or None when inconsistent."""
        b = np.asarray(b, dtype=np.uint8)
        if b.shape != (self.rows,):
            raise ValueError("right-hand side length mismatch")
        aug = np.hstack([self.to_dense(), b[:, None]])
        red, pivots = BitMatrix.from_dense(aug).rref() if self.rows else (None, [])
        if self.cols in pivots:
            return None
        x = np.zeros(self.cols, dtype=np.uint8)
        if pivots:
            dense = red.to_dense()
            for i, c in enumerate(pivots):
                x[c] = dense[i, self.cols]
        return x

    # text format: "rows cols" then one hex string per row

    def to_text(self) -> str:
        width = max(1, (self.cols + 3) // 4)
        lines = [f"{self.rows} {self.cols}"]
        lines += [f"{self.row_int(i):0{width}x}" for i in range(self.rows)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> BitMatrix:
        lines = text.split("\n")
        head = lines[0].split()
        if len(head) != 2:
            raise ValueError("header must be 'rows cols'")
        rows, cols = int(head[0]), int(head[1])
        body = [ln.strip() for ln in lines[1:] if ln.strip()]
        if len(body) != rows:
            raise ValueError(f"expected {rows} rows, found {len(body)}")
        return cls.from_ints((int(h, 16) for h in body), cols)


def rank(m: BitMatrix) -> int:
    return m.rank()


def nullspace_basis(m: BitMatrix) -> BitMatrix:
    return m.nullspace_basis()


def mat_vec(m: BitMatrix, v) -> np.ndarray:
    return m.mat_vec(v)
