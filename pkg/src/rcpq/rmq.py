"""Static range-minimum queries with linear preprocessing and O(1) lookups.

The default realisation splits the array into blocks of b ~ log2(m)/4
entries. Blocks are classified by the shape of their Cartesian tree; all
blocks of one shape share a b x b table of in-block answers. Block minima
are covered by a sparse table, which has (m/b) log(m/b) = O(m) entries.

``method="sparse"`` builds a plain sparse table over the whole array
instead (O(m log m) words).

Ties always resolve to the leftmost position.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

# Upper bound on stored words per input value for the block method; checked
# in the tests over lengths 1..2**17.
BLOCK_WORDS_PER_VALUE = 8.0


def _block_size(m: int) -> int:
    if m <= 1:
        return 1
    return max(1, math.ceil(math.log2(m) / 4))


def _sparse_levels(values: np.ndarray) -> list[np.ndarray]:
    """Sparse table of leftmost-minimum positions; level k covers 2**k entries."""
    m = len(values)
    levels = [np.arange(m, dtype=np.int64)]
    span = 1
    while 2 * span <= m:
        prev = levels[-1]
        left = prev[: m - 2 * span + 1]
        right = prev[span: m - span + 1]
        take_right = values[right] < values[left]
        levels.append(np.where(take_right, right, left))
        span *= 2
    return levels


def _cartesian_signatures(blocks: np.ndarray) -> np.ndarray:
    """Encode each row's Cartesian-tree shape as push/pop bits.

    Pops happen while the stack top is strictly greater than the incoming
    value, so equal values keep the earlier one as ancestor (leftmost rule).
    """
    nb, b = blocks.shape
    stack = np.zeros((nb, b), dtype=np.float64)
    depth = np.zeros(nb, dtype=np.int64)
    sig = np.zeros(nb, dtype=np.int64)
    rows = np.arange(nb)
    for t in range(b):
        v = blocks[:, t]
        for _ in range(t):
            top = stack[rows, np.maximum(depth - 1, 0)]
            pop = (depth > 0) & (top > v)
            if not pop.any():
                break
            depth = depth - pop
            sig = np.where(pop, sig << 1, sig)
        stack[rows, depth] = v
        depth = depth + 1
        sig = (sig << 1) | 1
    return sig


def _in_block_table(block: np.ndarray) -> np.ndarray:
    b = len(block)
    table = np.zeros((b, b), dtype=np.int8)
    for i in range(b):
        best = i
        for j in range(i, b):
            if block[j] < block[best]:
                best = j
            table[i, j] = best
    return table


class RmqIndex:
    """Range-minimum index over a fixed sequence of numbers.

    ``query(i, j)`` returns the position of the minimum among positions
    i..j inclusive.
    """

    def __init__(self, values: Sequence[float], method: str = "block"):
        vals = np.asarray(values, dtype=np.float64)
        if vals.ndim != 1:
            raise ValueError("RMQ values must be one-dimensional")
        if np.isnan(vals).any():
            raise ValueError("RMQ values must not contain NaN")
        if method not in ("block", "sparse"):
            raise ValueError(f"unknown RMQ method {method!r}")
        self.method = method
        self.values = vals
        self._vals = vals.tolist() if len(vals) <= 64 else memoryview(vals)
        m = len(vals)
        self.length = m
        if method == "sparse":
            self._sparse = [memoryview(lv) for lv in _sparse_levels(vals)]
            self._sparse_sizes = sum(len(lv) for lv in self._sparse)
            return

        b = self.block = _block_size(m)
        nb = -(-m // b) if m else 0
        padded = np.full(nb * b, np.inf)
        padded[:m] = vals
        blocks = padded.reshape(nb, b)
        sig = _cartesian_signatures(blocks)
        shapes, first, type_of_block = np.unique(sig, return_index=True, return_inverse=True)
        # One table per distinct shape, built from its first block.
        tables = np.stack([_in_block_table(blocks[k]) for k in first]) if nb else np.zeros((0, b, b), np.int8)
        self._n_tables = len(shapes)
        self._tables = tables.reshape(len(shapes), b * b).astype(np.int64)
        self._table_rows = [memoryview(t) for t in self._tables]
        self._type = memoryview(type_of_block.astype(np.int64).reshape(-1))
        block_argmin = np.argmin(blocks, axis=1) if nb else np.zeros(0, np.int64)
        self._block_min_pos = (np.arange(nb) * b + block_argmin).astype(np.int64)
        block_min = padded[self._block_min_pos] if nb else np.zeros(0)
        levels = _sparse_levels(block_min)
        # Store global positions rather than block indices.
        self._sparse = [memoryview(self._block_min_pos[lv]) for lv in levels]
        self._sparse_sizes = sum(len(lv) for lv in levels)

    def __len__(self) -> int:
        return self.length

    def stored_words(self) -> int:
        """Words held by the index, including the value array itself."""
        if self.method == "sparse":
            return self.length + self._sparse_sizes
        nb = len(self._type)
        return (self.length + nb + len(self._block_min_pos) + self._sparse_sizes
                + self._n_tables * self.block * self.block)

    def _sparse_query(self, i: int, j: int) -> int:
        # i..j inclusive over the sparse table's index space.
        k = (j - i + 1).bit_length() - 1
        level = self._sparse[k]
        a = level[i]
        c = level[j - (1 << k) + 1]
        vals = self._vals
        return c if vals[c] < vals[a] else a

    def query(self, i: int, j: int) -> int:
        if not (0 <= i <= j < self.length):
            raise IndexError(f"RMQ range [{i}, {j}] outside [0, {self.length - 1}]")
        if self.method == "sparse":
            return self._sparse_query(i, j)
        b = self.block
        bi, oi = divmod(i, b)
        bj, oj = divmod(j, b)
        if bi == bj:
            return bi * b + self._table_rows[self._type[bi]][oi * b + oj]
        vals = self._vals
        best = bi * b + self._table_rows[self._type[bi]][oi * b + b - 1]
        if bj > bi + 1:
            mid = self._sparse_query(bi + 1, bj - 1)
            if vals[mid] < vals[best]:
                best = mid
        right = bj * b + self._table_rows[self._type[bj]][oj]
        if vals[right] < vals[best]:
            best = right
        return best

    def min_value(self, i: int, j: int) -> float:
        return self._vals[self.query(i, j)]


def rmq_build(values: Sequence[float], method: str = "block") -> RmqIndex:
    return RmqIndex(values, method)


def rmq_query(ix: RmqIndex, i: int, j: int) -> int:
    return ix.query(i, j)
