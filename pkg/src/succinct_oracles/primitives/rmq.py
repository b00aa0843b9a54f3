import numpy as np
from numba import njit

from ..errors import RangeError, ValidationError
from . import _kernels as K
from .bitvector import BitVector


class RangeArgIndex:
    """Range argmin/argmax index that never consults the source array.

    Built from the stack encoding of the source's Cartesian tree: scanning
    left to right, each element pops every stacked element it beats (a 0 bit
    per pop) and is pushed (a 1 bit).  For i < j the answer is i itself when
    the excess never drops below i's push depth between the pushes of i and
    j; otherwise it is the element pushed right after the last minimum.
    Ties resolve to the leftmost position because equal values never pop.
    """

    MODES = ("min", "max")

    def __init__(self, source, mode="min"):
        if mode not in self.MODES:
            raise ValidationError(f"mode must be min or max, got {mode!r}", rule="mode")
        vals = np.asarray(source, dtype=np.int64).ravel()
        self.length = int(vals.size)
        self.mode = mode
        bits = K.build_stack_bits(vals, mode == "max")
        self.bp = BitVector(bits)
        self.word_min = K.word_min_excess(bits)
        self.sb_min = K.superblock_min_excess(bits)
        self.sparse = K.build_sparse_rightmost(self.sb_min)

    @property
    def kernel(self):
        return (self.bp.words, self.bp.sb_ranks, self.word_min, self.sb_min, self.sparse)

    def __len__(self):
        return self.length

    def query(self, i, j):
        if not (1 <= i <= j <= self.length):
            raise RangeError(f"rmq range [{i}, {j}] invalid for length {self.length}")
        return int(K.rmq_query(*self.kernel, i, j))

    def query_many(self, lefts, rights):
        lefts = np.asarray(lefts, dtype=np.int64)
        rights = np.asarray(rights, dtype=np.int64)
        if lefts.size and (lefts.min() < 1 or rights.max() > self.length or np.any(lefts > rights)):
            raise RangeError("rmq range out of bounds")
        return _query_many(*self.kernel, lefts, rights)

    def bits_used(self):
        return self.bp.bits_used() + self.word_min.size * 8 + self.sb_min.size * 32 + self.sparse.size * 32 + 2 * 64

    def arrays(self):
        meta = np.array([self.length, 1 if self.mode == "max" else 0], dtype=np.int64)
        return [meta, *self.bp.arrays(), self.word_min, self.sb_min, self.sparse]

    @classmethod
    def from_arrays(cls, arrs):
        idx = cls.__new__(cls)
        meta = arrs[0]
        idx.length = int(meta[0])
        idx.mode = "max" if int(meta[1]) else "min"
        idx.bp = BitVector.from_arrays(arrs[1:4])
        idx.word_min = arrs[4]
        idx.sb_min = arrs[5]
        idx.sparse = arrs[6]
        if idx.sparse.ndim == 1:
            idx.sparse = idx.sparse.reshape(-1, max(idx.sb_min.size, 1))
        return idx

    def __repr__(self):
        return f"RangeArgIndex(length={self.length}, mode={self.mode!r})"


@njit(cache=True)
def _query_many(words, sb_ranks, word_min, sb_min, sparse, lefts, rights):
    out = np.empty(lefts.shape[0], dtype=np.int64)
    for t in range(lefts.shape[0]):
        out[t] = K.rmq_query(words, sb_ranks, word_min, sb_min, sparse, lefts[t], rights[t])
    return out
