import numpy as np
from numba import njit

from ..errors import NotFoundError, RangeError, ValidationError
from . import _kernels as K
from .bitvector import pack_bits, superblock_ranks


def levels_for(sigma):
    """Bits per symbol, never below one so a level always exists."""
    return max(1, int(sigma - 1).bit_length())


class LabelSequence:
    """Sequence over {0..sigma-1} stored as a wavelet matrix.

    One bitvector per bit of the symbol code, most significant first; each
    level is stably partitioned by the previous bit.  rank/access cost
    O(levels) bitvector ranks, select O(levels) bitvector selects.
    """

    def __init__(self, labels=(), sigma=None):
        vals = np.asarray(labels, dtype=np.int64).ravel()
        if sigma is None:
            sigma = int(vals.max()) + 1 if vals.size else 1
        if sigma < 1:
            raise ValidationError(f"alphabet size {sigma} < 1", rule="alphabet")
        if vals.size and (vals.min() < 0 or vals.max() >= sigma):
            bad = int(vals[(vals < 0) | (vals >= sigma)][0])
            raise ValidationError(f"symbol {bad} outside 0..{sigma - 1}", rule="alphabet")
        self.length = int(vals.size)
        self.sigma = int(sigma)
        self.levels = levels_for(sigma)
        n = self.length
        nwords = n // 64 + 1
        rows = (-(-n // K.SB_BITS) + 2) // 2
        words = np.zeros((self.levels, nwords), dtype=np.uint64)
        ranks = np.zeros((self.levels, rows, 3), dtype=np.int64)
        zeros = np.zeros(self.levels, dtype=np.int64)
        cur = vals
        for lv in range(self.levels):
            bits = ((cur >> (self.levels - 1 - lv)) & 1).astype(np.bool_)
            words[lv] = pack_bits(bits)
            ranks[lv] = superblock_ranks(bits)
            zeros[lv] = n - int(bits.sum())
            cur = np.concatenate([cur[~bits], cur[bits]])
        self.words = words
        self.sb_ranks = ranks
        self.zeros = zeros

    @property
    def kernel(self):
        return (self.words, self.sb_ranks, self.zeros, self.levels)

    def __len__(self):
        return self.length

    def count(self, alpha):
        if not 0 <= alpha < self.sigma:
            return 0
        return int(K.wm_rank(self.words, self.sb_ranks, self.zeros, self.levels, alpha, self.length))

    def rank(self, alpha, i):
        if not 0 <= i <= self.length:
            raise RangeError(f"rank position {i} outside 0..{self.length}")
        if not 0 <= alpha < self.sigma:
            raise RangeError(f"symbol {alpha} outside alphabet")
        return int(K.wm_rank(self.words, self.sb_ranks, self.zeros, self.levels, alpha, i))

    def select(self, alpha, j):
        if not 0 <= alpha < self.sigma:
            raise RangeError(f"symbol {alpha} outside alphabet")
        if j < 1:
            raise RangeError(f"select occurrence {j} < 1")
        if j > self.count(alpha):
            raise NotFoundError(f"no {j}-th occurrence of {alpha}")
        return int(K.wm_select(self.words, self.sb_ranks, self.zeros, self.levels, alpha, j))

    def access(self, i):
        if not 1 <= i <= self.length:
            raise RangeError(f"access position {i} outside 1..{self.length}")
        return int(K.wm_access(self.words, self.sb_ranks, self.zeros, self.levels, i - 1))

    def __getitem__(self, i):
        return self.access(i)

    def to_numpy(self):
        return _access_all(self.words, self.sb_ranks, self.zeros, self.levels, self.length)

    def rank_many(self, alpha, positions):
        positions = np.asarray(positions, dtype=np.int64)
        return _rank_many(self.words, self.sb_ranks, self.zeros, self.levels, alpha, positions)

    def select_many(self, alpha, occurrences):
        occ = np.asarray(occurrences, dtype=np.int64)
        if occ.size and (occ.min() < 1 or occ.max() > self.count(alpha)):
            raise NotFoundError("select occurrence out of range")
        return _select_many(self.words, self.sb_ranks, self.zeros, self.levels, alpha, occ)

    def bits_used(self):
        return self.words.size * 64 + self.sb_ranks.size * 64 + self.zeros.size * 64 + 3 * 64

    def arrays(self):
        meta = np.array([self.length, self.sigma, self.levels], dtype=np.int64)
        return [meta, self.words, self.sb_ranks, self.zeros]

    @classmethod
    def from_arrays(cls, arrs):
        seq = cls.__new__(cls)
        meta, seq.words, seq.sb_ranks, seq.zeros = arrs
        seq.length, seq.sigma, seq.levels = (int(v) for v in meta)
        if seq.words.ndim == 1:
            seq.words = seq.words.reshape(seq.levels, -1)
            seq.sb_ranks = seq.sb_ranks.reshape(seq.levels, -1, 3)
        return seq

    def __repr__(self):
        return f"LabelSequence(length={self.length}, sigma={self.sigma})"


@njit(cache=True)
def _access_all(words, ranks, zeros, levels, n):
    out = np.empty(n, dtype=np.int64)
    for p in range(n):
        out[p] = K.wm_access(words, ranks, zeros, levels, p)
    return out


@njit(cache=True)
def _rank_many(words, ranks, zeros, levels, alpha, positions):
    out = np.empty(positions.shape[0], dtype=np.int64)
    for t in range(positions.shape[0]):
        out[t] = K.wm_rank(words, ranks, zeros, levels, alpha, positions[t])
    return out


@njit(cache=True)
def _select_many(words, ranks, zeros, levels, alpha, occ):
    out = np.empty(occ.shape[0], dtype=np.int64)
    for t in range(occ.shape[0]):
        out[t] = K.wm_select(words, ranks, zeros, levels, alpha, occ[t])
    return out
