import numpy as np
from numba import njit

from ..errors import NotFoundError, RangeError, ValidationError
from . import _kernels as K

HEADER_BITS = 64  # stored length


def pack_bits(bits):
    """Pack a 0/1 array into little-endian uint64 words, plus one spare
    zero word so a rank at the very end can read a word unconditionally."""
    bits = np.asarray(bits, dtype=np.bool_)
    packed = np.packbits(bits, bitorder="little")
    nbytes = (len(bits) // 64 + 1) * 8
    packed = np.concatenate([packed, np.zeros(nbytes - len(packed), dtype=np.uint8)])
    return packed.view("<u8").astype(np.uint64, copy=False)


def superblock_ranks(bits):
    """Rank samples for the 512-bit superblocks (plus a final one).

    Two superblocks share a row of three int64: column 0 holds both
    cumulative counts of ones (32 bits each, the even superblock low), and
    columns 1 and 2 pack, in 9-bit fields, the ones before words 1..7 of
    the even and the odd superblock.  96 bits per 512 data bits.
    """
    bits = np.asarray(bits, dtype=np.bool_)
    n = len(bits)
    if n >= 1 << 32:
        raise ValidationError("bitvectors are limited to 2^32 - 1 bits", rule="length")
    sbs = -(-n // K.SB_BITS) + 1
    rows = (sbs + 1) // 2
    csum = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(bits, out=csum[1:])
    idx = np.minimum(np.arange(2 * rows * K.WORDS_PER_SB) * 64, n)
    wc = csum[idx].reshape(2 * rows, K.WORDS_PER_SB)
    base = wc[:, 0]
    rel = wc[:, 1:] - base[:, None]
    sub = np.zeros(2 * rows, dtype=np.int64)
    for k in range(1, K.WORDS_PER_SB):
        sub |= rel[:, k - 1] << (9 * (k - 1))
    cum = base[0::2] | (base[1::2] << 32)
    return np.ascontiguousarray(np.stack([cum, sub[0::2], sub[1::2]], axis=1))


def total_ones(sb_ranks):
    last = 2 * sb_ranks.shape[0] - 1
    return int(K.sb_cum(sb_ranks, last))


class BitVector:
    """Static bitvector with rank/select/access, positions 1-based.

    ``rank(b, i)`` counts ``b`` among bits 1..i; ``select(b, j)`` returns the
    position of the j-th ``b``.  Rank reads one 512-bit sample, one packed
    per-word count and a single popcount; select binary-searches the samples
    and then walks the packed counts.
    """

    __slots__ = ("length", "words", "sb_ranks", "ones")

    def __init__(self, bits=()):
        bits = np.asarray(bits, dtype=np.bool_).ravel()
        self.length = int(len(bits))
        self.words = pack_bits(bits)
        self.sb_ranks = superblock_ranks(bits)
        self.ones = total_ones(self.sb_ranks)

    @classmethod
    def _from_parts(cls, length, words, sb_ranks):
        bv = cls.__new__(cls)
        bv.length = int(length)
        bv.words = words
        bv.sb_ranks = sb_ranks
        bv.ones = total_ones(sb_ranks)
        return bv

    @property
    def kernel(self):
        return (self.words, self.sb_ranks)

    def __len__(self):
        return self.length

    def count(self, b):
        return self.ones if b else self.length - self.ones

    def rank(self, b, i):
        if not 0 <= i <= self.length:
            raise RangeError(f"rank position {i} outside 0..{self.length}")
        r1 = int(K.bv_rank1(self.words, self.sb_ranks, i))
        return r1 if b else i - r1

    def select(self, b, j):
        if j < 1:
            raise RangeError(f"select occurrence {j} < 1")
        if j > self.count(b):
            raise NotFoundError(f"no {j}-th {int(bool(b))} (only {self.count(b)})")
        if b:
            return int(K.bv_select1(self.words, self.sb_ranks, j))
        return int(K.bv_select0(self.words, self.sb_ranks, j))

    def access(self, i):
        if not 1 <= i <= self.length:
            raise RangeError(f"access position {i} outside 1..{self.length}")
        return int(K.bv_access(self.words, i - 1))

    def __getitem__(self, i):
        return self.access(i)

    def to_numpy(self):
        raw = self.words.view(np.uint8)
        return np.unpackbits(raw, bitorder="little")[: self.length].astype(np.bool_)

    # batch forms used by the heavy tests; same kernels, one dispatch
    def rank_many(self, b, positions):
        positions = np.asarray(positions, dtype=np.int64)
        if positions.size and (positions.min() < 0 or positions.max() > self.length):
            raise RangeError("rank position out of range")
        r1 = _rank_many(self.words, self.sb_ranks, positions)
        return r1 if b else positions - r1

    def select_many(self, b, occurrences):
        occ = np.asarray(occurrences, dtype=np.int64)
        if occ.size and (occ.min() < 1 or occ.max() > self.count(b)):
            raise NotFoundError("select occurrence out of range")
        return _select_many(self.words, self.sb_ranks, occ, bool(b))

    def bits_used(self):
        return self.words.size * 64 + self.sb_ranks.size * 64 + HEADER_BITS

    def arrays(self):
        return [np.array([self.length], dtype=np.int64), self.words, self.sb_ranks]

    @classmethod
    def from_arrays(cls, arrs):
        return cls._from_parts(int(arrs[0][0]), arrs[1], arrs[2].reshape(-1, 3))

    def __repr__(self):
        return f"BitVector(length={self.length}, ones={self.ones})"


@njit(cache=True)
def _rank_many(words, sb_ranks, positions):
    out = np.empty(positions.shape[0], dtype=np.int64)
    for t in range(positions.shape[0]):
        out[t] = K.bv_rank1(words, sb_ranks, positions[t])
    return out


@njit(cache=True)
def _select_many(words, sb_ranks, occ, one):
    out = np.empty(occ.shape[0], dtype=np.int64)
    for t in range(occ.shape[0]):
        if one:
            out[t] = K.bv_select1(words, sb_ranks, occ[t])
        else:
            out[t] = K.bv_select0(words, sb_ranks, occ[t])
    return out
