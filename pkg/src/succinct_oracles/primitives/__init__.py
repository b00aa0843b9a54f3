"""Succinct building blocks: bitvectors, sequences and range-arg indexes."""

from .bitvector import BitVector
from .rmq import RangeArgIndex
from .sequence import LabelSequence

__all__ = ["BitVector", "LabelSequence", "RangeArgIndex"]
