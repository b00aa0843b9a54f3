"""The SNO1 binary container.

    magic  b"SNO1"
    u8     version (1)
    u8     class tag (ClassTag.code)
    u8     impl tag (0 unified, 1 wavelet-circle, 2 wavelet-trapezoid)
    <Q n, <Q N
    then one <Q-length-prefixed section per component, in the oracle's
    fixed order; a trailing degrees section is optional.

A section is a run of arrays, each stored as dtype code (u8), ndim (u8),
ndim <Q extents and the raw little-endian bytes.
"""

import struct

import numpy as np

from .circle_oracle import CircleOracle
from .diagrams import ClassTag
from .errors import ValidationError
from .polygon_oracle import PolygonOracle
from .trapezoid_oracle import TrapezoidOracle

MAGIC = b"SNO1"
VERSION = 1

IMPL_UNIFIED = 0
IMPL_CIRCLE = 1
IMPL_TRAPEZOID = 2
IMPL_NAMES = {IMPL_UNIFIED: "unified", IMPL_CIRCLE: "wavelet-circle", IMPL_TRAPEZOID: "wavelet-trapezoid"}

_DTYPES = [np.dtype(c) for c in ("<u8", "<i8", "u1", "?", "i1", "<i4", "<u4", "<i2", "<u2")]
_HEAD = struct.Struct("<4sBBBQQ")


def _pack_array(a):
    a = np.ascontiguousarray(a)
    dt = a.dtype.newbyteorder("<") if a.dtype.byteorder == ">" else a.dtype
    code = next((i for i, d in enumerate(_DTYPES) if d == dt), None)
    if code is None:
        raise TypeError(f"cannot store dtype {a.dtype}")
    head = struct.pack(f"<BB{a.ndim}Q", code, a.ndim, *a.shape)
    return head + a.astype(_DTYPES[code], copy=False).tobytes()


def _unpack_arrays(buf):
    out = []
    p = 0
    while p < len(buf):
        code, ndim = struct.unpack_from("<BB", buf, p)
        p += 2
        if code >= len(_DTYPES):
            raise ValidationError(f"bad dtype code {code}", rule="container")
        shape = struct.unpack_from(f"<{ndim}Q", buf, p)
        p += 8 * ndim
        dt = _DTYPES[code]
        size = int(np.prod(shape, dtype=np.int64)) * dt.itemsize
        if p + size > len(buf):
            raise ValidationError("truncated array", rule="container")
        out.append(np.frombuffer(buf, dtype=dt, count=size // dt.itemsize, offset=p).reshape(shape).copy())
        p += size
    return out


def impl_of(oracle):
    if isinstance(oracle, CircleOracle):
        return IMPL_CIRCLE
    if isinstance(oracle, TrapezoidOracle):
        return IMPL_TRAPEZOID
    if isinstance(oracle, PolygonOracle):
        return IMPL_UNIFIED
    raise TypeError(f"not an oracle: {type(oracle).__name__}")


def dumps(oracle):
    impl = impl_of(oracle)
    parts = [_HEAD.pack(MAGIC, VERSION, ClassTag.parse(oracle.cls).code, impl, oracle.n, oracle.N)]
    for section in oracle.arrays():
        body = b"".join(_pack_array(a) for a in section)
        parts.append(struct.pack("<Q", len(body)))
        parts.append(body)
    return b"".join(parts)


def loads(data, wrap_scan=True, literal=False):
    data = bytes(data)
    if len(data) < _HEAD.size:
        raise ValidationError("file too short for an SNO1 header", rule="container")
    magic, version, cls_code, impl, n, N = _HEAD.unpack_from(data, 0)
    if magic != MAGIC:
        raise ValidationError(f"bad magic {magic!r}", rule="magic")
    if version != VERSION:
        raise ValidationError(f"unsupported version {version}", rule="version")
    if cls_code >= len(ClassTag) or impl not in IMPL_NAMES:
        raise ValidationError("bad class or impl tag", rule="container")
    p = _HEAD.size
    sections = []
    while p < len(data):
        if p + 8 > len(data):
            raise ValidationError("truncated section header", rule="container")
        (size,) = struct.unpack_from("<Q", data, p)
        p += 8
        if p + size > len(data):
            raise ValidationError("truncated section", rule="container")
        sections.append(_unpack_arrays(data[p:p + size]))
        p += size
    cls = ClassTag.from_code(cls_code)
    expected = {IMPL_UNIFIED: 8, IMPL_CIRCLE: 2, IMPL_TRAPEZOID: 4}[impl]
    if len(sections) not in (expected, expected + 1):
        raise ValidationError(f"expected {expected} sections, found {len(sections)}", rule="container")
    if impl == IMPL_UNIFIED:
        return PolygonOracle.from_arrays(n, N, cls, sections, wrap_scan=wrap_scan)
    if impl == IMPL_CIRCLE:
        return CircleOracle.from_arrays(n, sections)
    return TrapezoidOracle.from_arrays(n, sections, literal=literal)


def save(oracle, path):
    with open(path, "wb") as fh:
        fh.write(dumps(oracle))


def load(path, **kw):
    with open(path, "rb") as fh:
        return loads(fh.read(), **kw)
