"""Disk cache for computed Frobenius traces.

Single-file binary format: magic, version byte, a little-endian u32 length
prefix plus JSON metadata, a u64 record count, sorted fixed-width records
(A: i64, B: i64, p: u32, a_p: i32, little-endian), and an 8-byte blake2b
checksum of the record block.  Files are immutable; merging is a pure
function over loaded caches.
"""

import hashlib
import json
import struct
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConflictingEntry, CorruptFile

MAGIC = b"ETRC"
VERSION = 1
_RECORD = struct.Struct("<qqIi")


def _checksum(block: bytes) -> bytes:
    return hashlib.blake2b(block, digest_size=8).digest()


def _combine_bound(a: int | None, b: int | None) -> int | None:
    if a is None or b is None:
        return None
    return max(a, b)


@dataclass
class TraceCache:
    entries: dict[tuple[int, int, int], int] = field(default_factory=dict)
    height_bound: int | None = None
    prime_bound: int | None = None

    def put(self, A: int, B: int, p: int, a_p: int) -> None:
        if a_p * a_p > 4 * p:
            raise ValueError(f"a_p={a_p} violates the Hasse bound at p={p}")
        key = (A, B, p)
        old = self.entries.get(key)
        if old is not None and old != a_p:
            raise ConflictingEntry(f"{key}: {old} != {a_p}")
        self.entries[key] = a_p

    def get(self, A: int, B: int, p: int) -> int | None:
        return self.entries.get((A, B, p))


def save(cache: TraceCache, path: str | Path) -> None:
    meta = json.dumps(
        {"height_bound": cache.height_bound, "prime_bound": cache.prime_bound},
        sort_keys=True,
    ).encode()
    records = b"".join(
        _RECORD.pack(A, B, p, a) for (A, B, p), a in sorted(cache.entries.items())
    )
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(bytes([VERSION]))
        fh.write(struct.pack("<I", len(meta)))
        fh.write(meta)
        fh.write(struct.pack("<Q", len(cache.entries)))
        fh.write(records)
        fh.write(_checksum(records))


def load(path: str | Path) -> TraceCache:
    data = Path(path).read_bytes()
    if len(data) < 4 + 1 + 4 or data[:4] != MAGIC:
        raise CorruptFile(f"{path}: bad magic")
    if data[4] != VERSION:
        raise CorruptFile(f"{path}: unsupported version {data[4]}")
    off = 5
    (meta_len,) = struct.unpack_from("<I", data, off)
    off += 4
    try:
        meta = json.loads(data[off : off + meta_len])
    except ValueError as exc:
        raise CorruptFile(f"{path}: bad metadata") from exc
    off += meta_len
    (count,) = struct.unpack_from("<Q", data, off)
    off += 8
    block_len = count * _RECORD.size
    if len(data) != off + block_len + 8:
        raise CorruptFile(f"{path}: truncated or padded record block")
    block = data[off : off + block_len]
    if _checksum(block) != data[off + block_len :]:
        raise CorruptFile(f"{path}: checksum mismatch")
    cache = TraceCache(
        height_bound=meta.get("height_bound"), prime_bound=meta.get("prime_bound")
    )
    for i in range(count):
        A, B, p, a = _RECORD.unpack_from(block, i * _RECORD.size)
        if a * a > 4 * p:
            raise CorruptFile(f"{path}: Hasse violation in record {i}")
        cache.entries[(A, B, p)] = a
    return cache


def merge(c1: TraceCache, c2: TraceCache) -> TraceCache:
    """Union of two caches; any key disagreement is an upstream bug."""
    out = TraceCache(
        entries=dict(c1.entries),
        height_bound=_combine_bound(c1.height_bound, c2.height_bound),
        prime_bound=_combine_bound(c1.prime_bound, c2.prime_bound),
    )
    for key, a in c2.entries.items():
        old = out.entries.get(key)
        if old is not None and old != a:
            raise ConflictingEntry(f"{key}: {old} != {a}")
        out.entries[key] = a
    return out


def export_csv(cache: TraceCache, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write("A,B,p,a_p\n")
        for (A, B, p), a in sorted(cache.entries.items()):
            fh.write(f"{A},{B},{p},{a}\n")
