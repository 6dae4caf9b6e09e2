"""EMB1 file writing and JSONL corpus reading.

EMB1 is the consumer toolkit's binary matrix format (its external
interface, reimplemented here from the format definition): little-endian
magic "EMB1", uint32 version 1, uint32 n_rows, uint32 n_cols, then
row-major float32 values with nothing after them.
"""

import json
import struct
from pathlib import Path

import numpy as np

EMB1_MAGIC = b"EMB1"
EMB1_VERSION = 1
_HEADER = struct.Struct("<4sIII")


def write_emb1(matrix, path):
    """Write a 2-D float array as an EMB1 file (values cast to float32)."""
    arr = np.ascontiguousarray(matrix, dtype="<f4")
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"EMB1 needs a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("EMB1 forbids non-finite values")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(EMB1_MAGIC, EMB1_VERSION, arr.shape[0], arr.shape[1]))
        fh.write(arr.tobytes())


def read_emb1(path):
    """Read an EMB1 file back (used by tests to check round-trips)."""
    blob = Path(path).read_bytes()
    magic, version, n_rows, n_cols = _HEADER.unpack_from(blob)
    if magic != EMB1_MAGIC or version != EMB1_VERSION:
        raise ValueError(f"{path} is not a version-{EMB1_VERSION} EMB1 file")
    return np.frombuffer(blob, dtype="<f4", offset=_HEADER.size).reshape(n_rows, n_cols).copy()


def read_corpus(path):
    """Read a JSONL corpus: per line one object with string id and text.

    Returns (ids, texts) in file order; blank lines are skipped and ids
    must be unique and non-empty.
    """
    ids = []
    texts = []
    seen = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            obj = json.loads(line)
            rid, text = obj.get("id"), obj.get("text")
            if not isinstance(rid, str) or not rid or not isinstance(text, str):
                raise ValueError(f"{path}:{line_no}: need string 'id' and 'text'")
            if rid in seen:
                raise ValueError(f"{path}:{line_no}: duplicate id {rid!r}")
            seen.add(rid)
            ids.append(rid)
            texts.append(text)
    if not ids:
        raise ValueError(f"{path}: corpus contains no records")
    return ids, texts
