"""On-disk formats: JSONL text corpora and EMB1 binary embedding matrices.

EMB1 layout (little-endian throughout):

    bytes 0..3    magic b"EMB1"
    bytes 4..7    uint32 format version (must be 1)
    bytes 8..11   uint32 n_rows
    bytes 12..15  uint32 n_cols
    bytes 16..    n_rows * n_cols IEEE-754 float32 values, row-major

Any bytes past the declared payload are an error.  Values are stored as
float32 (matching common model-output precision); downstream arithmetic
promotes to float64.  Loaders reject non-finite values so later stages
never have to re-check.
"""

import json
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    BadMagic,
    DuplicateId,
    InvalidValue,
    IoFailure,
    MalformedLine,
    MissingFile,
    NonFiniteValue,
    TrailingBytes,
    TruncatedPayload,
    UnsupportedVersion,
)

EMB1_MAGIC = b"EMB1"
EMB1_VERSION = 1
_HEADER = struct.Struct("<4sIII")


@dataclass
class TextCorpus:
    """An ordered list of (id, text) records read from a JSONL file."""

    records: list  # list of (id, text) tuples
    source_path: str = ""

    def __post_init__(self):
        if not self.records:
            raise InvalidValue("corpus must contain at least one record")
        seen = set()
        for rid, _ in self.records:
            if not rid:
                raise InvalidValue("record ids must be non-empty")
            if rid in seen:
                raise DuplicateId(rid)
            seen.add(rid)

    def __len__(self):
        return len(self.records)

    @property
    def ids(self):
        return [rid for rid, _ in self.records]

    @property
    def texts(self):
        return [text for _, text in self.records]


@dataclass
class EmbeddingMatrix:
    """An N x d matrix of float32 feature vectors, one row per text."""

    data: np.ndarray
    label: str = field(default="")

    def __post_init__(self):
        arr = np.ascontiguousarray(self.data, dtype=np.float32)
        if arr.ndim != 2:
            raise InvalidValue(f"embedding data must be 2-D, got {arr.ndim}-D")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise InvalidValue(f"embedding matrix must be non-empty, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            row, col = np.argwhere(~np.isfinite(arr))[0]
            raise NonFiniteValue(int(row), int(col))
        self.data = arr

    @property
    def n_rows(self):
        return self.data.shape[0]

    @property
    def n_cols(self):
        return self.data.shape[1]


def read_text_corpus(path):
    """Read a JSONL corpus: one object with string "id" and "text" per line.

    Blank lines are skipped; other keys are ignored.  Record order equals
    line order.
    """
    path = Path(path)
    if not path.is_file():
        raise MissingFile(f"no such corpus file: {path}")
    records = []
    seen = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedLine(line_no, f"invalid JSON ({exc.msg})") from exc
            if not isinstance(obj, dict):
                raise MalformedLine(line_no, "record is not a JSON object")
            rid = obj.get("id")
            text = obj.get("text")
            if not isinstance(rid, str) or not rid:
                raise MalformedLine(line_no, 'missing or non-string "id"')
            if not isinstance(text, str):
                raise MalformedLine(line_no, 'missing or non-string "text"')
            if rid in seen:
                raise DuplicateId(rid)
            seen.add(rid)
            records.append((rid, text))
    if not records:
        raise MalformedLine(0, "corpus file contains no records")
    return TextCorpus(records=records, source_path=str(path))


def read_embeddings(path):
    """Read an EMB1 file into an EmbeddingMatrix (label = file stem)."""
    path = Path(path)
    if not path.is_file():
        raise MissingFile(f"no such embedding file: {path}")
    blob = path.read_bytes()
    if len(blob) < 4 or blob[:4] != EMB1_MAGIC:
        raise BadMagic(f"{path}: not an EMB1 file")
    if len(blob) < _HEADER.size:
        raise TruncatedPayload(f"{path}: header cut short")
    _, version, n_rows, n_cols = _HEADER.unpack_from(blob)
    if version != EMB1_VERSION:
        raise UnsupportedVersion(f"{path}: version {version}, expected {EMB1_VERSION}")
    if n_rows < 1 or n_cols < 1:
        raise InvalidValue(f"{path}: declared shape {n_rows}x{n_cols} is empty")
    expected = n_rows * n_cols * 4
    actual = len(blob) - _HEADER.size
    if actual < expected:
        raise TruncatedPayload(
            f"{path}: payload holds {actual // 4} floats, header declares {n_rows * n_cols}"
        )
    if actual > expected:
        raise TrailingBytes(f"{path}: {actual - expected} bytes past declared payload")
    flat = np.frombuffer(blob, dtype="<f4", offset=_HEADER.size)
    arr = flat.reshape(n_rows, n_cols).copy()
    bad = ~np.isfinite(arr)
    if bad.any():
        row, col = np.argwhere(bad)[0]
        raise NonFiniteValue(int(row), int(col))
    return EmbeddingMatrix(data=arr, label=path.stem)


def write_embeddings(matrix, path):
    """Write an EmbeddingMatrix as an EMB1 file; read_embeddings round-trips bit-exactly."""
    header = _HEADER.pack(EMB1_MAGIC, EMB1_VERSION, matrix.n_rows, matrix.n_cols)
    payload = np.ascontiguousarray(matrix.data, dtype="<f4").tobytes()
    try:
        with open(path, "wb") as fh:
            fh.write(header)
            fh.write(payload)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
