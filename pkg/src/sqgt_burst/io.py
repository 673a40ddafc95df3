"""Plain-text persistence for matrices and schemes.

Matrix file: a header line ``"rows cols"`` followed by one line of ``0``/``1``
characters per row.  A scheme is stored as a matrix file plus a JSON
metadata file with keys ``model``, ``n``, ``ell``, ``thresholds`` and
``components`` (each ``{"name": role, "rows": [start, stop]}``).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .core import BurstSpace, Component, Scheme, as_binary_matrix
from .errors import ParameterError, ParseError, ValidationError

METADATA_KEYS = ("model", "n", "ell", "thresholds", "components")


def format_matrix(M) -> str:
    M = as_binary_matrix(M)
    lines = [f"{M.shape[0]} {M.shape[1]}"]
    lines += ["".join("1" if v else "0" for v in row) for row in M]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("empty file", line=1)
    header = lines[0].split()
    if len(header) != 2 or not all(tok.isdigit() for tok in header):
        raise ParseError(f"header must be 'rows cols', got {lines[0]!r}", line=1)
    rows, cols = map(int, header)
    if rows < 1 or cols < 1:
        raise ParseError(f"matrix must be at least 1x1, got {rows}x{cols}", line=1)
    body = lines[1:]
    if len(body) != rows:
        raise ParseError(f"expected {rows} rows, found {len(body)}", line=len(lines) + 1)
    M = np.zeros((rows, cols), np.uint8)
    for r, line in enumerate(body):
        lineno = r + 2
        if len(line) != cols:
            raise ParseError(f"row has {len(line)} characters, expected {cols}", line=lineno)
        bad = set(line) - {"0", "1"}
        if bad:
            raise ParseError(f"unexpected characters {sorted(bad)}", line=lineno)
        M[r] = np.frombuffer(line.encode(), np.uint8) - ord("0")
    return M


def save_matrix(M, path) -> None:
    Path(path).write_text(format_matrix(M))


def load_matrix(path) -> np.ndarray:
    return parse_matrix(Path(path).read_text())


class SchemeFiles(NamedTuple):
    matrix: Path
    metadata: Path

    @classmethod
    def from_prefix(cls, prefix) -> "SchemeFiles":
        prefix = str(prefix)
        return cls(Path(prefix + ".matrix"), Path(prefix + ".json"))


def _files(target) -> SchemeFiles:
    if isinstance(target, SchemeFiles):
        return target
    if isinstance(target, tuple) and len(target) == 2:
        return SchemeFiles(Path(target[0]), Path(target[1]))
    return SchemeFiles.from_prefix(target)


def scheme_metadata(scheme: Scheme) -> dict:
    return {
        "model": scheme.space.kind,
        "n": scheme.n,
        "ell": scheme.ell,
        "thresholds": list(scheme.thresholds.values),
        "components": [{"name": c.name, "rows": [c.start, c.stop]} for c in scheme.components],
    }


def save_scheme(scheme: Scheme, target) -> SchemeFiles:
    files = _files(target)
    save_matrix(scheme.matrix, files.matrix)
    files.metadata.write_text(json.dumps(scheme_metadata(scheme)) + "\n")
    return files


def scheme_from_metadata(meta: dict, matrix: np.ndarray) -> Scheme:
    if not isinstance(meta, dict):
        raise ValidationError("metadata must be a JSON object")
    missing = [k for k in METADATA_KEYS if k not in meta]
    if missing:
        raise ValidationError(f"metadata is missing keys {missing}")
    try:
        comps = []
        for entry in meta["components"]:
            start, stop = entry["rows"]
            comps.append(Component(str(entry["name"]), int(start), int(stop)))
        return Scheme(
            matrix,
            tuple(meta["thresholds"]),
            int(meta["n"]),
            BurstSpace(str(meta["model"]), int(meta["ell"])),
            tuple(comps),
        )
    except (ParameterError, KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ValidationError(f"inconsistent scheme metadata: {exc}") from None


def load_scheme(target) -> Scheme:
    files = _files(target)
    matrix = load_matrix(files.matrix)
    try:
        meta = json.loads(files.metadata.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    return scheme_from_metadata(meta, matrix)
