"""Deterministic artifact writing: full-precision CSV/JSON, written to a
temporary file and renamed so no partial artifact ever lands on disk."""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any, Iterable, Sequence


def fmt(value: Any) -> str:
    """Round-trip text for a CSV cell."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(fmt(cell) for cell in row) for row in rows)
    return "\n".join(lines) + "\n"


def json_text(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def atomic_write_text(path: str | Path, text: str) -> None:
    """Write via a sibling temp file and rename into place."""
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def rows_as_json(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """The same table as a JSON array of row objects."""
    return json_text([dict(zip(header, row)) for row in rows])


def write_all(files: Sequence[tuple[str | Path, str]]) -> None:
    """Write a set of artifacts together: all temps first, then all renames,
    so an error while producing any file leaves none of them behind."""
    staged = []
    try:
        for path, text in files:
            path = Path(path)
            if path.parent and not path.parent.exists():
                path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_name(path.name + ".tmp")
            tmp.write_text(text)
            staged.append((tmp, path))
    except OSError:
        for tmp, _ in staged:
            tmp.unlink(missing_ok=True)
        raise
    for tmp, path in staged:
        os.replace(tmp, path)
