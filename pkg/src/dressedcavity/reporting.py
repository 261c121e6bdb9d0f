"""Deterministic CSV and manifest emission.

CSV bodies must be byte-identical across runs of the same config: floats are
written with repr (shortest round trip), metadata lives in leading comment
lines, and wall-clock only ever appears in the JSON manifest.  Manifests are
written atomically (write to temp file, then rename).
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence


def format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):  # includes numpy float64; repr of the builtin round-trips
        return repr(float(value))
    if isinstance(value, (int, str)):
        return str(value)
    return repr(value)


def write_csv(path: Path, columns: Sequence[str], rows: Iterable[Sequence[Any]],
              metadata: Mapping[str, Any] | None = None) -> Path:
    """Write a CSV with `# key = value` metadata lines above the header.

    Column names carry their unit in square brackets, e.g. `t[natural-time]`.
    """
    buffer = io.StringIO()
    for key, value in (metadata or {}).items():
        buffer.write(f"# {key} = {format_value(value)}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(buffer.getvalue(), encoding="utf-8")
    return path


def read_csv(path: Path) -> tuple[dict[str, str], list[str], list[list[str]]]:
    """Inverse of write_csv; values come back as strings."""
    metadata: dict[str, str] = {}
    data_lines: list[str] = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            metadata[key.strip()] = value.strip()
        elif line:
            data_lines.append(line)
    parsed = list(csv.reader(data_lines))
    return metadata, parsed[0] if parsed else [], parsed[1:]


def sha256_of(path: Path) -> str:
    digest = hashlib.sha256()
    digest.update(path.read_bytes())
    return digest.hexdigest()


def write_manifest(out_dir: Path, payload: Mapping[str, Any],
                   artifact_paths: Sequence[Path]) -> Path:
    """Atomically write manifest.json listing artifacts with checksums."""
    manifest = dict(payload)
    manifest["outputs"] = [
        {"file": p.name, "sha256": sha256_of(p), "bytes": p.stat().st_size}
        for p in sorted(artifact_paths, key=lambda p: p.name)
    ]
    out_dir.mkdir(parents=True, exist_ok=True)
    target = out_dir / "manifest.json"
    tmp = out_dir / ".manifest.json.tmp"
    tmp.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    os.replace(tmp, target)
    return target
