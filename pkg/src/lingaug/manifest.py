"""Run manifests written beside every stage output.

A manifest records the command, seed, a hash of the effective parameters,
digests of inputs and outputs, and stage counts. It holds no timestamps or
host details, so rerunning a stage reproduces it byte for byte.
"""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Any, Iterable

from lingaug import __version__
from lingaug.io import sha256_file


def manifest_path(output: str | Path) -> Path:
    output = Path(output)
    return output.with_name(output.name + ".manifest.json")


def config_hash(params: dict[str, Any]) -> str:
    canonical = json.dumps(params, sort_keys=True, ensure_ascii=False, default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _rel(path: Path, start: Path) -> str:
    try:
        return Path(os.path.relpath(path.resolve(), start.resolve())).as_posix()
    except ValueError:  # different drive on Windows
        return path.resolve().as_posix()


def write_manifest(
    output: str | Path,
    command: str,
    params: dict[str, Any],
    seed: int | None,
    inputs: Iterable[str | Path] = (),
    outputs: Iterable[str | Path] = (),
    counts: dict[str, Any] | None = None,
) -> Path:
    output = Path(output)
    where = output.parent
    files = [output, *(Path(p) for p in outputs)]
    doc = {
        "tool": "lingaug",
        "version": __version__,
        "command": command,
        "seed": seed,
        "config_hash": config_hash(params),
        "params": params,
        "inputs": {_rel(Path(p), where): sha256_file(p) for p in inputs},
        "outputs": {_rel(p, where): sha256_file(p) for p in files if p.exists()},
        "counts": counts or {},
    }
    path = manifest_path(output)
    path.write_text(json.dumps(doc, indent=2, ensure_ascii=False, sort_keys=True, default=str) + "\n",
                    encoding="utf-8")
    return path
