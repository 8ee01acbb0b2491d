"""Deterministic CSV and metadata writers.

Same config + version must give byte-identical files: floats are formatted
with %.17g (shortest round-trip), rows are written in a fixed order, and
every artifact gets a JSON sidecar echoing the full scenario plus its hash.
"""

from __future__ import annotations

import json
import os
from typing import Iterable, Sequence

from . import __version__


def fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")


def write_meta(path: str, payload: dict) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    payload = dict(payload)
    payload.setdefault("code_version", __version__)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
