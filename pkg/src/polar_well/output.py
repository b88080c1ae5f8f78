"""Delimited and JSON writers shared by the command-line tools.

Data files carry no timestamps, so identical configurations produce
byte-identical output.  Verification reports do carry a timestamp (it is
part of their schema); set SOURCE_DATE_EPOCH to pin it for reproducible
runs.
"""

from __future__ import annotations

import csv
import json
import os
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


def format_float(value) -> str:
    """17 significant digits: enough to round-trip any double."""
    return f"{float(value):.17g}"


def _format_cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format_float(value)


def utc_timestamp() -> str:
    """ISO-8601 UTC stamp; honors SOURCE_DATE_EPOCH for reproducible output."""
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    moment = int(epoch) if epoch is not None else time.time()
    return datetime.fromtimestamp(moment, tz=timezone.utc).isoformat()


def prepare_target(path: Path, overwrite: bool) -> None:
    """Create the parent directory; refuse to clobber without `overwrite`."""
    path.parent.mkdir(parents=True, exist_ok=True)
    if path.exists() and not overwrite:
        raise FileExistsError(f"{path} already exists; pass --overwrite to replace it")


def write_csv(
    path: Path,
    header: Sequence[str],
    rows: Iterable[Sequence],
    *,
    overwrite: bool = False,
) -> None:
    prepare_target(path, overwrite)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_format_cell(cell) for cell in row])


def write_json(path: Path, payload: dict, *, overwrite: bool = False) -> None:
    prepare_target(path, overwrite)
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, allow_nan=False)
        fh.write("\n")
