"""CSV and text-report emission.

CSV files carry one `#` metadata line (tool version, command line, seed),
then a header row, then rows in scientific notation with 9 significant
digits, `.` decimal separator and UNIX newlines.  Writes go through a
temporary file in the target directory followed by an atomic rename, so a
failed run never leaves a partial file behind.
"""

from __future__ import annotations

import os
import tempfile
from typing import Sequence

import numpy as np

CSV_FORMAT = "{:.8e}"  # 9 significant digits


def metadata_line(version: str, command: str, seed) -> str:
    seed_text = "none" if seed is None else str(seed)
    return f"# fluxring {version} | cmd: {command} | seed: {seed_text}"


def render_csv(
    header: Sequence[str], columns: Sequence[np.ndarray], meta: str
) -> str:
    lengths = {len(c) for c in columns}
    if len(lengths) != 1:
        raise ValueError(f"columns have unequal lengths {sorted(lengths)}")
    if len(header) != len(columns):
        raise ValueError("header and column counts differ")
    lines = [meta, ",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(CSV_FORMAT.format(float(x)) for x in row))
    return "\n".join(lines) + "\n"


def write_text_atomic(path, content: str) -> None:
    """Write content to path via temp file + rename in the same directory."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".fluxring-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(content)
        os.replace(tmp_path, path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise


def write_csv_atomic(
    path, header: Sequence[str], columns: Sequence[np.ndarray], meta: str
) -> None:
    write_text_atomic(path, render_csv(header, columns, meta))
