"""Signal file I/O: one floating-point sample per line or a single CSV column.

An optional single non-numeric first line is treated as a header and echoed
back on save, so output mirrors input.  Loading rejects signals whose
length is not a power of two.
"""

import numpy as np

__all__ = ["load_signal", "save_signal"]


def _parse_line(line):
    fields = [f.strip() for f in line.split(",")]
    fields = [f for f in fields if f]
    if len(fields) != 1:
        raise ValueError(f"expected a single column, got {len(fields)} fields: {line!r}")
    return float(fields[0])


def load_signal(path):
    """Read a signal file; returns ``(values, header_or_None)``."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError(f"{path}: empty signal file")
    header = None
    try:
        _parse_line(lines[0])
    except ValueError:
        header = lines[0]
        lines = lines[1:]
    values = np.array([_parse_line(ln) for ln in lines])
    n = values.size
    if n < 2 or n & (n - 1):
        raise ValueError(f"{path}: signal length {n} is not a power of two (>= 2)")
    return values, header


def save_signal(path, values, header=None):
    """Write one sample per line, preceded by ``header`` when given."""
    with open(path, "w", encoding="utf-8") as fh:
        if header is not None:
            fh.write(header + "\n")
        for v in np.asarray(values, dtype=np.float64):
            fh.write(f"{v!r}\n")
