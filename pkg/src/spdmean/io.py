"""Plain-text matrix files and CSV convergence traces.

Matrix files start with a ``rows cols`` line followed by whitespace
separated rows; lines beginning with ``#`` are ignored. Matrices are
written with 17 significant digits in scientific notation, which
round-trips doubles exactly.
"""

import csv
import io as _io
from dataclasses import dataclass
from typing import Optional

import numpy as np

TRACE_COLUMNS = ("case", "alg", "step", "rel_error", "gamma", "seconds")


@dataclass
class TraceRow:
    case: str
    alg: str
    step: int
    rel_error: float
    gamma: Optional[float] = None
    seconds: float = 0.0


def parse_matrix(text):
    """Parse a matrix from the text format."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty matrix file")
    try:
        rows, cols = (int(v) for v in lines[0].split())
    except ValueError:
        raise ValueError(f"bad header {lines[0]!r}; expected 'rows cols'") from None
    if rows < 1 or cols < 1:
        raise ValueError(f"bad dimensions {rows}x{cols}")
    values = [float(v) for ln in lines[1:] for v in ln.split()]
    if len(values) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, found {len(values)}")
    m = np.array(values, dtype=float).reshape(rows, cols)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def format_matrix(m):
    m = np.atleast_2d(np.asarray(m, dtype=float))
    out = [f"{m.shape[0]} {m.shape[1]}"]
    out += [" ".join(f"{v:.16e}" for v in row) for row in m]
    return "\n".join(out) + "\n"


def read_matrix(path):
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def write_matrix(m, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_matrix(m))


def _num(v):
    return "" if v is None else f"{v:.6e}"


def write_trace(rows, fh, header=True):
    """Write trace rows as CSV to the text stream `fh`."""
    w = csv.writer(fh, lineterminator="\n")
    if header:
        w.writerow(TRACE_COLUMNS)
    for r in rows:
        w.writerow([r.case, r.alg, r.step, _num(r.rel_error), _num(r.gamma), f"{r.seconds:.6f}"])


def format_trace(rows):
    buf = _io.StringIO()
    write_trace(rows, buf)
    return buf.getvalue()


def read_trace(fh):
    """Read CSV written by :func:`write_trace` back into rows."""
    reader = csv.DictReader(fh)
    if tuple(reader.fieldnames or ()) != TRACE_COLUMNS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    rows = []
    for d in reader:
        rows.append(TraceRow(d["case"], d["alg"], int(d["step"]),
                             float(d["rel_error"]) if d["rel_error"] else None,
                             float(d["gamma"]) if d["gamma"] else None,
                             float(d["seconds"])))
    return rows
