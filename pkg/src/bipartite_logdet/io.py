"""Matrix Market, CSV and config-file serialization.

Floats are written with 17 significant digits, which round-trips every
IEEE double exactly.
"""

import csv
import enum
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .densela import Method, SymMatrix
from .errors import IoFailure, ParseError, UnsupportedFormat

SYMMETRIC_HEADER = "%%MatrixMarket matrix coordinate real symmetric"
RESULT_HEADER = ["model", "m", "n", "method", "logdet", "wall_time_ns", "seed"]
VERIFY_HEADER = ["m", "n", "seed", "lhs", "rhs", "gap", "pass"]
SWEEP_HEADER = ["n", "n_squared", "logdet_density"]
CONFIG_KEYS = {
    "m": int, "n": int, "s2": float, "sigma2": float, "tau2": float,
    "seed": int, "range_lo": float, "range_hi": float, "edge_prec_file": str,
}


def fmt(x):
    return format(float(x), ".17g")


class ModelKind(str, enum.Enum):
    BIPARTITE = "bipartite"
    STAR = "star"
    HOMOGENEOUS = "homogeneous"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ResultRow:
    model_kind: ModelKind
    m: int
    n: int
    method: Method
    logdet: float
    wall_time_ns: int
    seed: int | None = None

    def __post_init__(self):
        if not np.isfinite(self.logdet):
            raise ValueError("logdet must be finite")
        if self.wall_time_ns < 0:
            raise ValueError("wall_time_ns must be >= 0")


def _open(path, mode):
    try:
        return open(path, mode, newline="")
    except OSError as exc:
        raise IoFailure(path, exc.strerror or str(exc)) from exc


def write_matrix_market(a, path):
    """Write the lower triangle of ``a`` in coordinate/real/symmetric format, 1-based."""
    low = np.tril(np.ones_like(a.data, dtype=bool))
    # -0.0 is stored explicitly so the round-trip stays bit-exact
    rows, cols = np.nonzero(low & ((a.data != 0) | np.signbit(a.data)))
    lines = [SYMMETRIC_HEADER, f"{a.dim} {a.dim} {len(rows)}"]
    vals = a.data[rows, cols]
    lines.extend(f"{i + 1} {j + 1} {fmt(x)}" for i, j, x in zip(rows, cols, vals))
    try:
        with _open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoFailure(path, str(exc)) from exc


def _read_lines(path):
    try:
        with _open(path, "r") as fh:
            return fh.read().split("\n")
    except UnicodeDecodeError as exc:
        raise ParseError(0, f"not a text file: {exc}") from exc


def _parse_header(lines):
    if not lines or not lines[0].lower().startswith("%%matrixmarket"):
        raise ParseError(1, "missing %%MatrixMarket header")
    tokens = lines[0].lower().split()
    if len(tokens) != 5 or tokens[1] != "matrix":
        raise UnsupportedFormat(f"unrecognised header: {lines[0]!r}")
    return tokens[2], tokens[3], tokens[4]


def _data_lines(lines):
    """Yield (1-based line number, stripped text) for non-comment, non-blank lines."""
    for k, raw in enumerate(lines[1:], start=2):
        text = raw.strip()
        if text and not text.startswith("%"):
            yield k, text


def _parse_float(tok, line_no):
    try:
        return float(tok)
    except ValueError:
        raise ParseError(line_no, f"bad value {tok!r}") from None


def _parse_ints(toks, count, line_no):
    if len(toks) != count:
        raise ParseError(line_no, f"expected {count} integers, got {len(toks)} fields")
    try:
        return [int(t) for t in toks]
    except ValueError:
        raise ParseError(line_no, "expected integers") from None


def _read_coordinate(body, rows, cols, nnz, symmetric):
    out = np.zeros((rows, cols))
    seen = 0
    for line_no, text in body:
        toks = text.split()
        if len(toks) != 3:
            raise ParseError(line_no, f"expected 'i j value', got {text!r}")
        i, j = _parse_ints(toks[:2], 2, line_no)
        x = _parse_float(toks[2], line_no)
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise ParseError(line_no, f"index ({i}, {j}) out of range")
        if symmetric and j > i:
            raise ParseError(line_no, "symmetric files may only store the lower triangle")
        seen += 1
        if seen > nnz:
            raise ParseError(line_no, f"more entries than the declared nnz={nnz}")
        out[i - 1, j - 1] = x
        if symmetric:
            out[j - 1, i - 1] = x
    if seen != nnz:
        raise ParseError(0, f"declared nnz={nnz} but found {seen} entries")
    return out


def read_matrix_market(path):
    """Read a coordinate/real/symmetric file into a full SymMatrix."""
    lines = _read_lines(path)
    layout, field, symmetry = _parse_header(lines)
    if layout != "coordinate" or field != "real" or symmetry != "symmetric":
        raise UnsupportedFormat(f"expected coordinate real symmetric, got {layout} {field} {symmetry}")
    body = _data_lines(lines)
    try:
        line_no, size = next(body)
    except StopIteration:
        raise ParseError(len(lines), "missing size line") from None
    rows, cols, nnz = _parse_ints(size.split(), 3, line_no)
    if rows != cols or rows < 1:
        raise ParseError(line_no, f"symmetric matrix must be square and nonempty, got {rows}x{cols}")
    return SymMatrix(_read_coordinate(body, rows, cols, nnz, symmetric=True))


def read_matrix_market_dense(path):
    """Read a real general matrix (coordinate or array layout) into a 2-d array.

    Used for heterogeneous edge-precision files.
    """
    lines = _read_lines(path)
    layout, field, symmetry = _parse_header(lines)
    if field not in ("real", "integer") or symmetry != "general":
        raise UnsupportedFormat(f"expected a real general matrix, got {field} {symmetry}")
    body = _data_lines(lines)
    try:
        line_no, size = next(body)
    except StopIteration:
        raise ParseError(len(lines), "missing size line") from None
    if layout == "coordinate":
        rows, cols, nnz = _parse_ints(size.split(), 3, line_no)
        return _read_coordinate(body, rows, cols, nnz, symmetric=False)
    if layout != "array":
        raise UnsupportedFormat(f"unknown layout {layout!r}")
    rows, cols = _parse_ints(size.split(), 2, line_no)
    vals = [_parse_float(text, k) for k, text in body]
    if len(vals) != rows * cols:
        raise ParseError(0, f"expected {rows * cols} array entries, found {len(vals)}")
    # array layout is column-major
    return np.array(vals).reshape(cols, rows).T.copy()


def _append_rows(path, header, rows):
    path = Path(path)
    fresh = not path.exists() or path.stat().st_size == 0
    try:
        with _open(path, "a") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            if fresh:
                writer.writerow(header)
            writer.writerows(rows)
    except OSError as exc:
        raise IoFailure(path, str(exc)) from exc


def append_result_csv(row, path):
    """Append one ResultRow, writing the header first if the file is new or empty."""
    _append_rows(path, RESULT_HEADER, [[
        str(row.model_kind), row.m, row.n, str(row.method), fmt(row.logdet),
        int(row.wall_time_ns), "" if row.seed is None else int(row.seed),
    ]])


def read_result_csv(path):
    with _open(path, "r") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != RESULT_HEADER:
            raise ParseError(1, f"unexpected header {reader.fieldnames}")
        return [ResultRow(ModelKind(r["model"]), int(r["m"]), int(r["n"]), Method(r["method"]),
                          float(r["logdet"]), int(r["wall_time_ns"]),
                          int(r["seed"]) if r["seed"] else None)
                for r in reader]


def verify_csv_row(m, n, seed, report):
    return [m, n, "" if seed is None else seed, fmt(report.lhs), fmt(report.rhs),
            fmt(report.abs_gap), "true" if report.passed else "false"]


def write_verify_csv(rows, path):
    if os.path.exists(path):
        os.remove(path)
    _append_rows(path, VERIFY_HEADER, rows)


def sweep_csv_lines(rows):
    yield ",".join(SWEEP_HEADER)
    for r in rows:
        yield f"{r.n},{r.n_squared},{fmt(r.density)}"


def write_sweep_csv(rows, fh):
    for line in sweep_csv_lines(rows):
        fh.write(line + "\n")


def read_config(path):
    """Parse ``key = value`` lines; ``#`` starts a comment. Unknown keys are a ParseError."""
    out = {}
    for line_no, raw in enumerate(_read_lines(path), start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        key, sep, value = text.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise ParseError(line_no, f"expected 'key = value', got {raw!r}")
        if key not in CONFIG_KEYS:
            raise ParseError(line_no, f"unknown key {key!r}")
        try:
            out[key] = CONFIG_KEYS[key](value)
        except ValueError:
            raise ParseError(line_no, f"bad value for {key}: {value!r}") from None
    if "edge_prec_file" in out:
        ref = Path(out["edge_prec_file"])
        if not ref.is_absolute():
            out["edge_prec_file"] = str(Path(path).parent / ref)
    return out
