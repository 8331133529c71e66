"""Deterministic file output: solution CSV, report JSON, PGM images.

Everything is written atomically (temp file in the target directory, then
rename) so a crashed run never leaves a half-written artifact. Floats are
formatted with %.17g, which round-trips IEEE doubles exactly; JSON keys are
sorted. Two runs with the same inputs produce byte-identical files.
"""

from __future__ import annotations

import math
import os
import tempfile

import numpy as np

from .errors import MalformedCsvError

CSV_HEADER = "x,y,re,im"
CSV_HEADER_BC = "x,y,re,im,j_re,j_im"


def _fmt(x):
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return "%.17g" % x


def atomic_write_bytes(path, data):
    """Write bytes to path via temp file + rename in the same directory."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def atomic_write_text(path, text):
    atomic_write_bytes(path, text.encode("utf-8"))


def write_solution_csv(path, xs, ys, values, j_values=None):
    """Grid samples as CSV, row-major: y varies slowest.

    values is a complex (ny, nx) array; j_values, if given, holds the
    j-component of a bicomplex field and adds the j_re/j_im columns.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    values = np.asarray(values, dtype=complex)
    if values.shape != (ys.size, xs.size):
        raise ValueError("values shape does not match the grid")
    lines = [CSV_HEADER_BC if j_values is not None else CSV_HEADER]
    for iy in range(ys.size):
        for ix in range(xs.size):
            v = values[iy, ix]
            cells = [_fmt(xs[ix]), _fmt(ys[iy]), _fmt(v.real), _fmt(v.imag)]
            if j_values is not None:
                jv = j_values[iy, ix]
                cells.append(_fmt(complex(jv).real))
                cells.append(_fmt(complex(jv).imag))
            lines.append(",".join(cells))
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_solution_csv(path):
    """Parse a solution CSV back into (xs, ys, columns).

    columns maps each value-column name to an (ny, nx) float array. The
    file must be a full rectangular grid in the row-major order written by
    write_solution_csv.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = [ln.rstrip("\n") for ln in fh]
    except OSError as ex:
        raise MalformedCsvError(f"cannot read {path}: {ex}") from ex
    lines = [ln for ln in lines if ln]
    if not lines:
        raise MalformedCsvError(f"{path}: empty file")
    header = lines[0].split(",")
    if header[:4] != ["x", "y", "re", "im"]:
        raise MalformedCsvError(f"{path}: unexpected header {lines[0]!r}")
    value_cols = header[2:]
    rows = []
    for ln_no, ln in enumerate(lines[1:], start=2):
        cells = ln.split(",")
        if len(cells) != len(header):
            raise MalformedCsvError(f"{path}:{ln_no}: expected {len(header)} cells")
        try:
            rows.append([float(c) for c in cells])
        except ValueError as ex:
            raise MalformedCsvError(f"{path}:{ln_no}: {ex}") from ex
    data = np.asarray(rows, dtype=float)
    xs = np.unique(data[:, 0])
    ys = np.unique(data[:, 1])
    if xs.size * ys.size != data.shape[0]:
        raise MalformedCsvError(f"{path}: rows do not form a full grid")
    # row-major check: x must cycle fastest
    expect_x = np.tile(xs, ys.size)
    expect_y = np.repeat(ys, xs.size)
    if not (np.array_equal(data[:, 0], expect_x) and np.array_equal(data[:, 1], expect_y)):
        raise MalformedCsvError(f"{path}: rows are not in row-major grid order")
    columns = {
        name: data[:, 2 + k].reshape(ys.size, xs.size)
        for k, name in enumerate(value_cols)
    }
    return xs, ys, columns


def write_pgm(path, img):
    """8-bit binary PGM (P5), min-max normalized over finite pixels.

    NaN/inf pixels map to 0. A constant image (or one with no finite
    pixels) comes out all black; output depends only on the array values,
    so identical fields give byte-identical files.
    """
    img = np.asarray(img, dtype=float)
    if img.ndim != 2:
        raise ValueError("image must be a 2-d array")
    finite = np.isfinite(img)
    out = np.zeros(img.shape, dtype=np.uint8)
    if finite.any():
        lo = img[finite].min()
        hi = img[finite].max()
        if hi > lo:
            scaled = (img - lo) * (255.0 / (hi - lo))
            scaled = np.where(finite, scaled, 0.0)
            out = np.clip(np.rint(scaled), 0, 255).astype(np.uint8)
    h, w = img.shape
    header = f"P5\n{w} {h}\n255\n".encode("ascii")
    atomic_write_bytes(path, header + out.tobytes())


def read_pgm(path):
    """Binary PGM back into a uint8 array (for round-trip checks)."""
    with open(path, "rb") as fh:
        blob = fh.read()
    parts = blob.split(b"\n", 3)
    if len(parts) != 4 or parts[0] != b"P5" or parts[2] != b"255":
        raise ValueError(f"{path}: not an 8-bit binary PGM")
    w, h = (int(t) for t in parts[1].split())
    pixels = np.frombuffer(parts[3][: w * h], dtype=np.uint8)
    if pixels.size != w * h:
        raise ValueError(f"{path}: truncated pixel data")
    return pixels.reshape(h, w)


def _json_ser(obj, indent, pad):
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, str):
        out = ['"']
        for ch in obj:
            if ch == '"':
                out.append('\\"')
            elif ch == "\\":
                out.append("\\\\")
            elif ord(ch) < 0x20:
                out.append("\\u%04x" % ord(ch))
            else:
                out.append(ch)
        out.append('"')
        return "".join(out)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        return _fmt(obj)
    inner = pad + indent
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        body = ",\n".join(inner + _json_ser(v, indent, inner) for v in obj)
        return "[\n" + body + "\n" + pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = []
        for k in sorted(obj):
            if not isinstance(k, str):
                raise TypeError("JSON object keys must be strings")
            items.append(
                inner + _json_ser(k, indent, inner) + ": " + _json_ser(obj[k], indent, inner)
            )
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__} to JSON")


def write_json(path, obj):
    """Deterministic JSON: sorted keys, %.17g floats, two-space indent.

    Non-finite floats become null; the stdlib emitter would write NaN,
    which most parsers reject.
    """
    atomic_write_text(path, _json_ser(obj, "  ", "") + "\n")
