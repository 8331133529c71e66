"""Round trips and determinism for the file writers."""

import json
import math

import numpy as np
import pytest

from vekua.errors import MalformedCsvError
from vekua.fileio import (
    atomic_write_bytes,
    read_pgm,
    read_solution_csv,
    write_json,
    write_pgm,
    write_solution_csv,
)


def grid():
    xs = np.linspace(-1.0, 1.0, 5)
    ys = np.linspace(-0.5, 0.5, 3)
    vals = (xs[None, :] + 1j * ys[:, None]) ** 2
    return xs, ys, vals


def test_csv_round_trip(tmp_path):
    xs, ys, vals = grid()
    p = tmp_path / "sol.csv"
    write_solution_csv(p, xs, ys, vals)
    rx, ry, cols = read_solution_csv(p)
    assert np.array_equal(rx, xs) and np.array_equal(ry, ys)
    assert np.array_equal(cols["re"], vals.real)
    assert np.array_equal(cols["im"], vals.imag)


def test_csv_bicomplex_columns(tmp_path):
    xs, ys, vals = grid()
    p = tmp_path / "sol.csv"
    write_solution_csv(p, xs, ys, vals, j_values=2 * vals)
    _, _, cols = read_solution_csv(p)
    assert set(cols) == {"re", "im", "j_re", "j_im"}
    assert np.array_equal(cols["j_im"], 2 * vals.imag)


def test_csv_nan_round_trips(tmp_path):
    xs, ys, vals = grid()
    vals = vals.copy()
    vals[1, 2] = complex(math.nan, math.inf)
    p = tmp_path / "sol.csv"
    write_solution_csv(p, xs, ys, vals)
    _, _, cols = read_solution_csv(p)
    assert math.isnan(cols["re"][1, 2])
    assert math.isinf(cols["im"][1, 2])


def test_csv_shape_guard(tmp_path):
    xs, ys, vals = grid()
    with pytest.raises(ValueError):
        write_solution_csv(tmp_path / "x.csv", xs, ys, vals.T)


def test_csv_rejects_corruption(tmp_path):
    xs, ys, vals = grid()
    p = tmp_path / "sol.csv"
    write_solution_csv(p, xs, ys, vals)
    text = p.read_text()

    bad_header = tmp_path / "h.csv"
    bad_header.write_text(text.replace("x,y,re,im", "a,b,c,d"))
    with pytest.raises(MalformedCsvError):
        read_solution_csv(bad_header)

    lines = text.strip().split("\n")
    missing_row = tmp_path / "m.csv"
    missing_row.write_text("\n".join(lines[:-1]) + "\n")
    with pytest.raises(MalformedCsvError):
        read_solution_csv(missing_row)

    bad_cell = tmp_path / "c.csv"
    bad_cell.write_text(text.replace(lines[3], lines[3] + ",0.5"))
    with pytest.raises(MalformedCsvError):
        read_solution_csv(bad_cell)

    shuffled = tmp_path / "s.csv"
    shuffled.write_text("\n".join([lines[0], *lines[2:], lines[1]]) + "\n")
    with pytest.raises(MalformedCsvError):
        read_solution_csv(shuffled)

    with pytest.raises(MalformedCsvError):
        read_solution_csv(tmp_path / "does-not-exist.csv")


def test_csv_byte_identical_reruns(tmp_path):
    xs, ys, vals = grid()
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    write_solution_csv(a, xs, ys, vals)
    write_solution_csv(b, xs, ys, vals)
    assert a.read_bytes() == b.read_bytes()


def test_pgm_round_trip(tmp_path):
    img = np.linspace(0.0, 1.0, 12).reshape(3, 4)
    p = tmp_path / "f.pgm"
    write_pgm(p, img)
    px = read_pgm(p)
    assert px.shape == (3, 4)
    assert px[0, 0] == 0 and px[-1, -1] == 255
    # normalization is monotone
    flat = px.ravel().astype(int)
    assert np.all(np.diff(flat) >= 0)


def test_pgm_nonfinite_and_constant(tmp_path):
    img = np.array([[1.0, np.nan], [np.inf, 3.0]])
    p = tmp_path / "n.pgm"
    write_pgm(p, img)
    px = read_pgm(p)
    assert px[0, 1] == 0 and px[1, 0] == 0
    assert px[0, 0] == 0 and px[1, 1] == 255

    q = tmp_path / "c.pgm"
    write_pgm(q, np.full((2, 2), 7.0))
    assert np.array_equal(read_pgm(q), np.zeros((2, 2), dtype=np.uint8))


def test_pgm_rejects_non_2d(tmp_path):
    with pytest.raises(ValueError):
        write_pgm(tmp_path / "x.pgm", np.zeros(4))


def test_json_deterministic_and_parseable(tmp_path):
    obj = {
        "b": [1, 2.5, None, True],
        "a": {"nested": "quote \" and \\ backslash", "n": float("nan")},
        "empty": {},
        "inf": float("inf"),
    }
    p1, p2 = tmp_path / "r1.json", tmp_path / "r2.json"
    write_json(p1, obj)
    write_json(p2, obj)
    assert p1.read_bytes() == p2.read_bytes()
    back = json.loads(p1.read_text())
    assert back["a"]["n"] is None and back["inf"] is None
    assert back["b"] == [1, 2.5, None, True]
    # keys come out sorted
    text = p1.read_text()
    assert text.index('"a"') < text.index('"b"') < text.index('"empty"')


def test_json_float_precision(tmp_path):
    x = 0.1 + 0.2
    p = tmp_path / "p.json"
    write_json(p, {"x": x})
    assert json.loads(p.read_text())["x"] == x


def test_json_rejects_non_string_keys(tmp_path):
    with pytest.raises(TypeError):
        write_json(tmp_path / "k.json", {1: "x"})


def test_atomic_write_leaves_no_temp_files(tmp_path):
    p = tmp_path / "out.bin"
    atomic_write_bytes(p, b"payload")
    assert p.read_bytes() == b"payload"
    atomic_write_bytes(p, b"replaced")
    assert p.read_bytes() == b"replaced"
    assert sorted(q.name for q in tmp_path.iterdir()) == ["out.bin"]
