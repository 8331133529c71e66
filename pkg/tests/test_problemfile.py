"""Schema validation: strict field checking, exact numbers, kind dispatch."""

from fractions import Fraction

import pytest

from vekua.errors import SchemaError
from vekua.exactnum import GaussianRational
from vekua.fourier import BicomplexTrigPoly, TrigPoly
from vekua.poly_algebra import ZZBAR, BicomplexPoly, BivarPoly, Conic
from vekua.problemfile import load_problem, validate


def disk_doc(order=2):
    return {
        "schema_version": 1,
        "kind": "disk-poly",
        "payload": {
            "order": order,
            "gammas": [
                [{"m": 1, "re": 1, "im": 0}],
                [{"m": 0, "re": 0.5, "im": 0}],
            ][:order],
        },
    }


def test_valid_disk_document():
    pf = validate(disk_doc())
    assert pf.kind == "disk-poly"
    assert pf.payload["order"] == 2
    g0 = pf.payload["gammas"][0]
    assert isinstance(g0, TrigPoly) and g0.coeffs[1] == 1


def test_unknown_field_rejected_everywhere():
    doc = disk_doc()
    doc["extra"] = 1
    with pytest.raises(SchemaError, match="unknown field 'extra'"):
        validate(doc)
    doc = disk_doc()
    doc["payload"]["coefficent"] = {"name": "z"}
    with pytest.raises(SchemaError, match="coefficent"):
        validate(doc)
    doc = disk_doc()
    doc["payload"]["gammas"][0][0]["phase"] = 0
    with pytest.raises(SchemaError, match="phase"):
        validate(doc)


def test_version_and_kind_guards():
    doc = disk_doc()
    doc["schema_version"] = 2
    with pytest.raises(SchemaError, match="schema_version"):
        validate(doc)
    doc = disk_doc()
    doc["kind"] = "disc-poly"
    with pytest.raises(SchemaError, match="unknown kind"):
        validate(doc)
    with pytest.raises(SchemaError, match="missing field"):
        validate({"schema_version": 1, "kind": "disk-poly"})


def test_gamma_count_must_match_order():
    doc = disk_doc()
    doc["payload"]["order"] = 3
    with pytest.raises(SchemaError, match="exactly 3"):
        validate(doc)


def test_fraction_strings_stay_exact():
    doc = {
        "schema_version": 1,
        "kind": "conic-vekua",
        "payload": {
            "conic": ["1/4", 0, 1, 0, 0, -1],
            "data": {
                "frame": "zzbar",
                "terms": [{"i": 1, "j": 1, "re": "1/3"}],
            },
            "coefficient": {"name": "z_over_2"},
        },
    }
    pf = validate(doc)
    q = pf.payload["conic"]
    assert isinstance(q, Conic) and q.coeffs()[0] == Fraction(1, 4)
    data = pf.payload["data"]
    assert data.coeff(1, 1) == GaussianRational(Fraction(1, 3))
    A = pf.payload["coefficient"]
    assert A.coeff(1, 0) == GaussianRational(Fraction(1, 2))


def test_bad_fraction_string():
    doc = disk_doc()
    doc["payload"]["gammas"][0][0]["re"] = "1/0"
    with pytest.raises(SchemaError, match="fraction"):
        validate(doc)


def test_xy_coefficient_lands_in_zzbar_frame():
    doc = {
        "schema_version": 1,
        "kind": "disk-hoiv",
        "payload": {
            "order": 1,
            "gammas": [[{"m": 0, "re": 1, "im": 0}]],
            "coefficient": {
                "name": "custom-poly",
                "frame": "xy",
                # x + iy, which is z
                "terms": [
                    {"i": 1, "j": 0, "re": 1},
                    {"i": 0, "j": 1, "im": 1, "re": 0},
                ],
            },
        },
    }
    A = validate(doc).payload["coefficient"]
    assert A.frame == ZZBAR
    assert (A - BivarPoly.var_z()).is_zero()


def test_builtin_coefficient_names():
    base = {
        "schema_version": 1,
        "kind": "disk-hoiv",
        "payload": {
            "order": 1,
            "gammas": [[{"m": 0, "re": 1, "im": 0}]],
            "coefficient": {"name": "zero"},
        },
    }
    assert validate(base).payload["coefficient"].is_zero()
    base["payload"]["coefficient"] = {"name": "gauss"}
    with pytest.raises(SchemaError, match="unknown coefficient"):
        validate(base)
    base["payload"]["coefficient"] = {"name": "z", "terms": []}
    with pytest.raises(SchemaError, match="only custom-poly"):
        validate(base)


def test_bicomplex_gamma_and_coefficient():
    doc = {
        "schema_version": 1,
        "kind": "disk-bicomplex",
        "payload": {
            "order": 1,
            "gammas": [
                [{"m": 1, "sc": [1, 0], "vec": [0, 0.5]}],
            ],
            "coefficient": {"sc": {"name": "z"}, "vec": {"name": "zero"}},
        },
    }
    pf = validate(doc)
    g = pf.payload["gammas"][0]
    assert isinstance(g, BicomplexTrigPoly)
    assert g.sc.coeffs[1] == 1 and g.vec.coeffs[1] == 0.5j
    assert isinstance(pf.payload["coefficient"], BicomplexPoly)


def test_verify_wraps_but_does_not_nest():
    doc = {
        "schema_version": 1,
        "kind": "verify",
        "payload": {"problem": disk_doc(), "tolerance": 1e-6},
    }
    pf = validate(doc)
    assert pf.payload["problem"].kind == "disk-poly"
    assert pf.payload["tolerance"] == 1e-6

    doc["payload"]["problem"] = {
        "schema_version": 1,
        "kind": "verify",
        "payload": {"problem": disk_doc()},
    }
    with pytest.raises(SchemaError, match="do not nest"):
        validate(doc)

    doc["payload"] = {"problem": disk_doc(), "tolerance": -1}
    with pytest.raises(SchemaError, match="tolerance"):
        validate(doc)


def test_conic_list_shape():
    doc = {
        "schema_version": 1,
        "kind": "conic-bianalytic",
        "payload": {
            "conic": [1, 0, 1, 0, 0],
            "data": {"terms": [{"i": 2, "j": 0, "re": 1}]},
        },
    }
    with pytest.raises(SchemaError, match=r"\[a, b, c, d, e, f\]"):
        validate(doc)


def test_route_validation():
    doc = {
        "schema_version": 1,
        "kind": "conic-vekua",
        "payload": {
            "conic": [1, 0, 4, 0, 0, -4],
            "data": {"terms": [{"i": 1, "j": 1, "re": 1}], "frame": "zzbar"},
            "route": "both",
        },
    }
    with pytest.raises(SchemaError, match="route"):
        validate(doc)
    doc["payload"]["route"] = "exponential"
    assert validate(doc).payload["route"] == "exponential"


def test_load_problem_errors(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(SchemaError, match="not valid JSON"):
        load_problem(p)
    with pytest.raises(SchemaError, match="cannot read"):
        load_problem(tmp_path / "missing.json")


def test_load_problem_round_trip(tmp_path):
    import json

    p = tmp_path / "ok.json"
    p.write_text(json.dumps(disk_doc()))
    pf = load_problem(p)
    assert pf.kind == "disk-poly" and pf.raw["schema_version"] == 1
