"""Problem-file schema: JSON in, validated domain objects out.

A problem file is {"schema_version": 1, "kind": ..., "payload": {...}} with
kind-specific payload fields. Validation is strict: unknown fields anywhere
raise SchemaError, so a typo like "coefficent" fails loudly instead of
silently solving the homogeneous problem. Numbers may be JSON numbers or
fraction strings ("1/4"); fraction strings and integers stay exact all the
way into the solvers.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .bicomplex_core import Bicomplex
from .errors import SchemaError
from .exactnum import GaussianRational
from .fourier import BicomplexTrigPoly, TrigPoly
from .poly_algebra import XY, ZZBAR, BicomplexPoly, BivarPoly, Conic, from_xy

KINDS = (
    "disk-poly",
    "disk-hoiv",
    "disk-bicomplex",
    "conic-bianalytic",
    "conic-vekua",
    "poisson",
    "witness",
    "verify",
)

_BUILTIN_COEFFS = ("zero", "z", "z_over_2", "custom-poly")


class ProblemFile:
    """Validated problem: kind plus constructed payload objects."""

    __slots__ = ("kind", "payload", "raw")

    def __init__(self, kind, payload, raw):
        self.kind = kind
        self.payload = payload
        self.raw = raw

    def __repr__(self):
        return f"ProblemFile(kind={self.kind!r})"


def _fail(msg):
    raise SchemaError(msg)


def _require_keys(obj, where, required, optional=()):
    if not isinstance(obj, dict):
        _fail(f"{where}: expected an object")
    for k in required:
        if k not in obj:
            _fail(f"{where}: missing field '{k}'")
    allowed = set(required) | set(optional)
    for k in obj:
        if k not in allowed:
            _fail(f"{where}: unknown field '{k}'")


def _int(v, where, minimum=None):
    if not isinstance(v, int) or isinstance(v, bool):
        _fail(f"{where}: expected an integer")
    if minimum is not None and v < minimum:
        _fail(f"{where}: must be >= {minimum}")
    return v


def _real(v, where):
    """Real scalar: number, or fraction string for exactness."""
    if isinstance(v, bool):
        _fail(f"{where}: expected a number")
    if isinstance(v, (int, float)):
        return v
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError):
            _fail(f"{where}: bad fraction string {v!r}")
    _fail(f"{where}: expected a number or fraction string")


def _coeff_value(re, im, where):
    """Complex coefficient, exact when both parts are exact."""
    re = _real(re, where + ".re")
    im = _real(im, where + ".im")
    if isinstance(re, float) or isinstance(im, float):
        return complex(re, im)
    return GaussianRational(re, im)


def _trig_poly(entries, where):
    if not isinstance(entries, list):
        _fail(f"{where}: expected a list of Fourier coefficients")
    coeffs = {}
    for idx, e in enumerate(entries):
        w = f"{where}[{idx}]"
        _require_keys(e, w, ("m", "re", "im"))
        m = _int(e["m"], w + ".m")
        c = complex(_coeff_value(e["re"], e["im"], w))
        coeffs[m] = coeffs.get(m, 0) + c
    return TrigPoly(coeffs)


def _pair(v, where):
    if not isinstance(v, list) or len(v) != 2:
        _fail(f"{where}: expected [re, im]")
    return _coeff_value(v[0], v[1], where)


def _bc_trig_poly(entries, where):
    if not isinstance(entries, list):
        _fail(f"{where}: expected a list of Fourier coefficients")
    sc, vec = {}, {}
    for idx, e in enumerate(entries):
        w = f"{where}[{idx}]"
        _require_keys(e, w, ("m", "sc", "vec"))
        m = _int(e["m"], w + ".m")
        sc[m] = sc.get(m, 0) + complex(_pair(e["sc"], w + ".sc"))
        vec[m] = vec.get(m, 0) + complex(_pair(e["vec"], w + ".vec"))
    return BicomplexTrigPoly(TrigPoly(sc), TrigPoly(vec))


def _gamma(entry, where):
    """One boundary trace: scalar or bicomplex Fourier entries."""
    if isinstance(entry, list) and entry and isinstance(entry[0], dict) and "sc" in entry[0]:
        return _bc_trig_poly(entry, where)
    return _trig_poly(entry, where)


def _poly(spec, where, default_frame="zzbar"):
    _require_keys(spec, where, ("terms",), ("frame",))
    frame_name = spec.get("frame", default_frame)
    if frame_name not in ("zzbar", "xy"):
        _fail(f"{where}.frame: expected 'zzbar' or 'xy'")
    frame = ZZBAR if frame_name == "zzbar" else XY
    if not isinstance(spec["terms"], list):
        _fail(f"{where}.terms: expected a list")
    terms = {}
    for idx, t in enumerate(spec["terms"]):
        w = f"{where}.terms[{idx}]"
        _require_keys(t, w, ("i", "j", "re"), ("im",))
        i = _int(t["i"], w + ".i", 0)
        j = _int(t["j"], w + ".j", 0)
        c = _coeff_value(t["re"], t.get("im", 0), w)
        prev = terms.get((i, j))
        terms[(i, j)] = c if prev is None else prev + c
    return BivarPoly(terms, frame)


def _coefficient(spec, where):
    """Coefficient field A: named builtin, custom polynomial, or a
    bicomplex sc/vec pair of either."""
    if not isinstance(spec, dict):
        _fail(f"{where}: expected an object")
    if "sc" in spec or "vec" in spec:
        _require_keys(spec, where, ("sc", "vec"))
        sc = _coefficient(spec["sc"], where + ".sc")
        vec = _coefficient(spec["vec"], where + ".vec")
        for part, nm in ((sc, "sc"), (vec, "vec")):
            if not isinstance(part, BivarPoly):
                _fail(f"{where}.{nm}: bicomplex parts must be scalar coefficients")
        return BicomplexPoly(sc, vec)
    _require_keys(spec, where, ("name",), ("terms", "frame"))
    name = spec["name"]
    if name not in _BUILTIN_COEFFS:
        _fail(f"{where}.name: unknown coefficient {name!r}")
    if name == "custom-poly":
        if "terms" not in spec:
            _fail(f"{where}: custom-poly needs 'terms'")
        p = _poly({k: v for k, v in spec.items() if k != "name"}, where)
        # coefficients always land in the zzbar frame so the exact T applies
        return from_xy(p) if p.frame == XY else p
    if "terms" in spec or "frame" in spec:
        _fail(f"{where}: only custom-poly carries terms")
    if name == "zero":
        return BivarPoly.zero(ZZBAR)
    if name == "z":
        return BivarPoly.var_z()
    return BivarPoly.var_z() * GaussianRational("1/2")


def _conic(v, where):
    if not isinstance(v, list) or len(v) != 6:
        _fail(f"{where}: expected [a, b, c, d, e, f]")
    vals = []
    for idx, item in enumerate(v):
        r = _real(item, f"{where}[{idx}]")
        vals.append(Fraction(r) if not isinstance(r, Fraction) else r)
    return Conic(*vals)


def _payload_disk(payload, kind):
    bicx = kind == "disk-bicomplex"
    optional = ("f",) if kind == "disk-poly" else ()
    required = ["order", "gammas"]
    if kind == "disk-hoiv":
        required.append("coefficient")
    if bicx:
        optional = ("coefficient",)
    _require_keys(payload, "payload", tuple(required), optional)
    n = _int(payload["order"], "payload.order", 1)
    if not isinstance(payload["gammas"], list) or len(payload["gammas"]) != n:
        _fail(f"payload.gammas: expected exactly {n} boundary traces")
    gammas = [
        _gamma(g, f"payload.gammas[{k}]") for k, g in enumerate(payload["gammas"])
    ]
    out = {"order": n, "gammas": gammas}
    if "coefficient" in payload:
        out["coefficient"] = _coefficient(payload["coefficient"], "payload.coefficient")
    if "f" in payload:
        out["f"] = _poly(payload["f"], "payload.f")
    return out


def _payload_conic(payload, kind):
    optional = ("coefficient", "route") if kind == "conic-vekua" else ()
    _require_keys(payload, "payload", ("conic", "data"), optional)
    out = {
        "conic": _conic(payload["conic"], "payload.conic"),
        "data": _poly(payload["data"], "payload.data", default_frame="xy"),
    }
    if "coefficient" in payload:
        out["coefficient"] = _coefficient(payload["coefficient"], "payload.coefficient")
    if "route" in payload:
        if payload["route"] not in ("split", "exponential"):
            _fail("payload.route: expected 'split' or 'exponential'")
        out["route"] = payload["route"]
    return out


def _payload_poisson(payload):
    _require_keys(payload, "payload", ("data",))
    return {"data": _gamma(payload["data"], "payload.data")}


def _payload_witness(payload):
    _require_keys(payload, "payload", ("order", "count"), ("coefficient", "bicomplex"))
    out = {
        "order": _int(payload["order"], "payload.order", 1),
        "count": _int(payload["count"], "payload.count", 1),
    }
    if "coefficient" in payload:
        out["coefficient"] = _coefficient(payload["coefficient"], "payload.coefficient")
    if "bicomplex" in payload:
        if not isinstance(payload["bicomplex"], bool):
            _fail("payload.bicomplex: expected a boolean")
        out["bicomplex"] = payload["bicomplex"]
    return out


def validate(doc):
    """Validated ProblemFile from a parsed JSON document."""
    _require_keys(doc, "problem", ("schema_version", "kind", "payload"))
    if doc["schema_version"] != 1:
        _fail(f"unsupported schema_version {doc['schema_version']!r}")
    kind = doc["kind"]
    if kind not in KINDS:
        _fail(f"unknown kind {kind!r}")
    payload = doc["payload"]
    if kind in ("disk-poly", "disk-hoiv", "disk-bicomplex"):
        built = _payload_disk(payload, kind)
    elif kind in ("conic-bianalytic", "conic-vekua"):
        built = _payload_conic(payload, kind)
    elif kind == "poisson":
        built = _payload_poisson(payload)
    elif kind == "witness":
        built = _payload_witness(payload)
    else:
        _require_keys(payload, "payload", ("problem",), ("tolerance",))
        inner = validate(payload["problem"])
        if inner.kind == "verify":
            _fail("payload.problem: verify problems do not nest")
        built = {"problem": inner}
        if "tolerance" in payload:
            tol = payload["tolerance"]
            if isinstance(tol, bool) or not isinstance(tol, (int, float)) or tol <= 0:
                _fail("payload.tolerance: expected a positive number")
            built["tolerance"] = float(tol)
    return ProblemFile(kind, built, doc)


def load_problem(path):
    """Read and validate a problem file from disk."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as ex:
        raise SchemaError(f"cannot read {path}: {ex}") from ex
    except json.JSONDecodeError as ex:
        raise SchemaError(f"{path} is not valid JSON: {ex}") from ex
    return validate(doc)
