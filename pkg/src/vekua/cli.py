"""Command-line front end.

    vekua solve   problem.json [--out DIR] [--grid N] [--nodes M] [--tol T] [--seed S]
    vekua check   problem.json [--out DIR] [--nodes M] [--tol T] [--seed S]
    vekua witness [problem.json] [--order N --count M [--coeff NAME] [--bicomplex]]
    vekua render  solution.csv [--channel CH] [--out DIR]
    vekua verify  problem.json [--out DIR] [--nodes M] [--tol T] [--seed S]

Exit codes: 0 success (problem solvable, checks pass), 2 honest negative
(solvability conditions fail, a verify check fails), 1 anything malformed
or unsupported. Errors print a single stderr line "ERROR <CODE>: message"
so scripts can branch on the code without parsing prose.

Artifacts go to --out: solution.csv (columns x,y,re,im plus j_re,j_im for
bicomplex fields, row-major over an N x N grid, NaN outside the domain),
report.json (verdict plus the numbers behind it), witness_XX.csv, and PGM
images from render. Floats are written with 17 significant digits and
files are written atomically; a rerun with the same inputs is
byte-identical. VEKUA_THREADS caps grid-evaluation parallelism (the grid
is cut into fixed chunks, so answers do not depend on the thread count).

Near the rim of the disk the integral-formula fields inherit the
trapezoid-rule decay of the boundary quadrature: with M nodes the error at
radius r grows like r^M, so --nodes 1024 is exact to machine precision for
r <= 0.97 but visibly soft past r ~ 0.99. Raise --nodes together with
--grid if the near-boundary cells matter.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import disk_dirichlet as dd
from .bicomplex_core import Bicomplex, bc_norm
from .conic_dirichlet import (
    bc_solve_vekua_bitsadze_conic,
    conic_boundary_points,
    solve_bianalytic_conic,
    solve_vekua_bitsadze_conic,
)
from .errors import SchemaError, VekuaError
from .exactnum import GaussianRational
from .fileio import read_solution_csv, write_json, write_pgm, write_solution_csv
from .poly_algebra import BicomplexPoly, BivarPoly
from .problemfile import load_problem
from .representations import exp_t_factor
from .verify import boundary_mismatch, clamp_grid, iterated_apply

GRID_CHUNK = 4096
CHANNELS = ("re", "im", "j_re", "j_im", "abs")

DISK_KINDS = ("disk-poly", "disk-hoiv", "disk-bicomplex")
CONIC_KINDS = ("conic-bianalytic", "conic-vekua")


def _thread_count():
    raw = os.environ.get("VEKUA_THREADS", "")
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise SchemaError(f"VEKUA_THREADS={raw!r} is not an integer")
        if n < 1:
            raise SchemaError("VEKUA_THREADS must be >= 1")
        return n
    return min(8, os.cpu_count() or 1)


def _eval_points(field, pts):
    """Field values on a flat complex array, chunked across threads.

    Chunk boundaries are fixed by GRID_CHUNK alone, so the values (and the
    files derived from them) are identical whatever VEKUA_THREADS says.
    """
    pts = np.asarray(pts, dtype=complex).reshape(-1)
    chunks = [pts[i : i + GRID_CHUNK] for i in range(0, pts.size, GRID_CHUNK)]
    if not chunks:
        return np.zeros(0, dtype=complex), None
    workers = _thread_count()
    if workers == 1 or len(chunks) == 1:
        parts = [field(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(field, chunks))
    if isinstance(parts[0], Bicomplex):
        sc = np.concatenate([np.asarray(p.sc, dtype=complex).reshape(-1) for p in parts])
        vec = np.concatenate([np.asarray(p.vec, dtype=complex).reshape(-1) for p in parts])
        return sc, vec
    vals = np.concatenate([np.asarray(p, dtype=complex).reshape(-1) for p in parts])
    return vals, None


def _eval_grid(field, xs, ys, mask):
    """(values, j_values) arrays over the grid; NaN where mask is False."""
    pts = (xs[None, :] + 1j * ys[:, None]).reshape(-1)
    m = mask.reshape(-1)
    vals = np.full(pts.size, complex(np.nan, np.nan), dtype=complex)
    inside, jpart = _eval_points(field, pts[m])
    vals[m] = inside
    jvals = None
    if jpart is not None:
        jvals = np.full(pts.size, complex(np.nan, np.nan), dtype=complex)
        jvals[m] = jpart
    shape = (ys.size, xs.size)
    return vals.reshape(shape), None if jvals is None else jvals.reshape(shape)


def _disk_grid(n):
    xs = np.linspace(-1.0, 1.0, n)
    ys = np.linspace(-1.0, 1.0, n)
    pts = xs[None, :] + 1j * ys[:, None]
    mask = np.abs(pts) < 1.0 - 1e-12
    return xs, ys, mask


def _conic_grid(q, n, interior_only):
    pts = conic_boundary_points(q, 256, window=2.0)
    x0, x1 = float(np.min(pts.real)), float(np.max(pts.real))
    y0, y1 = float(np.min(pts.imag)), float(np.max(pts.imag))
    pad = 0.1 * max(x1 - x0, y1 - y0, 1e-6)
    xs = np.linspace(x0 - pad, x1 + pad, n)
    ys = np.linspace(y0 - pad, y1 + pad, n)
    if interior_only:
        grid = xs[None, :] + 1j * ys[:, None]
        mask = q.geometry().contains(grid, closed=False)
    else:
        mask = np.ones((n, n), dtype=bool)
    return xs, ys, mask


def _probe_points(seed, n, extra=16):
    """Interior residual probes: the fixed sample set plus seeded extras."""
    pts = dd.standard_z_samples()
    rng = np.random.default_rng(seed)
    r = 0.8 * np.sqrt(rng.uniform(0.0, 1.0, extra))
    th = rng.uniform(0.0, 2.0 * np.pi, extra)
    pts = np.concatenate([pts, r * np.exp(1j * th)])
    return clamp_grid(pts, n)


def _conic_probe_points(q, n):
    geo = q.geometry()
    ring = geo.boundary_points(12)
    pts = [complex(geo.center)]
    for s in (0.3, 0.6):
        pts.extend(geo.center + s * (ring - geo.center))
    return clamp_grid(np.asarray(pts, dtype=complex), n, domain=q)


def _residual_summary(field, A, n, pts, data=None):
    """Max |(dbar - A)^n field - data| over the probes, by nested stencils."""
    vals = iterated_apply(field, A, None, n, pts, check_domain=False)
    if data is not None:
        target = np.asarray(data(pts), dtype=complex)
        if isinstance(vals, Bicomplex):
            vals = vals - Bicomplex.from_any(target)
        else:
            vals = vals - target
    mags = bc_norm(vals) if isinstance(vals, Bicomplex) else np.abs(vals)
    mags = np.asarray(mags, dtype=float).reshape(-1)
    return {"max_abs": float(mags.max()), "points": int(mags.size)}


def _coeff_json(c):
    if isinstance(c, GaussianRational):
        return {"re": str(c.re), "im": str(c.im)}
    c = complex(c)
    return {"re": c.real, "im": c.imag}


def _poly_json(p):
    terms = []
    for (i, j) in sorted(p.terms):
        entry = {"i": i, "j": j}
        entry.update(_coeff_json(p.terms[(i, j)]))
        terms.append(entry)
    return {"frame": p.frame, "terms": terms}


def _solvability_json(rep):
    return {
        "k_max": rep.k_max,
        "samples": int(rep.samples.size),
        "tolerance": rep.tolerance,
        "verdict": rep.verdict.value,
    }


def _build_disk_problem(pf):
    payload = pf.payload
    A = payload.get("coefficient")
    if pf.kind == "disk-poly":
        variant = dd.Variant.POLY
    elif pf.kind == "disk-hoiv":
        if isinstance(A, BicomplexPoly):
            raise SchemaError("bicomplex coefficient needs kind disk-bicomplex")
        variant = dd.Variant.HOIV
    else:
        variant = dd.Variant.BC_HOIV if A is not None else dd.Variant.BC_POLY
    return dd.DiskProblem(
        payload["order"], payload["gammas"], A=A, f=payload.get("f"), variant=variant
    )


def _check_disk(problem, tol, nodes):
    """(solvable, report-fragment) for any disk variant."""
    if problem.variant is dd.Variant.POLY:
        rep = dd.check_poly_solvability(problem, tol=tol, n_nodes=nodes)
        return rep.solvable, {"conditions": _solvability_json(rep)}
    if problem.variant is dd.Variant.HOIV:
        rep = dd.check_hoiv_solvability(problem, tol=tol, n_nodes=nodes)
        return rep.solvable, {"conditions": _solvability_json(rep)}
    rp, rm = dd.bc_check_solvability(problem, tol=tol, n_nodes=nodes)
    ok = rp.solvable and rm.solvable
    return ok, {"conditions": {"plus": _solvability_json(rp), "minus": _solvability_json(rm)}}


def _solve_disk(problem, nodes):
    if problem.variant is dd.Variant.POLY:
        return dd.solve_poly_disk(problem, n_nodes=nodes)
    if problem.variant is dd.Variant.HOIV:
        return dd.solve_hoiv_disk(problem, n_nodes=nodes)
    return dd.bc_solve_disk(problem, n_nodes=nodes)


def _poisson_boundary_mismatch(field, data, n_samples=256):
    """Sup of |field - data| sampled just inside the rim (r = 1 - 1e-9)."""
    theta = np.arange(n_samples) * (2.0 * np.pi / n_samples)
    pts = (1.0 - 1e-9) * np.exp(1j * theta)
    vals = field(pts)
    target = data(theta)
    if isinstance(vals, Bicomplex) or isinstance(target, Bicomplex):
        vals = vals if isinstance(vals, Bicomplex) else Bicomplex.from_any(np.asarray(vals))
        target = target if isinstance(target, Bicomplex) else Bicomplex.from_any(np.asarray(target, dtype=complex))
        return float(np.max(np.asarray(bc_norm(vals - target))))
    return float(np.max(np.abs(np.asarray(vals, dtype=complex) - np.asarray(target, dtype=complex))))


def _write_field_csv(path, field, xs, ys, mask):
    vals, jvals = _eval_grid(field, xs, ys, mask)
    write_solution_csv(path, xs, ys, vals, jvals)


# -- solve / check ---------------------------------------------------------


def _solve_disk_kind(pf, args, out_dir, write_csv):
    problem = _build_disk_problem(pf)
    solvable, fragment = _check_disk(problem, args.tol, args.nodes)
    report = {
        "kind": pf.kind,
        "order": problem.n,
        "grid": {"n": args.grid, "nodes": args.nodes},
        "verdict": "solvable" if solvable else "not_solvable",
    }
    report.update(fragment)
    if not solvable:
        write_json(os.path.join(out_dir, "report.json"), report)
        return 2
    field = _solve_disk(problem, args.nodes)
    if write_csv:
        report["verdict"] = "solved"
        xs, ys, mask = _disk_grid(args.grid)
        _write_field_csv(os.path.join(out_dir, "solution.csv"), field, xs, ys, mask)
    probes = _probe_points(args.seed, problem.n)
    report["residual"] = _residual_summary(
        field, problem.A, problem.n, probes, data=problem.f
    )
    report["boundary"] = {
        "gamma0_mismatch": boundary_mismatch(field, problem.gammas[0]),
        "samples": 256,
    }
    write_json(os.path.join(out_dir, "report.json"), report)
    return 0


def _solve_conic_kind(pf, args, out_dir, write_csv):
    payload = pf.payload
    q = payload["conic"]
    P = payload["data"]
    A = payload.get("coefficient")
    route = payload.get("route", "split")
    report = {"kind": pf.kind, "grid": {"n": args.grid}, "verdict": "solved"}

    if pf.kind == "conic-bianalytic" or A is None:
        b = solve_bianalytic_conic(q, P)
        field = solve_vekua_bitsadze_conic(q, P, None)
        report["solution"] = {
            "h0": _poly_json(b.h0),
            "h1": _poly_json(b.h1),
            "cofactor": _poly_json(b.cofactor),
        }
        report["identity_residual_zero"] = bool(b.identity_residual().is_zero())
        pts = conic_boundary_points(q, 64)
        mismatch = float(
            np.max(np.abs(np.asarray(field(pts), dtype=complex) - np.asarray(P(pts), dtype=complex)))
        )
        report["boundary"] = {"mismatch": mismatch, "samples": int(pts.size)}
        interior_only = False
    elif isinstance(A, BicomplexPoly):
        field = bc_solve_vekua_bitsadze_conic(q, P, A, route=route)
        report["route"] = route
        probes = _conic_probe_points(q, 2)
        report["residual"] = _residual_summary(field, A, 2, probes)
        interior_only = True
    else:
        field = solve_vekua_bitsadze_conic(q, P, A)
        probes = _conic_probe_points(q, 2)
        report["residual"] = _residual_summary(field, A, 2, probes)
        interior_only = True

    if write_csv:
        xs, ys, mask = _conic_grid(q, args.grid, interior_only)
        _write_field_csv(os.path.join(out_dir, "solution.csv"), field, xs, ys, mask)
    write_json(os.path.join(out_dir, "report.json"), report)
    return 0


def _solve_poisson_kind(pf, args, out_dir, write_csv):
    data = pf.payload["data"]
    field = dd.bc_poisson_solve(data, n_nodes=max(args.nodes, 512))
    if write_csv:
        xs, ys, mask = _disk_grid(args.grid)
        _write_field_csv(os.path.join(out_dir, "solution.csv"), field, xs, ys, mask)
    report = {
        "kind": pf.kind,
        "grid": {"n": args.grid},
        "verdict": "solved",
        "boundary": {"mismatch": _poisson_boundary_mismatch(field, data), "samples": 256},
    }
    write_json(os.path.join(out_dir, "report.json"), report)
    return 0


def _witness_fields(order, count, coeff, bicomplex):
    if bicomplex:
        if coeff is not None:
            raise SchemaError("bicomplex witness families do not take a coefficient")
        return [dd.bc_witness(order, j) for j in range(count)]
    return [dd.witness_family(order, k, A=coeff) for k in range(count)]


def _gram_rank(fields, seed):
    """Rank of the Gram matrix of witness samples: the independence certificate."""
    pts = dd.standard_z_samples()
    rng = np.random.default_rng(seed)
    extra = max(30, 2 * len(fields))
    r = 0.85 * np.sqrt(rng.uniform(0.0, 1.0, extra))
    th = rng.uniform(0.0, 2.0 * np.pi, extra)
    pts = np.concatenate([pts, r * np.exp(1j * th)])
    vecs = []
    for f in fields:
        v = f(pts)
        if isinstance(v, Bicomplex):
            v = np.concatenate([np.asarray(v.sc, dtype=complex), np.asarray(v.vec, dtype=complex)])
        vecs.append(np.asarray(v, dtype=complex).reshape(-1))
    mat = np.stack(vecs)
    gram = mat @ mat.conj().T
    return int(np.linalg.matrix_rank(gram)), gram.shape[0]


def _run_witness(order, count, coeff, bicomplex, out_dir, grid_n, seed):
    fields = _witness_fields(order, count, coeff, bicomplex)
    xs, ys, mask = _disk_grid(grid_n)
    theta = np.arange(512) * (2.0 * np.pi / 512)
    rim = np.exp(1j * theta)
    entries = []
    for k, f in enumerate(fields):
        name = f"witness_{k:02d}.csv"
        _write_field_csv(os.path.join(out_dir, name), f, xs, ys, mask)
        v = f(rim)
        sup = float(np.max(np.asarray(bc_norm(v) if isinstance(v, Bicomplex) else np.abs(v))))
        probes = _probe_points(seed, order)
        res = _residual_summary(f, f.coefficient_ref, order, probes)
        entries.append(
            {"index": k, "csv": name, "boundary_sup": sup, "residual_max": res["max_abs"]}
        )
    rank, size = _gram_rank(fields, seed)
    report = {
        "kind": "witness",
        "order": order,
        "count": count,
        "bicomplex": bool(bicomplex),
        "witnesses": entries,
        "gram": {"rank": rank, "count": size, "independent": rank == size},
        "grid": {"n": grid_n},
    }
    write_json(os.path.join(out_dir, "report.json"), report)
    return 0


# -- verify ----------------------------------------------------------------


def _verify_checks(pf, args, tol):
    """List of (name, value, threshold) checks for one problem."""
    checks = []
    if pf.kind in DISK_KINDS:
        nodes = max(args.nodes, 4096)  # rim extrapolation needs dense quadrature
        problem = _build_disk_problem(pf)
        solvable, fragment = _check_disk(problem, tol, nodes)
        conds = fragment["conditions"]
        if "plus" in conds:
            cond_max = max(max(conds["plus"]["k_max"]), max(conds["minus"]["k_max"]))
        else:
            cond_max = max(conds["k_max"])
        checks.append(("solvability_conditions", cond_max, tol))
        if solvable:
            field = _solve_disk(problem, nodes)
            probes = _probe_points(args.seed, problem.n)
            res = _residual_summary(field, problem.A, problem.n, probes, data=problem.f)
            checks.append(("iterated_residual", res["max_abs"], max(tol, 1e-6)))
            # one-sided rim extrapolation truncates at delta^3 f'''; the tight
            # tolerances live in the conditions and residual checks above
            checks.append(
                ("boundary_trace", boundary_mismatch(field, problem.gammas[0]),
                 max(100 * tol, 1e-4))
            )
        return checks, {"order": problem.n, "nodes": nodes}

    if pf.kind in CONIC_KINDS:
        q = pf.payload["conic"]
        P = pf.payload["data"]
        A = pf.payload.get("coefficient")
        route = pf.payload.get("route", "split")
        if pf.kind == "conic-bianalytic" or A is None:
            b = solve_bianalytic_conic(q, P)
            exact = 0.0 if b.identity_residual().is_zero() else float("inf")
            checks.append(("boundary_identity_exact", exact, 0.0))
            pts = conic_boundary_points(q, 64)
            vals = np.asarray(b.poly(pts), dtype=complex)
            mismatch = float(np.max(np.abs(vals - np.asarray(P(pts), dtype=complex))))
            checks.append(("boundary_trace", mismatch, max(tol, 1e-10)))
            return checks, {"degrees": {"h0": b.h0.deg_z, "h1": b.h1.deg_z}}
        if isinstance(A, BicomplexPoly):
            field = bc_solve_vekua_bitsadze_conic(q, P, A, route=route)
            other = bc_solve_vekua_bitsadze_conic(
                q, P, A, route="exponential" if route == "split" else "split"
            )
            probes = _conic_probe_points(q, 2)
            res = _residual_summary(field, A, 2, probes)
            checks.append(("iterated_residual", res["max_abs"], max(tol, 1e-6)))
            va = field(probes)
            vb = other(probes)
            gap = float(np.max(np.asarray(bc_norm(va - vb))))
            checks.append(("route_agreement", gap, max(tol, 1e-4)))
            return checks, {"route": route}
        field = solve_vekua_bitsadze_conic(q, P, A)
        probes = _conic_probe_points(q, 2)
        res = _residual_summary(field, A, 2, probes)
        checks.append(("iterated_residual", res["max_abs"], max(tol, 1e-6)))
        # data for nonzero A is e^{T[A]} P; recompute the factor on a finer
        # quadrature so the comparison is not the solver echoing itself
        factor = exp_t_factor(A, domain=q, n_grid=384)
        pts = conic_boundary_points(q, 32)
        pts = q.geometry().center + 0.98 * (pts - q.geometry().center)
        target = np.asarray(factor(pts), dtype=complex) * np.asarray(P(pts), dtype=complex)
        got = np.asarray(field(pts), dtype=complex)
        checks.append(("boundary_trace", float(np.max(np.abs(got - target))), max(100 * tol, 1e-3)))
        return checks, {}

    if pf.kind == "poisson":
        data = pf.payload["data"]
        field = dd.bc_poisson_solve(data, n_nodes=max(args.nodes, 512))
        checks.append(("boundary_trace", _poisson_boundary_mismatch(field, data), max(tol, 1e-6)))
        return checks, {}

    if pf.kind == "witness":
        payload = pf.payload
        fields = _witness_fields(
            payload["order"], payload["count"], payload.get("coefficient"),
            payload.get("bicomplex", False),
        )
        theta = np.arange(512) * (2.0 * np.pi / 512)
        rim = np.exp(1j * theta)
        sup = 0.0
        resmax = 0.0
        probes = _probe_points(args.seed, payload["order"])
        for f in fields:
            v = f(rim)
            sup = max(sup, float(np.max(np.asarray(bc_norm(v) if isinstance(v, Bicomplex) else np.abs(v)))))
            res = _residual_summary(f, f.coefficient_ref, payload["order"], probes)
            resmax = max(resmax, res["max_abs"])
        rank, size = _gram_rank(fields, args.seed)
        checks.append(("boundary_vanishing", sup, max(tol, 1e-12)))
        checks.append(("iterated_residual", resmax, max(tol, 1e-6)))
        checks.append(("gram_rank_deficit", float(size - rank), 0.0))
        return checks, {"order": payload["order"], "count": payload["count"]}

    raise SchemaError(f"cannot verify kind {pf.kind!r}")


def cmd_verify(pf, args, out_dir):
    tol = args.tol
    target = pf
    if pf.kind == "verify":
        target = pf.payload["problem"]
        if args.tol_explicit is None and "tolerance" in pf.payload:
            tol = pf.payload["tolerance"]
    checks, extra = _verify_checks(target, args, tol)
    rendered = {}
    passed = True
    for name, value, threshold in checks:
        ok = value <= threshold
        passed = passed and ok
        rendered[name] = {"value": value, "threshold": threshold, "pass": ok}
    report = {
        "kind": "verify",
        "problem_kind": target.kind,
        "tolerance": tol,
        "checks": rendered,
        "passed": passed,
    }
    report.update(extra)
    write_json(os.path.join(out_dir, "report.json"), report)
    return 0 if passed else 2


# -- render ----------------------------------------------------------------


def _channel_image(columns, channel):
    if channel == "abs":
        acc = None
        for col in columns.values():
            acc = col**2 if acc is None else acc + col**2
        return np.sqrt(acc)
    if channel not in columns:
        raise SchemaError(f"channel {channel!r} not present in this CSV", code="BAD_CHANNEL")
    return columns[channel]


def cmd_render(args):
    xs, ys, columns = read_solution_csv(args.csv)
    img = _channel_image(columns, args.channel)
    out_dir = args.out if args.out else os.path.dirname(os.path.abspath(args.csv))
    stem = os.path.splitext(os.path.basename(args.csv))[0]
    path = os.path.join(out_dir, f"{stem}_{args.channel}.pgm")
    write_pgm(path, np.flipud(img))  # image top row = largest y
    print(path)
    return 0


# -- argument plumbing -----------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; 2 means not-solvable here, so remap."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"ERROR BAD_USAGE: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_common(sub, nodes=True):
    sub.add_argument("--out", default=".", help="output directory (default: .)")
    sub.add_argument("--grid", type=int, default=64, help="grid points per axis")
    if nodes:
        sub.add_argument("--nodes", type=int, default=1024, help="boundary quadrature nodes")
    sub.add_argument("--tol", type=float, default=None, help="tolerance (default 1e-6)")
    sub.add_argument("--seed", type=int, default=0, help="seed for probe points")


def build_parser():
    parser = _Parser(prog="vekua", description="Dirichlet problems for polyanalytic, iterated Vekua, and bicomplex equations on disks and conics.")
    subs = parser.add_subparsers(dest="command", required=True)

    p_solve = subs.add_parser("solve", help="solve a problem file, write solution.csv and report.json")
    p_solve.add_argument("problem")
    _add_common(p_solve)

    p_check = subs.add_parser("check", help="test solvability only, write report.json")
    p_check.add_argument("problem")
    _add_common(p_check)

    p_wit = subs.add_parser("witness", help="emit nonuniqueness witness fields")
    p_wit.add_argument("problem", nargs="?", default=None)
    p_wit.add_argument("--order", type=int, default=None)
    p_wit.add_argument("--count", type=int, default=None)
    p_wit.add_argument("--coeff", choices=("zero", "z", "z_over_2"), default=None)
    p_wit.add_argument("--bicomplex", action="store_true")
    _add_common(p_wit, nodes=False)

    p_rend = subs.add_parser("render", help="solution CSV to a PGM image")
    p_rend.add_argument("csv")
    p_rend.add_argument("--channel", choices=CHANNELS, default="re")
    p_rend.add_argument("--out", default=None, help="output directory (default: alongside the CSV)")

    p_ver = subs.add_parser("verify", help="independent checks on a problem's solution")
    p_ver.add_argument("problem")
    _add_common(p_ver)
    return parser


def _named_coeff(name):
    if name is None or name == "zero":
        return None
    if name == "z":
        return BivarPoly.var_z()
    return BivarPoly.var_z() * GaussianRational("1/2")


def _dispatch(args):
    if args.command == "render":
        return cmd_render(args)

    out_dir = args.out
    os.makedirs(out_dir, exist_ok=True)
    args.tol_explicit = args.tol
    if args.tol is None:
        args.tol = 1e-6

    if args.command == "witness":
        if args.problem is not None:
            pf = load_problem(args.problem)
            if pf.kind != "witness":
                raise SchemaError(f"witness command needs a witness problem, got {pf.kind!r}")
            payload = pf.payload
            return _run_witness(
                payload["order"], payload["count"], payload.get("coefficient"),
                payload.get("bicomplex", False), out_dir, args.grid, args.seed,
            )
        if args.order is None or args.count is None:
            raise SchemaError("witness needs a problem file or --order and --count")
        return _run_witness(
            args.order, args.count, _named_coeff(args.coeff), args.bicomplex,
            out_dir, args.grid, args.seed,
        )

    pf = load_problem(args.problem)
    if args.command == "verify":
        return cmd_verify(pf, args, out_dir)

    if pf.kind == "verify":
        raise SchemaError("kind 'verify' is for the verify command")
    write_csv = args.command == "solve"
    if pf.kind in DISK_KINDS:
        return _solve_disk_kind(pf, args, out_dir, write_csv)
    if pf.kind in CONIC_KINDS:
        return _solve_conic_kind(pf, args, out_dir, write_csv)
    if pf.kind == "poisson":
        return _solve_poisson_kind(pf, args, out_dir, write_csv)
    return _run_witness(
        pf.payload["order"], pf.payload["count"], pf.payload.get("coefficient"),
        pf.payload.get("bicomplex", False), out_dir, args.grid, args.seed,
    )


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except VekuaError as ex:
        print(f"ERROR {ex.code}: {ex}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as ex:
        print(f"ERROR INTERNAL: {ex}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
