"""Dirichlet problems of order n on the unit disk.

The n-th order problem prescribes gamma_k = trace of the k-fold operator
applied to w, for k = 0..n-1. Solvability is a pointwise family of integral
conditions in z; when they vanish the solution is an explicit sum of
Cauchy-type boundary integrals plus one area term. The HOIV variant is the
same problem conjugated by the never-vanishing factor e^{T[A]}, so its
kernels carry the weight e^{-T[A]} on the boundary. Bicomplex variants are
two independent complex problems on the idempotent streams, with the plus
stream conjugated on the way in and out.

Ill-posedness is witnessed constructively: (1 - z zbar)^{n-1} z^k vanishes
on the circle and solves the order-n homogeneous equation, so homogeneous
data never pins down a unique solution for n >= 2.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from .bicomplex_core import Bicomplex, idempotent_join
from .errors import InvalidOrderError, MixedProblemError, NotSolvableError
from .fourier import BicomplexTrigPoly, TrigPoly
from .integral_ops import (
    as_field,
    cauchy_boundary,
    poisson,
    t_disk,
    t_poly_disk,
    unit_disk_weights,
)
from .poly_algebra import BicomplexPoly, BivarPoly, ZZBAR
from .representations import Provenance, SolutionField, exp_t_factor, _poly_coefficient
from .verify import iterated_apply

_CHUNK = 48


class Variant(enum.Enum):
    POLY = "poly"
    HOIV = "hoiv"
    BC_POLY = "bc_poly"
    BC_HOIV = "bc_hoiv"


class Verdict(enum.Enum):
    SOLVABLE = "solvable"
    NOT_SOLVABLE = "not_solvable"


def _lift_trace(g):
    if isinstance(g, BicomplexTrigPoly):
        return g
    if isinstance(g, TrigPoly):
        return BicomplexTrigPoly.from_scalar(g)
    if isinstance(g, Bicomplex):
        return BicomplexTrigPoly(TrigPoly.constant(g.sc), TrigPoly.constant(g.vec))
    return BicomplexTrigPoly.from_scalar(TrigPoly.constant(complex(g)))


class DiskProblem:
    """Order-n Dirichlet data on the unit disk.

    gammas: n boundary traces (TrigPoly, or BicomplexTrigPoly for the
    bicomplex variants). A: optional coefficient of the first-order factor.
    f: optional nonhomogeneity; the paper's HOIV theorem has f == 0, so A
    and f together are rejected as a mixed problem.
    """

    __slots__ = ("n", "A", "f", "gammas", "variant")

    def __init__(self, n, gammas, A=None, f=None, variant=None):
        n = int(n)
        if n < 1:
            raise InvalidOrderError("order must be at least 1")
        gammas = tuple(gammas)
        if len(gammas) != n:
            raise InvalidOrderError(f"need exactly {n} boundary traces, got {len(gammas)}")
        if A is not None and f is not None:
            raise MixedProblemError(
                "nonzero f with coefficient A present has no solution formula"
            )
        bicx = any(isinstance(g, BicomplexTrigPoly) for g in gammas) or isinstance(
            A, (Bicomplex, BicomplexPoly)
        )
        if variant is None:
            if bicx:
                variant = Variant.BC_HOIV if A is not None else Variant.BC_POLY
            else:
                variant = Variant.HOIV if A is not None else Variant.POLY
        if variant in (Variant.HOIV, Variant.BC_HOIV) and A is None:
            raise MixedProblemError("HOIV variants need a coefficient A")
        if variant in (Variant.POLY, Variant.BC_POLY) and A is not None:
            raise MixedProblemError("polyanalytic variants have no coefficient A")
        if variant in (Variant.BC_POLY, Variant.BC_HOIV):
            gammas = tuple(_lift_trace(g) for g in gammas)
        self.n = n
        self.A = A
        self.f = f
        self.gammas = gammas
        self.variant = variant

    def __repr__(self):
        return f"DiskProblem(n={self.n}, variant={self.variant.value})"


class SolvabilityReport:
    """Per-condition maxima of the solvability integrals over sample points."""

    __slots__ = ("k_max", "samples", "tolerance", "verdict")

    def __init__(self, k_max, samples, tolerance):
        self.k_max = [float(v) for v in k_max]
        self.samples = np.asarray(samples, dtype=complex)
        self.tolerance = float(tolerance)
        ok = all(v <= self.tolerance for v in self.k_max)
        self.verdict = Verdict.SOLVABLE if ok else Verdict.NOT_SOLVABLE

    @property
    def solvable(self):
        return self.verdict is Verdict.SOLVABLE

    def __repr__(self):
        vals = ", ".join(f"{v:.2e}" for v in self.k_max)
        return (
            f"SolvabilityReport({self.verdict.value}, k_max=[{vals}], "
            f"tol={self.tolerance:g}, {self.samples.size} samples)"
        )


def standard_z_samples():
    """Deterministic interior sample set: radii 0.3/0.6/0.9, 7 seeded angles
    shared across radii, plus the origin."""
    rng = np.random.default_rng(20)
    angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, 7))
    pts = [0.0 + 0.0j]
    for r in (0.3, 0.6, 0.9):
        pts.extend(r * np.exp(1j * angles))
    return np.asarray(pts, dtype=complex)


def _factorial(k):
    return float(math.factorial(k))


def _boundary_weight(A, n_nodes, n_grid):
    """Samples of e^{-T[A]} at the n_nodes boundary points."""
    theta = np.arange(n_nodes) * (2.0 * math.pi / n_nodes)
    zeta = np.exp(1j * theta)
    ap = _poly_coefficient(A)
    if ap is not None:
        tvals = t_poly_disk(ap)(zeta)
    else:
        tvals = t_disk(as_field(A), zeta, n_grid)
    return np.exp(-np.asarray(tvals, dtype=complex))


def _gamma_samples(gamma, n_nodes, weight=None):
    theta = np.arange(n_nodes) * (2.0 * math.pi / n_nodes)
    vals = np.asarray(gamma(theta), dtype=complex) if callable(gamma) else np.full(
        n_nodes, complex(gamma)
    )
    vals = np.broadcast_to(vals, theta.shape).astype(complex)
    if weight is not None:
        vals = vals * weight
    return vals


def _condition_area_term(f, k, n, zs, n_grid):
    """(-1)^(n-k) (zbar/pi) iint f(zeta) conj(zeta-z)^(n-1-k) /
    ((n-1-k)! (1 - zbar zeta)) dA, vectorized over the z samples."""
    zeta, w = unit_disk_weights(n_grid)
    fvals = np.asarray(as_field(f)(zeta), dtype=complex)
    p = n - 1 - k
    out = np.empty(zs.shape, dtype=complex)
    for s in range(0, zs.size, _CHUNK):
        zb = zs[s : s + _CHUNK, None]
        kern = np.conj(zeta[None, :] - zb) ** p / (1.0 - np.conj(zb) * zeta[None, :])
        out[s : s + _CHUNK] = (fvals[None, :] * kern) @ w
    sign = -1.0 if (n - k) % 2 else 1.0
    return sign * (np.conj(zs) / math.pi) * out / _factorial(p)


def _solution_area_term(f, n, zs, n_grid):
    """(-1)^n/pi iint f(zeta) conj(zeta-z)^(n-1) / ((n-1)! (zeta-z)) dA.

    For n == 1 this is exactly T[f] and uses the desingularized scheme; for
    n >= 2 the conjugate factor bounds the integrand and the clipped
    midpoint rule applies directly (the midpoint cell at zeta == z is
    skipped; its integrand is bounded so the omission is O(h^2) area).
    """
    if n == 1:
        return np.asarray(t_disk(as_field(f), zs, n_grid), dtype=complex)
    zeta, w = unit_disk_weights(n_grid)
    fvals = np.asarray(as_field(f)(zeta), dtype=complex)
    out = np.empty(zs.shape, dtype=complex)
    for s in range(0, zs.size, _CHUNK):
        zb = zs[s : s + _CHUNK, None]
        d = zeta[None, :] - zb
        kern = np.conj(d) ** (n - 1)
        np.divide(kern, d, out=kern, where=(d != 0))
        kern[d == 0] = 0.0
        out[s : s + _CHUNK] = (fvals[None, :] * kern) @ w
    sign = -1.0 if n % 2 else 1.0
    return sign * out / (math.pi * _factorial(n - 1))


def _check_conditions(gamma_vals, f, n, zs, tol, n_nodes, n_grid):
    """Shared condition evaluator; gamma_vals are boundary samples."""
    zs = np.asarray(zs, dtype=complex).reshape(-1)
    k_max = []
    for k in range(n):
        acc = np.zeros(zs.shape, dtype=complex)
        for lam in range(k, n):
            p = lam - k
            term = cauchy_boundary(gamma_vals[lam], "condition", zs, n_nodes, power=p)
            sign = -1.0 if p % 2 else 1.0
            acc = acc + sign * np.conj(zs) * term / _factorial(p)
        if f is not None:
            acc = acc + _condition_area_term(f, k, n, zs, n_grid)
        k_max.append(float(np.max(np.abs(acc))))
    return SolvabilityReport(k_max, zs, tol)


def check_poly_solvability(problem, z_samples=None, tol=1e-6, n_nodes=1024, n_grid=256):
    """Solvability conditions for the polyanalytic problem (A absent)."""
    if problem.variant is not Variant.POLY:
        raise MixedProblemError("check_poly_solvability needs the Poly variant")
    zs = standard_z_samples() if z_samples is None else z_samples
    gvals = [_gamma_samples(g, n_nodes) for g in problem.gammas]
    return _check_conditions(gvals, problem.f, problem.n, zs, tol, n_nodes, n_grid)


def _poly_solution_evaluator(gamma_vals, f, n, n_nodes, n_grid):
    def w(z):
        z0 = np.asarray(z, dtype=complex)
        zs = z0.reshape(-1)
        acc = np.zeros(zs.shape, dtype=complex)
        for lam in range(n):
            term = cauchy_boundary(gamma_vals[lam], "solution", zs, n_nodes, power=lam)
            sign = -1.0 if lam % 2 else 1.0
            acc = acc + sign * term / _factorial(lam)
        if f is not None:
            acc = acc + _solution_area_term(f, n, zs, n_grid)
        return complex(acc[0]) if z0.shape == () else acc.reshape(z0.shape)

    return w


def solve_poly_disk(problem, n_nodes=1024, n_grid=256):
    """Integral-formula solution of the polyanalytic problem.

    Assumes the conditions hold (check_poly_solvability is the caller's
    job); on non-solvable data the formula still evaluates but does not
    attain the boundary traces.
    """
    if problem.variant is not Variant.POLY:
        raise MixedProblemError("solve_poly_disk needs the Poly variant")
    gvals = [_gamma_samples(g, n_nodes) for g in problem.gammas]
    w = _poly_solution_evaluator(gvals, problem.f, problem.n, n_nodes, n_grid)
    return SolutionField(w, Provenance.INTEGRAL_FORMULA, problem.n)


def check_hoiv_solvability(problem, z_samples=None, tol=1e-6, n_nodes=1024, n_grid=256):
    """Solvability of the HOIV problem: same conditions, with the boundary
    data weighted by e^{-T[A]}."""
    if problem.variant is not Variant.HOIV:
        raise MixedProblemError("check_hoiv_solvability needs the Hoiv variant")
    zs = standard_z_samples() if z_samples is None else z_samples
    weight = _boundary_weight(problem.A, n_nodes, n_grid)
    gvals = [_gamma_samples(g, n_nodes, weight) for g in problem.gammas]
    return _check_conditions(gvals, None, problem.n, zs, tol, n_nodes, n_grid)


def solve_hoiv_disk(problem, n_nodes=1024, n_grid=256):
    """w = e^{T[A]} phi, phi built from the weighted boundary integrals."""
    if problem.variant is not Variant.HOIV:
        raise MixedProblemError("solve_hoiv_disk needs the Hoiv variant")
    weight = _boundary_weight(problem.A, n_nodes, n_grid)
    gvals = [_gamma_samples(g, n_nodes, weight) for g in problem.gammas]
    phi = _poly_solution_evaluator(gvals, None, problem.n, n_nodes, n_grid)
    factor = exp_t_factor(problem.A, n_grid=n_grid)

    def w(z):
        z = np.asarray(z, dtype=complex)
        out = np.asarray(phi(z), dtype=complex) * factor(z)
        return complex(out) if out.shape == () else out

    return SolutionField(
        w, Provenance.INTEGRAL_FORMULA, problem.n, coefficient_ref=problem.A
    )


# -- witnesses ---------------------------------------------------------------


def witness_poly(n, k):
    """(1 - z zbar)^(n-1) z^k as an exact polynomial."""
    if n < 2:
        raise InvalidOrderError("witness families need order n >= 2")
    if k < 0:
        raise ValueError("k must be nonnegative")
    z = BivarPoly.var_z()
    zb = BivarPoly.var_zbar()
    return (BivarPoly.one() - z * zb) ** (n - 1) * z**k


def witness_family(n, k, A=None, n_grid=256):
    """Nontrivial solution of the homogeneous problem with zero traces.

    w = (1-z zbar)^(n-1) z^k, times e^{T[A]} when A is present. The factor
    never vanishes, so every member is a genuine nonuniqueness witness.
    """
    p = witness_poly(n, k)
    if A is None:
        return SolutionField(p, Provenance.WITNESS, n)
    factor = exp_t_factor(A, n_grid=n_grid)

    def w(z):
        z = np.asarray(z, dtype=complex)
        out = np.asarray(p(z), dtype=complex) * factor(z)
        return complex(out) if out.shape == () else out

    return SolutionField(w, Provenance.WITNESS, n, coefficient_ref=A)


# -- bicomplex variants --------------------------------------------------------


def _split_problem(problem):
    """Two complex problems from a bicomplex one.

    Plus stream: data (gamma_k^+)* and coefficient (A^+)*; minus stream:
    gamma_k^- and A^-. The conjugations implement the paper's pattern
    w = p+ (solution of the conjugated plus problem)* + p- (minus solution).
    """
    gplus, gminus = [], []
    for g in problem.gammas:
        gp, gm = g.split()
        gplus.append(gp.conj())
        gminus.append(gm)
    if problem.A is None:
        return (
            DiskProblem(problem.n, gplus, variant=Variant.POLY),
            DiskProblem(problem.n, gminus, variant=Variant.POLY),
        )
    A = problem.A
    if isinstance(A, Bicomplex):
        A = BicomplexPoly(BivarPoly.const(A.sc, ZZBAR), BivarPoly.const(A.vec, ZZBAR))
    elif not isinstance(A, BicomplexPoly):
        A = BicomplexPoly.from_scalar(
            A if isinstance(A, BivarPoly) else BivarPoly.const(A, ZZBAR)
        )
    ap, am = A.split()
    return (
        DiskProblem(problem.n, gplus, A=ap.conj_function(), variant=Variant.HOIV),
        DiskProblem(problem.n, gminus, A=am, variant=Variant.HOIV),
    )


def bc_check_solvability(problem, z_samples=None, tol=1e-6, n_nodes=1024, n_grid=256):
    """Pair of SolvabilityReports for the idempotent streams (plus, minus)."""
    if problem.variant not in (Variant.BC_POLY, Variant.BC_HOIV):
        raise MixedProblemError("bc_check_solvability needs a bicomplex variant")
    pp, pm = _split_problem(problem)
    if problem.variant is Variant.BC_POLY:
        rp = check_poly_solvability(pp, z_samples, tol, n_nodes, n_grid)
        rm = check_poly_solvability(pm, z_samples, tol, n_nodes, n_grid)
    else:
        rp = check_hoiv_solvability(pp, z_samples, tol, n_nodes, n_grid)
        rm = check_hoiv_solvability(pm, z_samples, tol, n_nodes, n_grid)
    return rp, rm


def bc_solve_disk(problem, n_nodes=1024, n_grid=256):
    """w = p+ (w_plus)* + p- w_minus from the two complex solutions."""
    if problem.variant not in (Variant.BC_POLY, Variant.BC_HOIV):
        raise MixedProblemError("bc_solve_disk needs a bicomplex variant")
    pp, pm = _split_problem(problem)
    if problem.variant is Variant.BC_POLY:
        wp = solve_poly_disk(pp, n_nodes, n_grid)
        wm = solve_poly_disk(pm, n_nodes, n_grid)
    else:
        wp = solve_hoiv_disk(pp, n_nodes, n_grid)
        wm = solve_hoiv_disk(pm, n_nodes, n_grid)

    def w(z):
        z = np.asarray(z, dtype=complex)
        vp = np.conj(np.asarray(wp(z), dtype=complex))
        vm = np.asarray(wm(z), dtype=complex)
        return idempotent_join(vp, vm)

    return SolutionField(
        w, Provenance.INTEGRAL_FORMULA, problem.n,
        coefficient_ref=problem.A, bicomplex=True, components=(wp, wm),
    )


def bc_witness(n, j):
    """Bicomplex nonuniqueness witness joining two independent complex ones.

    w = p+ ((1-z zbar)^(n-1) z^j)* + p- (1-z zbar)^(n-1) z^(j+1); vanishes
    identically on |z| = 1.
    """
    f = witness_poly(n, j)
    g = witness_poly(n, j + 1)

    def w(z):
        z = np.asarray(z, dtype=complex)
        return idempotent_join(
            np.conj(np.asarray(f(z), dtype=complex)),
            np.asarray(g(z), dtype=complex),
        )

    fp = SolutionField(f, Provenance.WITNESS, n)
    fm = SolutionField(g, Provenance.WITNESS, n)
    return SolutionField(w, Provenance.WITNESS, n, bicomplex=True,
                         components=(fp, fm))


def bc_poisson_solve(g, n_nodes=512):
    """Componentwise Poisson extension of bicomplex (or scalar) circle data."""

    def w(z):
        z = np.asarray(z, dtype=complex)
        r = np.abs(z)
        theta = np.angle(z)
        return poisson(g, r, theta, n_nodes)

    bicx = isinstance(g, (BicomplexTrigPoly, tuple))
    components = None
    if bicx:
        gp, gm = g.split() if isinstance(g, BicomplexTrigPoly) else g
        components = (bc_poisson_solve(gp, n_nodes), bc_poisson_solve(gm, n_nodes))
    return SolutionField(w, Provenance.INTEGRAL_FORMULA, 1, bicomplex=bicx,
                         components=components)


# -- manufactured boundary traces ----------------------------------------------


def hoiv_boundary_traces(A, g, n, n_theta=256, trim=1e-13):
    """Exact traces gamma_k for the manufactured solution w = e^{T[A]} g.

    For polynomial A the operator commutes through the exponential factor:
    (dbar - A)^k (e^{T[A]} g) = e^{T[A]} dbar^k g, so the k-th trace is the
    boundary restriction of e^{T[A]} dbar^k g. When T[A] vanishes on the
    circle (true for A = c z, whose T is c(z zbar - 1)) the traces are exact
    trigonometric polynomials; otherwise the weight is folded in by FFT
    projection on n_theta nodes.
    """
    ap = _poly_coefficient(A)
    if ap is None:
        raise ValueError("hoiv_boundary_traces needs a polynomial A (or None)")
    if not isinstance(g, BivarPoly):
        raise ValueError("g must be a BivarPoly")
    t_of_a = t_poly_disk(ap)
    weight_trace = t_of_a.boundary_trace()
    out = []
    dk = g
    for k in range(n):
        if k:
            dk = dk.dzbar()
        base = dk.boundary_trace()
        if weight_trace.is_zero():
            out.append(base)
        else:
            theta = np.arange(n_theta) * (2.0 * math.pi / n_theta)
            vals = np.exp(weight_trace(theta)) * base(theta)
            coeffs = np.fft.fft(vals) / n_theta
            terms = {}
            for m in range(n_theta):
                mm = m if m <= n_theta // 2 else m - n_theta
                if abs(coeffs[m]) > trim:
                    terms[mm] = complex(coeffs[m])
            out.append(TrigPoly(terms))
    return out


def hoiv_boundary_traces_fd(field, A, n, n_theta=64, h=2e-4, delta=5e-3):
    """Finite-difference trace recipe: sample (dbar - A)^k field near the
    boundary and extrapolate one-sidedly to |z| = 1.

    Returns an (n, n_theta) array of trace samples at equally spaced
    angles. Noisier than the exact route; used to cross-check it. The field
    is evaluated through its formula, so it must extend smoothly a few
    stencil widths past the closed disk.
    """
    theta = np.arange(n_theta) * (2.0 * math.pi / n_theta)
    rays = np.exp(1j * theta)
    radii = (1.0 - 3 * delta, 1.0 - 2 * delta, 1.0 - delta)
    evaluator = field.evaluator if isinstance(field, SolutionField) else field
    acore = A if not isinstance(A, SolutionField) else A.evaluator
    out = np.empty((n, n_theta), dtype=complex)
    for k in range(n):
        if k == 0:
            ring = [np.asarray(evaluator(rays * r), dtype=complex) for r in radii]
        else:
            ring = [
                iterated_apply(evaluator, acore, None, k, rays * r, h, check_domain=False)
                for r in radii
            ]
        out[k] = 3.0 * ring[2] - 3.0 * ring[1] + ring[0]
    return theta, out


def example_witness_report(n, j, grid=None, h=1e-3):
    """Residual report for the published bicomplex witness formula.

    Evaluates w_j(z) = sum_{k=1}^{n-1} zhat*^(n-1) zhat^j (1 - (zhat
    zhat*)^(n-k)) and measures its n-fold bicomplex dbar residual. The
    report is informational: for n > 2 the formula as stated does not
    annihilate, and this checker quantifies that without asserting either
    way.
    """
    from .bicomplex_core import bc_conj, bicomplexify
    from .verify import iterated_residual

    if n < 2:
        raise InvalidOrderError("the published family needs n >= 2")
    if grid is None:
        grid = standard_z_samples()

    def w(z):
        z = np.asarray(z, dtype=complex)
        zh = bicomplexify(z)
        zhs = bc_conj(zh)
        acc = Bicomplex(np.zeros(z.shape, dtype=complex), np.zeros(z.shape, dtype=complex))
        for k in range(1, n):
            one = Bicomplex(np.ones(z.shape, dtype=complex), np.zeros(z.shape, dtype=complex))
            acc = acc + zhs ** (n - 1) * zh**j * (one - (zh * zhs) ** (n - k))
        return acc

    field = SolutionField(w, Provenance.WITNESS, n, bicomplex=True)
    return iterated_residual(field, None, None, n, grid, h)
