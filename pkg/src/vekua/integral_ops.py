"""Quadrature for the Vekua area operator and circle boundary integrals.

The area operator T[f](z) = -(1/pi) iint f(zeta)/(zeta - z) dA is evaluated
on a Cartesian midpoint grid with two refinements over the naive rule:

* cells are weighted by their exact overlap area with the domain (boundary
  cells are clipped against the circle, exactly, via signed segment areas);
* the kernel singularity is subtracted: the integrand is replaced by
  (f(zeta) - f(z))/(zeta - z), which is bounded, and the removed part
  f(z) * T[1](z) is added back from the closed form of T[1].

Together these give O(h^2) convergence and make T[1] exact to rounding.
Ellipses are handled in canonical coordinates (an affine map of the unit
disk), so the same clipped grid serves every bounded conic.

Boundary integrals on |zeta| = 1 use the trapezoid rule, which is
spectrally accurate for trigonometric-polynomial data.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from .bicomplex_core import Bicomplex, idempotent_join
from .errors import UnsupportedDomainError
from .exactnum import GaussianRational
from .fourier import BicomplexTrigPoly, TrigPoly
from .poly_algebra import BivarPoly, Conic, ConicClass, ZZBAR


class Smoothness(enum.Enum):
    SMOOTH = "smooth"
    UNKNOWN = "unknown"


class ScalarField:
    """A point -> value map with an advisory smoothness tag.

    The evaluator must accept numpy arrays of points and must be defined on
    a thin neighbourhood of the closed domain (boundary-cell midpoints can
    fall within one cell width of the boundary).
    """

    __slots__ = ("evaluator", "smoothness_hint")

    def __init__(self, evaluator, smoothness_hint=Smoothness.SMOOTH):
        self.evaluator = evaluator
        self.smoothness_hint = smoothness_hint

    def __call__(self, z):
        return self.evaluator(z)


def as_field(f):
    if isinstance(f, ScalarField):
        return f
    if isinstance(f, (BivarPoly,)):
        return ScalarField(f, Smoothness.SMOOTH)
    if callable(f):
        return ScalarField(f, Smoothness.SMOOTH)
    c = complex(f)
    return ScalarField(lambda z: np.full(np.shape(z), c, dtype=complex), Smoothness.SMOOTH)


# -- exact cell/circle overlap ------------------------------------------------


def _circle_seg_area(px, py, qx, qy):
    """Signed area of triangle (0, p, q) intersected with the unit disk."""
    dx, dy = qx - px, qy - py
    a = dx * dx + dy * dy
    if a == 0.0:
        return 0.0
    b = 2.0 * (px * dx + py * dy)
    c = px * px + py * py - 1.0
    ts = [0.0]
    disc = b * b - 4.0 * a * c
    if disc > 0.0:
        r = math.sqrt(disc)
        for t in ((-b - r) / (2.0 * a), (-b + r) / (2.0 * a)):
            if 1e-12 < t < 1.0 - 1e-12:
                ts.append(t)
    ts.append(1.0)
    ts.sort()
    total = 0.0
    for t0, t1 in zip(ts[:-1], ts[1:]):
        tm = 0.5 * (t0 + t1)
        mx, my = px + dx * tm, py + dy * tm
        ux, uy = px + dx * t0, py + dy * t0
        vx, vy = px + dx * t1, py + dy * t1
        if mx * mx + my * my <= 1.0:
            total += 0.5 * (ux * vy - uy * vx)
        else:
            # circular wedge between the two boundary hits
            d = math.atan2(vy, vx) - math.atan2(uy, ux)
            while d > math.pi:
                d -= 2.0 * math.pi
            while d < -math.pi:
                d += 2.0 * math.pi
            total += 0.5 * d
    return total


def _box_circle_area(x0, x1, y0, y1):
    pts = ((x0, y0), (x1, y0), (x1, y1), (x0, y1))
    return sum(
        _circle_seg_area(pts[i][0], pts[i][1], pts[(i + 1) % 4][0], pts[(i + 1) % 4][1])
        for i in range(4)
    )


_WEIGHT_CACHE = {}


def unit_disk_weights(n_grid):
    """Midpoints and exact cell-overlap areas for the unit disk, cached.

    Returns (zeta, w): flat arrays over cells with positive overlap. The
    weights sum to pi up to clipping roundoff.
    """
    n_grid = int(n_grid)
    if n_grid < 16:
        raise ValueError("n_grid must be at least 16")
    hit = _WEIGHT_CACHE.get(n_grid)
    if hit is not None:
        return hit
    h = 2.0 / n_grid
    c = -1.0 + h * (np.arange(n_grid) + 0.5)
    X, Y = np.meshgrid(c, c, indexing="ij")
    rad = np.hypot(X, Y)
    diag = h * math.sqrt(2.0) / 2.0
    W = np.where(rad + diag <= 1.0, h * h, 0.0)
    for i, j in zip(*np.where(np.abs(rad - 1.0) <= diag)):
        W[i, j] = _box_circle_area(
            X[i, j] - h / 2, X[i, j] + h / 2, Y[i, j] - h / 2, Y[i, j] + h / 2
        )
    keep = W > 0.0
    out = ((X + 1j * Y)[keep], W[keep])
    _WEIGHT_CACHE[n_grid] = out
    return out


# -- exact T of polynomials on the disk --------------------------------------


def t_poly_disk(p):
    """Exact T over the unit disk of a ZZBAR polynomial.

    Per-monomial closed form: for b >= a,
        T[z^a zbar^b] = z^a zbar^(b+1) / (b+1),
    and for a >= b+1,
        T[z^a zbar^b] = (z^a zbar^(b+1) - z^(a-b-1)) / (b+1).
    Exact coefficients stay exact.
    """
    if p.frame != ZZBAR:
        raise ValueError("t_poly_disk needs a ZZBAR polynomial")
    out = {}

    def add(key, val):
        out[key] = out.get(key, 0) + val

    for (a, b), c in p.terms.items():
        if p.exact:
            scale = GaussianRational.from_value(c) / (b + 1)
        else:
            scale = c / (b + 1)
        add((a, b + 1), scale)
        if a >= b + 1:
            add((a - b - 1, 0), -scale)
    return BivarPoly(out, ZZBAR)


def t1_disk(z):
    """Closed form T[1] on the closed unit disk: conj(z)."""
    return np.conj(z)


def t1_ellipse(geom, z):
    """Closed form T[1] on a closed ellipse.

    With center z0, semiaxes (p, q) along tilt phi and mu = (p-q)/(p+q):
        T[1](z) = conj(z - z0) - mu e^{-2i phi} (z - z0).
    Reduces to conj(z) for the unit disk.
    """
    mu = (geom.p - geom.q) / (geom.p + geom.q)
    zc = np.asarray(z, dtype=complex) - geom.center
    return np.conj(zc) - mu * np.exp(-2j * geom.phi) * zc


def _laurent_mul(u, v):
    out = {}
    for i, a in u.items():
        for j, b in v.items():
            k = i + j
            out[k] = out.get(k, 0.0) + a * b
    return out


def t_poly_ellipse(p, domain):
    """Exact T over a bounded conic interior of a ZZBAR polynomial.

    Per monomial f = z^a zbar^b take F = z^a zbar^(b+1)/(b+1), so that
    dbar F = f; the Pompeiu formula turns the area integral into
        T[f](z) = F(z) - (1/2 pi i) oint F(zeta)/(zeta - z) dzeta.
    On the Joukowski parametrization of the ellipse boundary,
    zeta(tau) = c + e^{i phi}(s tau + d/tau) with s = (p+q)/2,
    d = (p-q)/2, the integrand is rational in tau and both poles of
    s tau^2 - zeta' tau + d (zeta' = e^{-i phi}(z - c)) lie in the closed
    unit disk, their product being d/s. The enclosed residue sum is then
    minus the residue at infinity: a finite combination of the Laurent
    coefficients c_0 = 1/s, c_1 = zeta'/s^2,
    c_k = (zeta' c_{k-1} - d c_{k-2})/s of 1/(s tau^2 - zeta' tau + d).
    Each c_k is a polynomial in zeta', so the boundary term is a
    holomorphic polynomial and T maps polynomials to polynomials; for the
    unit circle the construction collapses to the t_poly_disk formulas.
    Coefficients come out as floats since the ellipse geometry is
    irrational in general.
    """
    if p.frame != ZZBAR:
        raise ValueError("t_poly_ellipse needs a ZZBAR polynomial")
    geom = domain.geometry() if isinstance(domain, Conic) else domain
    s = 0.5 * (geom.p + geom.q)
    d = 0.5 * (geom.p - geom.q)
    rot = np.exp(1j * geom.phi)
    c0 = complex(geom.center)
    # Laurent coefficients (power -> value) of zeta, conj zeta, and
    # tau * dzeta/dtau / e^{i phi} = s tau - d/tau on |tau| = 1
    zeta_l = {-1: rot * d, 0: c0, 1: rot * s}
    zbar_l = {-1: np.conj(rot) * s, 0: np.conj(c0), 1: np.conj(rot) * d}
    out = {}

    def add(key, val):
        out[key] = out.get(key, 0) + val

    for (a, b), coeff in p.terms.items():
        scale = complex(coeff) / (b + 1)
        add((a, b + 1), coeff / (b + 1))
        num = {0: 1.0 + 0.0j}
        for _ in range(a):
            num = _laurent_mul(num, zeta_l)
        for _ in range(b + 1):
            num = _laurent_mul(num, zbar_l)
        num = _laurent_mul(num, {-1: -d, 1: s})
        top = max(num)
        # Laurent series of the quadratic's reciprocal, as polynomials in
        # zeta' (ascending coefficient lists)
        cks = [[1.0 / s], [0.0, 1.0 / (s * s)]]
        while len(cks) < top:
            prev, prev2 = cks[-1], cks[-2]
            nxt = [0.0] * (len(prev) + 1)
            for m, v in enumerate(prev):
                nxt[m + 1] += v / s
            for m, v in enumerate(prev2):
                nxt[m] -= d * v / s
            cks.append(nxt)
        hp = [0.0] * max(top, 1)  # boundary polynomial in zeta'
        for j, nj in num.items():
            if j < 1:
                continue
            for m, v in enumerate(cks[j - 1]):
                hp[m] += nj * v
        # substitute zeta' = alpha z + beta and subtract
        alpha = complex(np.conj(rot))
        beta = -alpha * c0
        for m, hm in enumerate(hp):
            if hm == 0:
                continue
            term = scale * hm
            for t in range(m + 1):
                binom = math.comb(m, t)
                add((t, 0), -term * binom * alpha**t * beta ** (m - t))
    return BivarPoly(out, ZZBAR)


# -- the area operator --------------------------------------------------------

_CHUNK = 48


def _t_core(node_vals, fz, zeta, w, z, t1):
    """Subtraction quadrature shared by the disk/ellipse/bicomplex paths.

    node_vals: f at the quadrature nodes; fz, t1: f and exact T[1] at the
    evaluation points. All of z, fz, t1 are flat arrays of one shape.
    """
    out = np.empty(z.shape, dtype=complex)
    for s in range(0, z.size, _CHUNK):
        zb = z[s : s + _CHUNK]
        d = zeta[None, :] - zb[:, None]
        g = node_vals[None, :] - fz[s : s + _CHUNK, None]
        np.divide(g, d, out=g, where=(d != 0))
        g[d == 0] = 0.0
        out[s : s + _CHUNK] = g @ w
    return (-1.0 / math.pi) * out + fz * t1


def _as_points(z):
    z = np.asarray(z, dtype=complex)
    return z, z.reshape(-1)


def t_disk(f, z, n_grid=256, richardson=False):
    """T over the unit disk at z (scalar or array), |z| <= 1."""
    z0, zf = _as_points(z)
    if np.any(np.abs(zf) > 1.0 + 1e-12):
        raise ValueError("t_disk needs |z| <= 1")
    field = as_field(f)
    if richardson:
        coarse = t_disk(field, z, n_grid // 2, richardson=False)
        fine = t_disk(field, z, n_grid, richardson=False)
        return (4.0 * fine - coarse) / 3.0
    zeta, w = unit_disk_weights(n_grid)
    node_vals = np.asarray(field(zeta), dtype=complex)
    fz = np.asarray(field(zf), dtype=complex).reshape(zf.shape)
    vals = _t_core(node_vals, fz, zeta, w, zf, t1_disk(zf))
    return complex(vals[0]) if z0.shape == () else vals.reshape(z0.shape)


def t_domain(f, domain, z, n_grid=256, richardson=False):
    """T over the interior of a bounded conic at z (closed region).

    Accepts Ellipse and Circumference classes; everything else has an
    unbounded or empty interior and is rejected.
    """
    if not isinstance(domain, Conic):
        raise UnsupportedDomainError("domain must be a Conic")
    if domain.kind not in (ConicClass.ELLIPSE, ConicClass.CIRCUMFERENCE):
        raise UnsupportedDomainError(
            f"T is restricted to bounded domains; got {domain.kind.value}"
        )
    geom = domain.geometry()
    z0, zf = _as_points(z)
    uv = (zf - geom.center) * np.exp(-1j * geom.phi)
    uv = np.real(uv) / geom.p + 1j * (np.imag(uv) / geom.q)
    if np.any(np.abs(uv) > 1.0 + 1e-9):
        raise ValueError("t_domain needs z in the closed ellipse")
    field = as_field(f)
    if richardson:
        coarse = t_domain(field, domain, z, n_grid // 2, richardson=False)
        fine = t_domain(field, domain, z, n_grid, richardson=False)
        return (4.0 * fine - coarse) / 3.0
    uvg, wg = unit_disk_weights(n_grid)
    # forward affine map: cell areas scale by p*q, nodes move to the ellipse
    zeta = geom.center + np.exp(1j * geom.phi) * (
        geom.p * np.real(uvg) + 1j * geom.q * np.imag(uvg)
    )
    w = wg * (geom.p * geom.q)
    node_vals = np.asarray(field(zeta), dtype=complex)
    fz = np.asarray(field(zf), dtype=complex).reshape(zf.shape)
    vals = _t_core(node_vals, fz, zeta, w, zf, t1_ellipse(geom, zf))
    return complex(vals[0]) if z0.shape == () else vals.reshape(z0.shape)


def t_bicomplex(f, z, n_grid=256):
    """Bicomplex T: p+ (T[(f+)*])* + p- T[f-], f a Bicomplex-valued field.

    Each idempotent stream runs through the scalar quadrature; the plus
    stream is conjugated on the way in and out, which is what makes the
    result a right inverse of the bicomplex dbar.
    """
    z0, zf = _as_points(z)
    if np.any(np.abs(zf) > 1.0 + 1e-12):
        raise ValueError("t_bicomplex needs |z| <= 1")
    field = f if callable(f) else (lambda _z, _w=f: _w)
    zeta, w = unit_disk_weights(n_grid)
    fn = field(zeta)
    if not isinstance(fn, Bicomplex):
        fn = Bicomplex.from_any(fn)
    fp_nodes, fm_nodes = fn.split()
    fp_nodes = np.broadcast_to(np.asarray(fp_nodes, dtype=complex), zeta.shape)
    fm_nodes = np.broadcast_to(np.asarray(fm_nodes, dtype=complex), zeta.shape)
    fzv = field(zf)
    if not isinstance(fzv, Bicomplex):
        fzv = Bicomplex.from_any(fzv)
    fp_z, fm_z = fzv.split()
    fp_z = np.broadcast_to(np.asarray(fp_z, dtype=complex), zf.shape).astype(complex)
    fm_z = np.broadcast_to(np.asarray(fm_z, dtype=complex), zf.shape).astype(complex)
    t1 = t1_disk(zf)
    plus = np.conj(_t_core(np.conj(fp_nodes), np.conj(fp_z), zeta, w, zf, t1))
    minus = _t_core(fm_nodes, fm_z, zeta, w, zf, t1)
    if z0.shape == ():
        return idempotent_join(complex(plus[0]), complex(minus[0]))
    return idempotent_join(plus.reshape(z0.shape), minus.reshape(z0.shape))


def disk_area_integral(g, n_grid=256):
    """Plain clipped-midpoint integral of g over the unit disk."""
    zeta, w = unit_disk_weights(n_grid)
    vals = np.asarray(as_field(g)(zeta), dtype=complex)
    return complex(vals @ w)


# -- circle boundary integrals ------------------------------------------------


def _boundary_samples(gamma, n_nodes):
    theta = np.arange(n_nodes) * (2.0 * math.pi / n_nodes)
    zeta = np.exp(1j * theta)
    if isinstance(gamma, TrigPoly):
        vals = gamma(theta)
    elif isinstance(gamma, np.ndarray):
        if gamma.shape != (n_nodes,):
            raise ValueError("sampled boundary data must have length n_nodes")
        vals = gamma.astype(complex)
    elif callable(gamma):
        vals = np.asarray(gamma(theta), dtype=complex)
    else:
        vals = np.full(n_nodes, complex(gamma))
    return theta, zeta, np.broadcast_to(vals, zeta.shape)


def _check_nodes(n_nodes):
    if n_nodes < 64 or (n_nodes & (n_nodes - 1)) != 0:
        raise ValueError("n_nodes must be a power of two, at least 64")


SOLUTION_KERNEL = "solution"
CONDITION_KERNEL = "condition"


def cauchy_boundary(gamma, kernel, z, n_nodes=1024, power=0):
    """Trapezoid value of (1/2 pi i) closed-integral of gamma times a kernel.

    kernel 'solution':  conj(zeta - z)^power / (zeta - z)
    kernel 'condition': conj(zeta - z)^power / (1 - conj(z) zeta)

    Spectrally accurate for TrigPoly data; needs |z| < 1.
    """
    _check_nodes(n_nodes)
    z0, zf = _as_points(z)
    if np.any(np.abs(zf) >= 1.0):
        raise ValueError("cauchy_boundary needs |z| < 1")
    _, zeta, vals = _boundary_samples(gamma, n_nodes)
    out = np.empty(zf.shape, dtype=complex)
    for s in range(0, zf.size, _CHUNK):
        zb = zf[s : s + _CHUNK, None]
        diff = zeta[None, :] - zb
        top = np.conj(diff) ** power if power else 1.0
        if kernel == SOLUTION_KERNEL:
            kern = top / diff
        elif kernel == CONDITION_KERNEL:
            kern = top / (1.0 - np.conj(zb) * zeta[None, :])
        else:
            raise ValueError(f"unknown kernel {kernel!r}")
        out[s : s + _CHUNK] = (vals[None, :] * kern) @ zeta / n_nodes
    return complex(out[0]) if z0.shape == () else out.reshape(z0.shape)


def poisson(g, r, theta, n_nodes=512):
    """Poisson integral (1/2 pi) int g(e^{it}) P_r(theta - t) dt.

    P_r(s) = (1 - r^2)/(1 - 2 r cos s + r^2). r and theta broadcast
    together (0 <= r < 1). Bicomplex data is handled componentwise on the
    idempotent streams and joined back.

    The data enters through its n_nodes equispaced samples; their discrete
    Fourier coefficients (the trapezoid rule for the Fourier integrals) are
    attenuated by the exact multipliers r^|m|. This evaluates the Poisson
    integral of the trigonometric interpolant, so for TrigPoly data below
    the Nyquist bandwidth the result is exact uniformly in r, where summing
    kernel values directly would need ever more nodes as r -> 1.
    """
    _check_nodes(n_nodes)
    if isinstance(g, BicomplexTrigPoly):
        gp, gm = g.split()
        return idempotent_join(
            poisson(gp, r, theta, n_nodes), poisson(gm, r, theta, n_nodes)
        )
    if isinstance(g, tuple) and len(g) == 2:
        return idempotent_join(
            poisson(g[0], r, theta, n_nodes), poisson(g[1], r, theta, n_nodes)
        )
    rr, tt = np.broadcast_arrays(
        np.asarray(r, dtype=float), np.asarray(theta, dtype=float)
    )
    if np.any(rr < 0.0) or np.any(rr >= 1.0):
        raise ValueError("poisson needs 0 <= r < 1")
    shape = rr.shape
    rf, tf = rr.reshape(-1), tt.reshape(-1)
    _, _, vals = _boundary_samples(g, n_nodes)
    coeffs = np.fft.fft(vals) / n_nodes
    ms = np.fft.fftfreq(n_nodes, d=1.0 / n_nodes).astype(int)
    keep = np.abs(coeffs) > 1e-15 * max(1.0, float(np.max(np.abs(vals))))
    coeffs, ms = coeffs[keep], ms[keep]
    out = np.zeros(rf.shape, dtype=complex)
    for s in range(0, rf.size, _CHUNK):
        rb, tb = rf[s : s + _CHUNK, None], tf[s : s + _CHUNK, None]
        out[s : s + _CHUNK] = (
            rb ** np.abs(ms)[None, :] * np.exp(1j * tb * ms[None, :])
        ) @ coeffs
    return complex(out[0]) if shape == () else out.reshape(shape)
