"""Independent numerical verification of claimed solutions.

Nothing here reuses the solver's own machinery: derivatives come from
4th-order central stencils, iterated operators from nested stencils on a
shared point lattice, and boundary mismatch from direct sampling. The
lattice trick matters: evaluating the field once on a (4n+1)^2 lattice per
probe point and differencing in place keeps the rounding noise of nested
differentiation far below naive repeated-stencil estimates, because all
levels share the same function values.
"""

from __future__ import annotations

import numpy as np

from .bicomplex_core import Bicomplex, J, bc_conj, bc_norm
from .errors import DomainEdgeError
from .fourier import BicomplexTrigPoly, TrigPoly
from .poly_algebra import Conic
from .representations import Provenance, SolutionField

DEFAULT_H = 1e-3


class ResidualReport:
    """Max iterated-operator residual over a probe grid, with context."""

    __slots__ = ("max_abs", "grid", "stencil_h", "worst")

    def __init__(self, max_abs, grid, stencil_h, worst):
        self.max_abs = float(max_abs)
        self.grid = grid
        self.stencil_h = float(stencil_h)
        self.worst = worst

    def __repr__(self):
        head = ", ".join(f"{z:.3f}: {v:.2e}" for z, v in self.worst[:3])
        return (
            f"ResidualReport(max_abs={self.max_abs:.3e}, grid={self.grid}, "
            f"h={self.stencil_h:g}, worst=[{head}])"
        )


def _field_domain(field):
    if isinstance(field, SolutionField):
        return field.domain
    return None


def _inside(domain, pts):
    """Closed-domain membership for the unit disk (None) or a conic."""
    pts = np.asarray(pts, dtype=complex)
    if domain is None:
        return np.abs(pts) <= 1.0 + 1e-12
    if isinstance(domain, Conic):
        return domain.geometry().contains(pts)
    raise ValueError("domain must be None (unit disk) or a Conic")


def _check_stencil_room(domain, zs, reach):
    zs = np.asarray(zs, dtype=complex).reshape(-1)
    corners = zs[:, None] + reach * np.array([1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j])[None, :]
    ok = _inside(domain, corners).all(axis=1)
    if not ok.all():
        bad = zs[~ok][0]
        raise DomainEdgeError(
            f"stencil of reach {reach:g} leaves the domain at z={bad:.4f}"
        )


def fd_dbar(field, z, h=DEFAULT_H):
    """4th-order finite-difference dbar at z (complex or bicomplex field).

    Complex fields get (1/2)(d/dx + i d/dy); bicomplex fields get
    (1/2)(d/dx + j d/dy), the operator whose kernel contains zhat.
    """
    zs = np.asarray(z, dtype=complex)
    _check_stencil_room(_field_domain(field), zs, 2.0 * h * np.sqrt(2.0))
    offs = np.array([2, 1, -1, -2], dtype=float) * h
    xpts = zs[..., None] + offs
    ypts = zs[..., None] + 1j * offs
    fx = field(xpts)
    fy = field(ypts)
    wgt = np.array([-1.0, 8.0, -8.0, 1.0]) / (12.0 * h)
    if isinstance(fx, Bicomplex):
        dx = Bicomplex(fx.sc @ wgt, fx.vec @ wgt)
        dy = Bicomplex(fy.sc @ wgt, fy.vec @ wgt)
        return (dx + J * dy) * 0.5
    dx = np.asarray(fx, dtype=complex) @ wgt
    dy = np.asarray(fy, dtype=complex) @ wgt
    out = 0.5 * (dx + 1j * dy)
    return complex(out) if zs.shape == () else out


def _lattice_dbar(F, h, bicomplex):
    """One dbar level on a (..., L, L) lattice; output loses 4 per axis."""
    c = 1.0 / (12.0 * h)

    def stencil_x(G):
        return (G[:, 3:-1, :] * 8.0 - G[:, 1:-3, :] * 8.0 - G[:, 4:, :] + G[:, :-4, :]) * c

    def stencil_y(G):
        return (G[:, :, 3:-1] * 8.0 - G[:, :, 1:-3] * 8.0 - G[:, :, 4:] + G[:, :, :-4]) * c

    dx = stencil_x(F)
    dy = stencil_y(F)
    if bicomplex:
        return (dx[:, :, 2:-2] + J * dy[:, 2:-2, :]) * 0.5
    return (dx[:, :, 2:-2] + 1j * dy[:, 2:-2, :]) * 0.5


def iterated_apply(field, A, B, n, points, h=DEFAULT_H, check_domain=True):
    """Values of (dbar - A - B C)^n field at the points, C = conjugation.

    Evaluates the field once on a (4n+1)^2 lattice per point, then nests
    4th-order stencils in place; all levels share one set of function
    values, which keeps nested-difference rounding noise low. Returns a
    complex array, or a Bicomplex of arrays for bicomplex fields.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    zs = np.asarray(points, dtype=complex).reshape(-1)
    span = 2 * n
    if check_domain:
        _check_stencil_room(_field_domain(field), zs, span * h * np.sqrt(2.0))
    a = np.arange(-span, span + 1)
    ox, oy = np.meshgrid(a, a, indexing="ij")
    lat = zs[:, None, None] + h * (ox + 1j * oy)
    F = field(lat)
    bicx = isinstance(F, Bicomplex)
    if not bicx:
        F = np.asarray(F, dtype=complex)
    def coef_values(C):
        if C is None or callable(C):
            return C(lat) if C is not None else None
        if isinstance(C, Bicomplex):
            return C
        return complex(C)

    Av = coef_values(A)
    Bv = coef_values(B)

    def shrink(V):
        if isinstance(V, Bicomplex):
            return V if V.shape == () else V[:, 2:-2, 2:-2]
        if np.isscalar(V) or np.ndim(V) == 0:
            return V
        return V[:, 2:-2, 2:-2]

    for _ in range(n):
        nxt = _lattice_dbar(F, h, bicx)
        core = F[:, 2:-2, 2:-2]
        if Av is not None:
            Av = shrink(Av)
            nxt = nxt - (Bicomplex.from_any(Av) * core if bicx else Av * core)
        if Bv is not None:
            Bv = shrink(Bv)
            conj_core = bc_conj(core) if bicx else np.conj(core)
            nxt = nxt - (Bicomplex.from_any(Bv) * conj_core if bicx else Bv * conj_core)
        F = nxt
    return F[:, 0, 0]


def iterated_residual(field, A, B, n, grid, h=DEFAULT_H):
    """Residual report for (dbar - A - B C)^n field == 0 on the grid.

    C is conjugation. The operator is applied numerically to the composite
    field; A and B are evaluated pointwise and never differentiated
    symbolically. Grid points must keep the nested stencil (reach 2nh per
    axis) inside the domain.
    """
    zs = np.asarray(grid, dtype=complex).reshape(-1)
    res = iterated_apply(field, A, B, n, zs, h)
    mags = bc_norm(res) if isinstance(res, Bicomplex) else np.abs(res)
    mags = np.asarray(mags, dtype=float).reshape(-1)
    order = np.argsort(mags)[::-1]
    worst = [(complex(zs[i]), float(mags[i])) for i in order[:5]]
    desc = f"{zs.size} points"
    return ResidualReport(float(mags.max()), desc, h, worst)


def _eval_on_boundary(field, pts):
    """Field values at boundary points, radially extrapolated when the
    field is an interior-only integral formula."""
    if (
        isinstance(field, SolutionField)
        and field.provenance is Provenance.INTEGRAL_FORMULA
    ):
        # quadratic one-sided extrapolation along each ray
        d = 5e-3
        radii = (1.0 - 3 * d, 1.0 - 2 * d, 1.0 - d)
        vals = [field(pts * r) for r in radii]
        if isinstance(vals[0], Bicomplex):
            return vals[2] * 3.0 - vals[1] * 3.0 + vals[0]
        vals = [np.asarray(v, dtype=complex) for v in vals]
        return 3.0 * vals[2] - 3.0 * vals[1] + vals[0]
    return field(pts)


def boundary_mismatch(field, boundary, n_samples=256):
    """Sup over samples of |field - data| on the domain boundary.

    boundary: TrigPoly or BicomplexTrigPoly (unit circle, sampled at
    n_samples angles) or a (Conic, BivarPoly) pair for conic loci.
    """
    if isinstance(boundary, tuple) and len(boundary) == 2 and isinstance(boundary[0], Conic):
        conic, data = boundary
        pts = conic.geometry().boundary_points(n_samples)
        vals = field(pts)
        target = data(pts)
        if isinstance(vals, Bicomplex):
            diff = vals - (target if isinstance(target, Bicomplex) else Bicomplex.from_any(target))
            return float(np.max(np.asarray(bc_norm(diff))))
        return float(np.max(np.abs(np.asarray(vals) - np.asarray(target))))
    theta = np.arange(n_samples) * (2.0 * np.pi / n_samples)
    pts = np.exp(1j * theta)
    vals = _eval_on_boundary(field, pts)
    if isinstance(boundary, BicomplexTrigPoly):
        target = boundary(theta)
        diff = (vals if isinstance(vals, Bicomplex) else Bicomplex.from_any(np.asarray(vals))) - target
        return float(np.max(np.asarray(bc_norm(diff))))
    if isinstance(boundary, TrigPoly):
        target = boundary(theta)
    elif callable(boundary):
        target = np.asarray(boundary(theta), dtype=complex)
    else:
        target = np.full(n_samples, complex(boundary))
    if isinstance(vals, Bicomplex):
        diff = vals - Bicomplex.from_any(np.asarray(target, dtype=complex))
        return float(np.max(np.asarray(bc_norm(diff))))
    return float(np.max(np.abs(np.asarray(vals, dtype=complex) - target)))


def clamp_grid(points, n, h=DEFAULT_H, domain=None):
    """Drop points whose order-n nested stencil would leave the domain."""
    pts = np.asarray(points, dtype=complex).reshape(-1)
    reach = 2 * n * h * np.sqrt(2.0)
    corners = pts[:, None] + reach * np.array([1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j])[None, :]
    ok = _inside(domain, corners).all(axis=1)
    return pts[ok]
