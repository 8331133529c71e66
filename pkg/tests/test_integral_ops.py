"""Area and boundary integral operators.

Independent oracles used here:
  - formal Wirtinger derivatives (exact coefficient arithmetic);
  - residues computed by hand for boundary kernels;
  - a brute-force trapezoid of the Cauchy boundary integral on the
    parametrized ellipse, sidestepping every closed form under test;
  - the literal Poisson kernel sum away from the boundary.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from vekua.bicomplex_core import Bicomplex, bc_norm, idempotent_join
from vekua.fourier import TrigPoly
from vekua.integral_ops import (
    as_field,
    cauchy_boundary,
    disk_area_integral,
    poisson,
    t1_disk,
    t1_ellipse,
    t_bicomplex,
    t_disk,
    t_domain,
    t_poly_disk,
    t_poly_ellipse,
    unit_disk_weights,
)
from vekua.poly_algebra import ZZBAR, BivarPoly, Conic, wirtinger
from vekua.verify import fd_dbar

rng = np.random.default_rng(31)

TILTED = Conic(Fraction(1, 4), Fraction(1, 3), 1, Fraction(-1, 5), Fraction(1, 7), -1)
UNIT_CIRCLE = Conic(1, 0, 1, 0, 0, -1)


def mono(a, b, c=1.0):
    return BivarPoly({(a, b): c}, ZZBAR)


# -- quadrature weights ---------------------------------------------------------

def test_disk_weights_sum_to_pi():
    for n in (64, 128, 256):
        _, w = unit_disk_weights(n)
        assert abs(np.sum(w) - math.pi) < 1e-10


def test_disk_area_integral_moments():
    # iint |z|^2 dA = pi/2 over the unit disk
    val = disk_area_integral(lambda z: np.abs(z) ** 2, n_grid=256)
    assert abs(val - math.pi / 2) < 1e-4


def test_weights_reject_tiny_grid():
    with pytest.raises(ValueError):
        unit_disk_weights(8)


# -- T on the disk ----------------------------------------------------------------

def test_t_disk_is_right_inverse():
    pts = 0.55 * np.exp(2j * np.pi * np.arange(8) / 8)
    for f in (lambda z: np.ones_like(z), lambda z: np.real(z) + 0j, lambda z: z**2):
        field = lambda z: t_disk(f, z, n_grid=256)
        got = fd_dbar(field, pts, h=1e-3)
        want = f(pts)
        assert np.max(np.abs(got - want)) < 5e-3


def test_t1_disk_closed_form():
    z = rng.normal(size=6) * 0.4 + 1j * rng.normal(size=6) * 0.4
    got = t_disk(lambda w: np.ones_like(w), z, n_grid=256)
    assert np.max(np.abs(got - np.conj(z))) < 1e-3
    assert np.max(np.abs(t1_disk(z) - np.conj(z))) == 0.0


def test_t_poly_disk_formal_identity():
    for a, b in [(0, 0), (1, 0), (0, 1), (2, 1), (1, 2), (0, 3)]:
        p = mono(a, b, 0.7 - 0.2j)
        resid = wirtinger(t_poly_disk(p), "dzbar") - p
        assert resid.is_zero() or all(
            abs(complex(c)) == 0.0 for c in resid.terms.values()
        )


def test_t_poly_disk_matches_quadrature():
    p = mono(2, 1, 1.0) + mono(0, 1, -0.5j)
    zs = 0.5 * np.exp(2j * np.pi * np.arange(5) / 5)
    exact = t_poly_disk(p)(zs)
    quad = t_disk(p, zs, n_grid=256, richardson=True)
    assert np.max(np.abs(exact - quad)) < 2e-4


# -- T on ellipse interiors --------------------------------------------------------

def test_t_poly_ellipse_formal_identity():
    for a, b in [(0, 0), (1, 0), (0, 1), (2, 1), (1, 2), (3, 0), (2, 2)]:
        p = mono(a, b, 1.25 - 0.5j)
        resid = wirtinger(t_poly_ellipse(p, TILTED), "dzbar") - p
        assert all(abs(complex(c)) == 0.0 for c in resid.terms.values())


def test_t_poly_ellipse_disk_limit():
    for a, b in [(0, 0), (1, 0), (0, 2), (2, 1), (1, 3)]:
        p = mono(a, b, 0.75 + 2.0j)
        te = t_poly_ellipse(p, UNIT_CIRCLE)
        td = t_poly_disk(p)
        keys = set(te.terms) | set(td.terms)
        assert all(
            abs(complex(te.terms.get(k, 0)) - complex(td.terms.get(k, 0))) < 1e-15
            for k in keys
        )


def brute_boundary_h(geom, F, z, nodes=20000):
    """(1/2 pi i) oint F(zeta)/(zeta - z) dzeta by raw trapezoid on the
    angle parametrization. Knows nothing about residues or Laurent series."""
    t = np.exp(2j * np.pi * (np.arange(nodes) + 0.5) / nodes)
    s = (geom.p + geom.q) / 2
    d = (geom.p - geom.q) / 2
    zeta = geom.center + np.exp(1j * geom.phi) * (s * t + d / t)
    dzeta = np.exp(1j * geom.phi) * (s - d / t**2) * (2j * np.pi * t / nodes)
    return np.sum(F(zeta) / (zeta - z) * dzeta) / (2j * np.pi)


def test_t_poly_ellipse_against_brute_contour():
    geom = TILTED.geometry()
    z0 = geom.center + 0.3 + 0.2j
    for a, b in [(0, 0), (1, 1), (2, 0)]:
        F = lambda w: w**a * np.conj(w) ** (b + 1) / (b + 1)
        want = F(z0) - brute_boundary_h(geom, F, z0)
        got = complex(t_poly_ellipse(mono(a, b), TILTED)(z0))
        assert abs(got - want) < 1e-11


def test_t1_ellipse_translation_invariance():
    geom = TILTED.geometry()
    # the integrand 1/(zeta - center) integrates to zero over the symmetric region
    assert abs(t1_ellipse(geom, geom.center)) < 1e-15
    z = geom.center + 0.25 - 0.1j
    want = np.conj(z - geom.center) - (geom.p - geom.q) / (geom.p + geom.q) * np.exp(
        -2j * geom.phi
    ) * (z - geom.center)
    assert abs(t1_ellipse(geom, z) - want) < 1e-15


def test_t1_ellipse_matches_polynomial_transform():
    geom = TILTED.geometry()
    zs = geom.center + 0.3 * np.exp(2j * np.pi * np.arange(6) / 6)
    poly = t_poly_ellipse(mono(0, 0), TILTED)
    assert np.max(np.abs(poly(zs) - t1_ellipse(geom, zs))) < 1e-14


def test_t_domain_quadrature_agrees_with_exact():
    geom = TILTED.geometry()
    pts = geom.center + 0.35 * np.exp(2j * np.pi * np.arange(5) / 5)
    for a, b in [(0, 1), (1, 1), (2, 1)]:
        exact = t_poly_ellipse(mono(a, b), TILTED)(pts)
        quad = t_domain(lambda z: z**a * np.conj(z) ** b, TILTED, pts, n_grid=420)
        assert np.max(np.abs(exact - quad)) < 5e-4


def test_t_domain_translation_oracle():
    # T over the shifted unit circle equals T over the centered disk with the
    # integrand recentred; the two code paths share nothing but numpy
    c = 0.4 - 0.25j
    shifted = Conic(1, 0, 1, float(-2 * c.real), float(-2 * c.imag), float(abs(c) ** 2 - 1))
    zq = c + np.array([0.1 + 0.2j, -0.3j, 0.45 + 0j])
    for a, b in [(1, 1), (0, 2)]:
        exact = t_poly_ellipse(mono(a, b), shifted)(zq)
        f_shift = lambda w: (w + c) ** a * (np.conj(w) + np.conj(c)) ** b
        ref = t_disk(f_shift, zq - c, n_grid=420)
        assert np.max(np.abs(exact - ref)) < 5e-4


def test_t_domain_reduces_to_t_disk():
    pts = 0.5 * np.exp(2j * np.pi * np.arange(4) / 4)
    f = lambda z: z * np.conj(z)
    a = t_domain(f, UNIT_CIRCLE, pts, n_grid=256)
    b = t_disk(f, pts, n_grid=256)
    assert np.max(np.abs(a - b)) < 1e-12


def test_t_domain_rejects_unbounded():
    from vekua.errors import UnsupportedDomainError

    with pytest.raises(UnsupportedDomainError):
        t_domain(lambda z: z, Conic(0, 1, 0, 0, 0, -1), 0.1 + 0j)


# -- bicomplex T --------------------------------------------------------------------

def test_t_bicomplex_streams():
    # plus stream conjugated in and out, minus stream passes through
    fp = lambda z: z**2
    fm = lambda z: np.conj(z)

    def f(z):
        return idempotent_join(fp(z), fm(z))

    zs = 0.4 * np.exp(2j * np.pi * np.arange(4) / 4)
    got = t_bicomplex(f, zs, n_grid=256)
    gp, gm = got.split()
    want_p = np.conj(t_disk(lambda z: np.conj(fp(z)), zs, n_grid=256))
    want_m = t_disk(fm, zs, n_grid=256)
    assert np.max(np.abs(gp - want_p)) < 1e-12
    assert np.max(np.abs(gm - want_m)) < 1e-12


# -- circle boundary kernels -----------------------------------------------------------

def test_cauchy_solution_kernel_reproduces_holomorphic():
    zs = np.array([0.3 + 0.1j, -0.5j, 0.2 - 0.6j])
    for m in (0, 1, 3):
        got = cauchy_boundary(TrigPoly.harmonic(m), "solution", zs)
        assert np.max(np.abs(got - zs**m)) < 1e-12


def test_cauchy_solution_kernel_kills_negative_modes():
    zs = np.array([0.3 + 0.1j, -0.5j])
    got = cauchy_boundary(TrigPoly.harmonic(-2), "solution", zs)
    assert np.max(np.abs(got)) < 1e-12


def test_cauchy_condition_kernel_residue_oracle():
    # (1/2 pi i) oint zeta^{-1} / (1 - conj(z) zeta) dzeta = 1 (pole at 0 only)
    zs = np.array([0.4 + 0.2j, -0.7j])
    got = cauchy_boundary(TrigPoly.harmonic(-1), "condition", zs)
    assert np.max(np.abs(got - 1.0)) < 1e-12
    # positive modes: integrand holomorphic inside, value 0
    got0 = cauchy_boundary(TrigPoly.harmonic(1), "condition", zs)
    assert np.max(np.abs(got0)) < 1e-12


def test_cauchy_requires_power_of_two_nodes():
    with pytest.raises(ValueError):
        cauchy_boundary(TrigPoly.harmonic(0), "solution", 0.1 + 0j, n_nodes=100)


def test_cauchy_rejects_boundary_point():
    with pytest.raises(ValueError):
        cauchy_boundary(TrigPoly.harmonic(0), "solution", 1.0 + 0j)


# -- Poisson --------------------------------------------------------------------------

def test_poisson_multiplier_identity():
    # harmonic extension of e^{i m t} is r^|m| e^{i m theta}
    for m in (-3, 0, 2):
        g = TrigPoly.harmonic(m)
        for r in (0.0, 0.35, 0.8):
            got = poisson(g, r, 1.1)
            want = r ** abs(m) * np.exp(1j * m * 1.1)
            assert abs(got - want) < 1e-12


def test_poisson_against_literal_kernel_sum():
    # away from the boundary the raw kernel sum converges; it never sees the
    # spectral path
    co = {m: complex(*rng.normal(size=2)) for m in range(-8, 9)}
    g = TrigPoly(co)
    t = np.arange(8192) * (2 * np.pi / 8192)
    gv = g(t)
    for r, theta in [(0.5, 0.3), (0.9, 2.0)]:
        kern = (1 - r**2) / (1 - 2 * r * np.cos(theta - t) + r**2)
        direct = np.sum(gv * kern) / 8192
        got = poisson(g, r, theta)
        assert abs(got - direct) < 1e-8


def test_poisson_broadcasts_and_handles_bicomplex():
    g = TrigPoly.harmonic(1)
    r = np.array([0.2, 0.5])
    th = np.array([0.0, np.pi])
    got = poisson(g, r, th)
    assert np.max(np.abs(got - r * np.exp(1j * th))) < 1e-12

    from vekua.fourier import BicomplexTrigPoly

    G = BicomplexTrigPoly.from_idempotent(TrigPoly.harmonic(1), TrigPoly.harmonic(-1))
    v = poisson(G, 0.5, 0.7)
    assert isinstance(v, Bicomplex)
    vp, vm = v.split()
    assert abs(vp - 0.5 * np.exp(0.7j)) < 1e-12
    assert abs(vm - 0.5 * np.exp(-0.7j)) < 1e-12


def test_as_field_wraps_constants_and_polys():
    f = as_field(2.0)
    assert np.max(np.abs(f(np.array([0.1j, 0.2])) - 2.0)) == 0.0
    p = mono(1, 0)
    g = as_field(p)
    assert abs(g(0.3 + 0.1j) - (0.3 + 0.1j)) < 1e-15
