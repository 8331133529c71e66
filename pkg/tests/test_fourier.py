"""Trigonometric polynomial boundary data."""

import numpy as np

from vekua.bicomplex_core import Bicomplex
from vekua.fourier import BicomplexTrigPoly, TrigPoly

rng = np.random.default_rng(44)


def random_trig(band=5):
    return TrigPoly({m: complex(*rng.normal(size=2)) for m in range(-band, band + 1)})


def dumb_eval(coeffs, theta):
    return sum(c * np.exp(1j * m * theta) for m, c in coeffs.items())


def test_call_matches_direct_sum():
    g = random_trig()
    theta = rng.uniform(0, 2 * np.pi, 64)
    expect = dumb_eval(g.coeffs, theta)
    assert np.max(np.abs(g(theta) - expect)) < 1e-13


def test_harmonic_and_constant():
    theta = np.linspace(0, 2 * np.pi, 17)
    g = TrigPoly.harmonic(-3, 2.0)
    assert np.max(np.abs(g(theta) - 2.0 * np.exp(-3j * theta))) < 1e-14
    c = TrigPoly.constant(1 - 1j)
    assert np.max(np.abs(c(theta) - (1 - 1j))) < 1e-15


def test_at_point_agrees_with_angle_form():
    g = random_trig()
    theta = 1.234
    assert abs(g.at_point(np.exp(1j * theta)) - g(theta)) < 1e-12


def test_product_is_convolution():
    u, v = random_trig(3), random_trig(4)
    w = u * v
    theta = rng.uniform(0, 2 * np.pi, 32)
    assert np.max(np.abs(w(theta) - u(theta) * v(theta))) < 1e-12
    assert w.bandwidth <= u.bandwidth + v.bandwidth


def test_conj_swaps_modes():
    g = random_trig(2)
    theta = rng.uniform(0, 2 * np.pi, 16)
    assert np.max(np.abs(g.conj()(theta) - np.conj(g(theta)))) < 1e-13


def test_zero_and_is_zero():
    z = TrigPoly.zero()
    assert z.is_zero()
    assert not random_trig(1).is_zero()
    # additive cancellation collapses to zero
    g = TrigPoly.harmonic(2)
    assert (g - g).is_zero()


def test_bicomplex_trig_split_round_trip():
    gp, gm = random_trig(2), random_trig(2)
    G = BicomplexTrigPoly.from_idempotent(gp, gm)
    hp, hm = G.split()
    theta = rng.uniform(0, 2 * np.pi, 16)
    assert np.max(np.abs(hp(theta) - gp(theta))) < 1e-13
    assert np.max(np.abs(hm(theta) - gm(theta))) < 1e-13


def test_bicomplex_trig_evaluates_to_bicomplex():
    G = BicomplexTrigPoly.from_scalar(TrigPoly.harmonic(1))
    v = G(np.array([0.0, np.pi / 2]))
    assert isinstance(v, Bicomplex)
    assert np.max(np.abs(v.vec)) < 1e-15
