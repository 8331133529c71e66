"""Finite-difference residual machinery.

These tests manufacture fields whose derivatives are known in closed form,
including transcendental ones the rest of the library never produces, so the
checker is exercised on inputs it cannot have been tuned for.
"""

import numpy as np
import pytest

from vekua.bicomplex_core import Bicomplex, bc_norm, bicomplexify, idempotent_join
from vekua.errors import DomainEdgeError
from vekua.fourier import BicomplexTrigPoly, TrigPoly
from vekua.poly_algebra import Conic, BivarPoly, ZZBAR
from vekua.verify import (
    boundary_mismatch,
    clamp_grid,
    fd_dbar,
    iterated_apply,
    iterated_residual,
)

rng = np.random.default_rng(13)


def ring(r, n=8):
    return r * np.exp(2j * np.pi * np.arange(n) / n)


# -- first derivative ---------------------------------------------------------------

def test_fd_dbar_on_antiholomorphic_exponential():
    # dbar e^{conj z} = e^{conj z}, a field no polynomial shortcut covers
    f = lambda z: np.exp(np.conj(z))
    zs = ring(0.4)
    got = fd_dbar(f, zs, h=1e-3)
    assert np.max(np.abs(got - f(zs))) < 1e-11


def test_fd_dbar_fourth_order_convergence():
    # halving h should cut the truncation error by about 2^4
    f = lambda z: np.exp(np.conj(z) ** 2)
    z = np.array([0.3 + 0.2j])
    want = 2 * np.conj(z) * f(z)
    e1 = abs(fd_dbar(f, z, h=2e-2)[0] - want[0])
    e2 = abs(fd_dbar(f, z, h=1e-2)[0] - want[0])
    ratio = e1 / e2
    assert 10 < ratio < 24


def test_fd_dbar_kills_holomorphic():
    f = lambda z: z**5 - 3 * z
    zs = ring(0.5)
    assert np.max(np.abs(fd_dbar(f, zs, h=1e-3))) < 1e-10


def test_fd_dbar_bicomplex_operator():
    # (1/2)(d/dx + j d/dy) annihilates zhat = bicomplexify(z)
    def f(z):
        z = np.asarray(z, dtype=complex)
        return bicomplexify(0) + idempotent_join(np.conj(z) ** 2, z**2)

    zs = ring(0.4)
    got = fd_dbar(f, zs, h=1e-3)
    assert isinstance(got, Bicomplex)
    # plus stream sees d/dz applied to conj-stream convention; both streams
    # of this f are killed by one application of the respective operator? no:
    # dbar on minus stream z^2 gives 0, plus stream conj(z)^2 under d/dz gives 0
    assert np.max(bc_norm(got)) < 1e-9


# -- iterated operator ----------------------------------------------------------------

def test_iterated_apply_known_second_derivative():
    f = lambda z: np.conj(z) ** 2
    zs = ring(0.3)
    got = iterated_apply(f, None, None, 2, zs)
    assert np.max(np.abs(got - 2.0)) < 1e-6


def test_iterated_apply_transcendental_fixed_point():
    # (dbar)^n e^{conj z} = e^{conj z} for every n
    f = lambda z: np.exp(np.conj(z))
    zs = ring(0.3, 5)
    for n in (1, 2, 3):
        got = iterated_apply(f, None, None, n, zs)
        rel = np.max(np.abs(got - f(zs)) / np.abs(f(zs)))
        assert rel < 1e-5


def test_iterated_apply_with_coefficient():
    # w = e^{T[A]} h solves (dbar - A) w = 0 for A = z
    from vekua.representations import hoiv_from_holo

    w = hoiv_from_holo(BivarPoly.var_z(), [BivarPoly.var_z() ** 2])
    zs = ring(0.5)
    got = iterated_apply(w, BivarPoly.var_z(), None, 1, zs)
    assert np.max(np.abs(got)) < 1e-6


def test_iterated_apply_conjugation_term():
    # w = e^{Re z} is real, so conj(w) = w and (dbar - B C) w = (1/2 - B) w
    w = lambda z: np.exp(np.real(z)) + 0j
    zs = ring(0.4)
    got = iterated_apply(w, None, 0.5, 1, zs)
    assert np.max(np.abs(got)) < 1e-6
    got2 = iterated_apply(w, None, 0.25, 1, zs)
    want2 = 0.25 * np.exp(np.real(zs))
    assert np.max(np.abs(got2 - want2)) < 1e-6


def test_iterated_residual_report_fields():
    f = lambda z: np.conj(z)
    rep = iterated_residual(f, None, None, 2, ring(0.3))
    assert rep.max_abs < 1e-6
    assert rep.grid == "8 points"
    assert len(rep.worst) >= 1


def test_iterated_apply_rejects_bad_order():
    with pytest.raises(ValueError):
        iterated_apply(lambda z: z, None, None, 0, np.array([0.1 + 0j]))


def test_domain_edge_guard():
    f = lambda z: z
    with pytest.raises(DomainEdgeError):
        iterated_apply(f, None, None, 2, np.array([0.9999 + 0j]))


# -- boundary extraction ----------------------------------------------------------------

def test_boundary_mismatch_recovers_polynomial_trace():
    # w = z zbar^2 restricts to e^{-i theta} on the circle
    w = lambda z: z * np.conj(z) ** 2
    g = TrigPoly.harmonic(-1)
    assert boundary_mismatch(w, g) < 1e-5


def test_boundary_mismatch_detects_wrong_data():
    w = lambda z: z
    wrong = TrigPoly.harmonic(2)
    assert boundary_mismatch(w, wrong) > 0.5


def test_boundary_mismatch_conic_pair():
    q = Conic(1, 0, 4, 0, 0, -4)
    data = BivarPoly({(1, 0): 1.0}, ZZBAR)
    w = lambda z: np.asarray(z, dtype=complex)
    assert boundary_mismatch(w, (q, data)) < 1e-12


def test_boundary_mismatch_bicomplex_data():
    G = BicomplexTrigPoly.from_idempotent(TrigPoly.harmonic(-1), TrigPoly.harmonic(1))

    def w(z):
        z = np.asarray(z, dtype=complex)
        return idempotent_join(z * np.conj(z) ** 2, np.conj(z) * z**2)

    assert boundary_mismatch(w, G) < 1e-4


def test_boundary_mismatch_constant_target():
    w = lambda z: np.full(np.shape(z), 2.0 + 0j)
    assert boundary_mismatch(w, 2.0) < 1e-12


# -- grid clamping ------------------------------------------------------------------------

def test_clamp_grid_drops_rim_points():
    pts = np.array([0.0 + 0j, 0.5, 0.999, 0.9999])
    kept = clamp_grid(pts, n=2, h=1e-3)
    assert 0.9999 not in kept
    assert 0.0 in kept and 0.5 in kept


def test_clamp_grid_conic_domain():
    q = Conic(1, 0, 4, 0, 0, -4)
    pts = np.array([0.0 + 0j, 1.95 + 0j, 0.0 + 0.95j])
    kept = clamp_grid(pts, n=2, h=1e-3, domain=q)
    assert 0.0 + 0j in kept
    assert 1.95 + 0j in kept
    # 0.95j is within 0.05 of the top of the ellipse, reach is ~6e-3, keep it
    assert 0.0 + 0.95j in kept
    tight = clamp_grid(np.array([0.0 + 0.9999j]), n=2, h=1e-3, domain=q)
    assert tight.size == 0
