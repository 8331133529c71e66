"""Trigonometric polynomials on the unit circle.

Boundary data for the disk problems are finite Fourier series
theta -> sum c_m e^{i m theta}. Keeping the data in this class (rather
than as raw samples) lets the boundary integrals hit spectral accuracy
and makes residue-calculus oracles available to the tests.
"""

from __future__ import annotations

import numpy as np

from .bicomplex_core import Bicomplex


class TrigPoly:
    """Finite Fourier series with complex coefficients c_m, m in Z."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        cleaned = {}
        if coeffs:
            for m, c in coeffs.items():
                c = complex(c)
                if c != 0:
                    cleaned[int(m)] = c
        object.__setattr__(self, "coeffs", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("TrigPoly is immutable")

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def harmonic(cls, m, c=1.0):
        """c * e^{i m theta}."""
        return cls({m: c})

    @classmethod
    def constant(cls, c):
        return cls({0: c})

    @property
    def bandwidth(self):
        """max |m| over the support (0 for the zero polynomial)."""
        return max((abs(m) for m in self.coeffs), default=0)

    def __call__(self, theta):
        """Evaluate at angle(s) theta."""
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(theta.shape, dtype=complex)
        for m, c in self.coeffs.items():
            out += c * np.exp(1j * m * theta)
        if out.shape == ():
            return complex(out)
        return out

    def at_point(self, zeta):
        """Evaluate at point(s) zeta on the unit circle (zeta^m, m signed)."""
        zeta = np.asarray(zeta, dtype=complex)
        out = np.zeros(zeta.shape, dtype=complex)
        for m, c in self.coeffs.items():
            out += c * zeta ** m
        if out.shape == ():
            return complex(out)
        return out

    def conj(self):
        """The conjugate function theta -> conj(g(theta)): c_m -> conj(c_{-m})."""
        return TrigPoly({-m: np.conj(c) for m, c in self.coeffs.items()})

    def __add__(self, other):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return TrigPoly(out)

    def __sub__(self, other):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return self + (-1) * other

    def __mul__(self, other):
        if isinstance(other, TrigPoly):
            out = {}
            for m1, c1 in self.coeffs.items():
                for m2, c2 in other.coeffs.items():
                    m = m1 + m2
                    out[m] = out.get(m, 0) + c1 * c2
            return TrigPoly(out)
        return TrigPoly({m: c * other for m, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self):
        return not self.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "TrigPoly(0)"
        terms = ", ".join(f"{m}: {c}" for m, c in sorted(self.coeffs.items()))
        return f"TrigPoly({{{terms}}})"


class BicomplexTrigPoly:
    """Bicomplex boundary data: scalar and vector parts, each a TrigPoly."""

    __slots__ = ("sc", "vec")

    def __init__(self, sc=None, vec=None):
        object.__setattr__(self, "sc", sc if sc is not None else TrigPoly.zero())
        object.__setattr__(self, "vec", vec if vec is not None else TrigPoly.zero())

    def __setattr__(self, name, value):
        raise AttributeError("BicomplexTrigPoly is immutable")

    @classmethod
    def from_scalar(cls, g):
        return cls(g, TrigPoly.zero())

    @classmethod
    def from_idempotent(cls, gp, gm):
        """Build from plus/minus component data (each a TrigPoly)."""
        half = 0.5
        sc = half * (gp + gm)
        # vec = -i (gm - gp)/2
        vec = (-0.5j) * (gm - gp)
        return cls(sc, vec)

    def split(self):
        """(g+, g-) = (sc - i*vec, sc + i*vec) as TrigPoly pair."""
        return self.sc + (-1j) * self.vec, self.sc + 1j * self.vec

    def __call__(self, theta):
        return Bicomplex(self.sc(theta), self.vec(theta))

    def is_zero(self):
        return self.sc.is_zero() and self.vec.is_zero()

    def __repr__(self):
        return f"BicomplexTrigPoly(sc={self.sc!r}, vec={self.vec!r})"
