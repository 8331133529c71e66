"""Bicomplex numbers: the commutative algebra C + jC with j**2 = -1, ij = ji.

A bicomplex number is stored as (sc, vec), the scalar and vector parts of
w = sc + j*vec, with sc and vec complex. The two idempotents

    p+ = (1 + ji)/2,    p- = (1 - ji)/2

satisfy p+**2 = p+, p-**2 = p-, p+*p- = 0, p+ + p- = 1, and every w has a
unique decomposition w = p+*wp + p-*wm with

    wp = sc - i*vec,    wm = sc + i*vec.

Multiplication acts componentwise on (wp, wm), which is what makes the
algebra useful here: bicomplex problems split into two complex ones.
The algebra has zero divisors (p+ * p- = 0), so there is no division
operator; `checked_inverse` inverts only when both components are nonzero.

Components may be numpy arrays; all operations are elementwise, so a
single Bicomplex can hold a whole evaluation grid.
"""

from __future__ import annotations

import numpy as np

from .errors import ZeroDivisorError


def _as_complex(x):
    if isinstance(x, np.ndarray):
        return x.astype(complex) if x.dtype != complex else x
    return complex(x)


class Bicomplex:
    """Immutable bicomplex value (or elementwise array of values)."""

    __slots__ = ("sc", "vec")

    def __init__(self, sc=0, vec=0):
        object.__setattr__(self, "sc", _as_complex(sc))
        object.__setattr__(self, "vec", _as_complex(vec))

    def __setattr__(self, name, value):
        raise AttributeError("Bicomplex is immutable")

    # -- construction ----------------------------------------------------

    @classmethod
    def from_any(cls, x):
        """Coerce a scalar, complex, or Bicomplex to Bicomplex."""
        if isinstance(x, Bicomplex):
            return x
        return cls(x, 0)

    @classmethod
    def from_idempotent(cls, wp, wm):
        """Build the unique w with split (wp, wm).

        Inverts wp = sc - i*vec, wm = sc + i*vec:
        sc = (wp + wm)/2 and vec = -i*(wm - wp)/2.
        """
        wp = _as_complex(wp)
        wm = _as_complex(wm)
        return cls((wp + wm) / 2, -0.5j * (wm - wp))

    # -- idempotent representation ---------------------------------------

    def split(self):
        """Return (w+, w-) = (sc - i*vec, sc + i*vec)."""
        return self.sc - 1j * self.vec, self.sc + 1j * self.vec

    @property
    def plus(self):
        return self.sc - 1j * self.vec

    @property
    def minus(self):
        return self.sc + 1j * self.vec

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = Bicomplex.from_any(other)
        return Bicomplex(self.sc + other.sc, self.vec + other.vec)

    __radd__ = __add__

    def __neg__(self):
        return Bicomplex(-self.sc, -self.vec)

    def __sub__(self, other):
        other = Bicomplex.from_any(other)
        return Bicomplex(self.sc - other.sc, self.vec - other.vec)

    def __rsub__(self, other):
        return Bicomplex.from_any(other) - self

    def __mul__(self, other):
        other = Bicomplex.from_any(other)
        # (s1 + j v1)(s2 + j v2) = (s1 s2 - v1 v2) + j (s1 v2 + v1 s2)
        return Bicomplex(
            self.sc * other.sc - self.vec * other.vec,
            self.sc * other.vec + self.vec * other.sc,
        )

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = Bicomplex(1, 0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        """Bicomplex conjugate: flips the sign of the vector part."""
        return Bicomplex(self.sc, -self.vec)

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other):
        """Exact componentwise equality (use `approx_equal` for tolerance)."""
        try:
            other = Bicomplex.from_any(other)
        except TypeError:
            return NotImplemented
        if isinstance(self.sc, np.ndarray) or isinstance(other.sc, np.ndarray):
            return bool(np.all(self.sc == other.sc) and np.all(self.vec == other.vec))
        return self.sc == other.sc and self.vec == other.vec

    def __hash__(self):
        if isinstance(self.sc, np.ndarray):
            raise TypeError("array-valued Bicomplex is unhashable")
        return hash((self.sc, self.vec))

    def __repr__(self):
        return f"Bicomplex({self.sc!r}, {self.vec!r})"

    # -- array support ----------------------------------------------------

    def __getitem__(self, idx):
        return Bicomplex(self.sc[idx], self.vec[idx])

    @property
    def shape(self):
        return np.shape(self.sc)


# Module-level constants.
P_PLUS = Bicomplex(0.5, 0.5j)   # (1 + ji)/2
P_MINUS = Bicomplex(0.5, -0.5j)  # (1 - ji)/2
J = Bicomplex(0, 1)


def bc_conj(w):
    return Bicomplex.from_any(w).conjugate()


def idempotent_split(w):
    """(w+, w-) with w = p+ w+ + p- w-."""
    return Bicomplex.from_any(w).split()


def idempotent_join(wp, wm):
    """Inverse of idempotent_split."""
    return Bicomplex.from_idempotent(wp, wm)


def bc_norm(w):
    """sqrt((|w+|**2 + |w-|**2)/2), the Euclidean norm of (sc, vec)."""
    wp, wm = Bicomplex.from_any(w).split()
    return np.sqrt((np.abs(wp) ** 2 + np.abs(wm) ** 2) / 2)


def bc_exp(w):
    """Bicomplex exponential: exp acts componentwise on the split."""
    wp, wm = Bicomplex.from_any(w).split()
    return Bicomplex.from_idempotent(np.exp(wp), np.exp(wm))


def bicomplexify(z):
    """Embed x + iy as x + jy. Its split is (z*, z)."""
    z = _as_complex(z)
    return Bicomplex(np.real(z) + 0j, np.imag(z) + 0j)


def checked_inverse(w):
    """Multiplicative inverse, or ZeroDivisorError if either component is 0.

    Not exposed as division: the algebra has zero divisors, so a silent
    `/` would invite nonsense on exactly the inputs that matter.
    """
    w = Bicomplex.from_any(w)
    wp, wm = w.split()
    if isinstance(wp, np.ndarray):
        if np.any(wp == 0) or np.any(wm == 0):
            raise ZeroDivisorError("zero idempotent component is not invertible")
    elif wp == 0 or wm == 0:
        raise ZeroDivisorError("zero idempotent component is not invertible")
    return Bicomplex.from_idempotent(1.0 / wp, 1.0 / wm)


def approx_equal(u, v, tol=1e-12):
    """Componentwise comparison with absolute tolerance."""
    u = Bicomplex.from_any(u)
    v = Bicomplex.from_any(v)
    return bool(
        np.all(np.abs(u.sc - v.sc) <= tol) and np.all(np.abs(u.vec - v.vec) <= tol)
    )
