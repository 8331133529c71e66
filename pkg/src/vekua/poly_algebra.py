"""Sparse bivariate polynomials, conics, and exact linear algebra.

Coefficients are GaussianRational (exact backend) or complex floats; the
two backends share one class. Frame ZZBAR treats z and zbar as independent
formal variables (Wirtinger calculus); frame XY is the real-variable form
used for conics. Conversions substitute x = (z+zbar)/2, y = (z-zbar)/(2i)
and back, exactly in the exact backend.

Conic classification and ideal membership (target == Q * R) run entirely
over the Gaussian rationals so that rank statements are certificates, not
numerics.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction

import numpy as np

from .errors import DegenerateConicError, NotInIdealError, UnsupportedDomainError
from .exactnum import GaussianRational, is_exact_scalar, _to_fraction
from .fourier import TrigPoly

ZZBAR = "zzbar"
XY = "xy"


def _coerce_coeff(c, exact):
    if exact:
        return GaussianRational.from_value(c)
    if isinstance(c, GaussianRational):
        return c.to_complex()
    return complex(c)


def _is_exact_value(c):
    return isinstance(c, GaussianRational) or is_exact_scalar(c)


class BivarPoly:
    """Polynomial sum c_{ij} * u^i * v^j with (u, v) = (z, zbar) or (x, y)."""

    __slots__ = ("terms", "frame", "exact")

    def __init__(self, terms=None, frame=ZZBAR):
        if frame not in (ZZBAR, XY):
            raise ValueError(f"unknown frame {frame!r}")
        items = list(terms.items()) if terms else []
        exact = all(_is_exact_value(c) for _, c in items)
        cleaned = {}
        for (i, j), c in items:
            i, j = int(i), int(j)
            if i < 0 or j < 0:
                raise ValueError("exponents must be nonnegative")
            c = _coerce_coeff(c, exact)
            if c == 0:
                continue
            key = (i, j)
            if key in cleaned:
                s = cleaned[key] + c
                if s == 0:
                    del cleaned[key]
                else:
                    cleaned[key] = s
            else:
                cleaned[key] = c
        object.__setattr__(self, "terms", cleaned)
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "exact", exact)

    def __setattr__(self, name, value):
        raise AttributeError("BivarPoly is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, frame=ZZBAR):
        return cls({}, frame)

    @classmethod
    def one(cls, frame=ZZBAR):
        return cls({(0, 0): GaussianRational(1)}, frame)

    @classmethod
    def const(cls, c, frame=ZZBAR):
        return cls({(0, 0): c}, frame)

    @classmethod
    def var_z(cls):
        return cls({(1, 0): GaussianRational(1)}, ZZBAR)

    @classmethod
    def var_zbar(cls):
        return cls({(0, 1): GaussianRational(1)}, ZZBAR)

    @classmethod
    def var_x(cls):
        return cls({(1, 0): GaussianRational(1)}, XY)

    @classmethod
    def var_y(cls):
        return cls({(0, 1): GaussianRational(1)}, XY)

    @classmethod
    def from_holomorphic_coeffs(cls, coeffs):
        """Polynomial in z alone from a low-to-high coefficient sequence."""
        return cls({(k, 0): c for k, c in enumerate(coeffs)}, ZZBAR)

    # -- structure ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    @property
    def deg_z(self):
        return max((i for i, _ in self.terms), default=0)

    @property
    def deg_zbar(self):
        return max((j for _, j in self.terms), default=0)

    @property
    def total_deg(self):
        return max((i + j for i, j in self.terms), default=0)

    def coeff(self, i, j):
        return self.terms.get((i, j), GaussianRational(0) if self.exact else 0j)

    def __eq__(self, other):
        if not isinstance(other, BivarPoly):
            return NotImplemented
        if self.frame != other.frame:
            return False
        if set(self.terms) != set(other.terms):
            return False
        both_exact = self.exact and other.exact
        for k, c in self.terms.items():
            d = other.terms[k]
            if both_exact:
                if GaussianRational.from_value(c) != GaussianRational.from_value(d):
                    return False
            elif _coerce_coeff(c, False) != _coerce_coeff(d, False):
                return False
        return True

    def __hash__(self):
        return hash((self.frame, frozenset((k, complex(_coerce_coeff(c, False))) for k, c in self.terms.items())))

    # -- arithmetic ----------------------------------------------------------

    def _check_frame(self, other):
        if self.frame != other.frame:
            raise ValueError("frame mismatch; convert first")

    def __add__(self, other):
        if not isinstance(other, BivarPoly):
            other = BivarPoly.const(other, self.frame)
        self._check_frame(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return BivarPoly(out, self.frame)

    __radd__ = __add__

    def __neg__(self):
        return BivarPoly({k: -c for k, c in self.terms.items()}, self.frame)

    def __sub__(self, other):
        if not isinstance(other, BivarPoly):
            other = BivarPoly.const(other, self.frame)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, BivarPoly):
            return BivarPoly({k: c * other for k, c in self.terms.items()}, self.frame)
        self._check_frame(other)
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return BivarPoly(out, self.frame)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = BivarPoly.one(self.frame)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- calculus -----------------------------------------------------------

    def dz(self):
        if self.frame != ZZBAR:
            raise ValueError("Wirtinger derivatives need the ZZBAR frame")
        return BivarPoly(
            {(i - 1, j): c * i for (i, j), c in self.terms.items() if i > 0}, ZZBAR
        )

    def dzbar(self):
        if self.frame != ZZBAR:
            raise ValueError("Wirtinger derivatives need the ZZBAR frame")
        return BivarPoly(
            {(i, j - 1): c * j for (i, j), c in self.terms.items() if j > 0}, ZZBAR
        )

    def conj_function(self):
        """The polynomial representing z -> conj(p(z)); swaps exponents."""
        if self.frame != ZZBAR:
            # conj of an XY-frame polynomial of real variables: conj coefficients
            return BivarPoly(
                {k: _conj_coeff(c) for k, c in self.terms.items()}, XY
            )
        return BivarPoly(
            {(j, i): _conj_coeff(c) for (i, j), c in self.terms.items()}, ZZBAR
        )

    # -- evaluation -----------------------------------------------------------

    def __call__(self, z):
        """Evaluate at complex z (ZZBAR: u=z, v=conj z; XY: u=Re z, v=Im z)."""
        z = np.asarray(z, dtype=complex)
        if self.frame == ZZBAR:
            u, v = z, np.conj(z)
        else:
            u, v = np.real(z).astype(complex), np.imag(z).astype(complex)
        out = np.zeros(z.shape, dtype=complex)
        for (i, j), c in self.terms.items():
            out += complex(_coerce_coeff(c, False)) * u**i * v**j
        if out.shape == ():
            return complex(out)
        return out

    def eval_xy(self, x, y):
        if self.frame != XY:
            raise ValueError("eval_xy needs the XY frame")
        x = np.asarray(x, dtype=complex)
        y = np.asarray(y, dtype=complex)
        out = np.zeros(np.broadcast(x, y).shape, dtype=complex)
        for (i, j), c in self.terms.items():
            out += complex(_coerce_coeff(c, False)) * x**i * y**j
        if out.shape == ():
            return complex(out)
        return out

    def to_float(self):
        return BivarPoly(
            {k: complex(_coerce_coeff(c, False)) for k, c in self.terms.items()},
            self.frame,
        )

    def boundary_trace(self):
        """Restriction to |z| = 1 as a TrigPoly (ZZBAR frame only).

        On the circle z^i zbar^j = e^{i(i-j)theta}.
        """
        if self.frame != ZZBAR:
            raise ValueError("boundary_trace needs the ZZBAR frame")
        out = {}
        for (i, j), c in self.terms.items():
            m = i - j
            out[m] = out.get(m, 0) + complex(_coerce_coeff(c, False))
        return TrigPoly(out)

    def __repr__(self):
        if not self.terms:
            return f"BivarPoly(0, frame={self.frame})"
        names = ("z", "zb") if self.frame == ZZBAR else ("x", "y")
        bits = []
        for (i, j) in sorted(self.terms, key=grlex_key):
            c = self.terms[(i, j)]
            mono = "".join(
                f"*{n}^{e}" for n, e in zip(names, (i, j)) if e
            )
            bits.append(f"({c}){mono}")
        return f"BivarPoly({' + '.join(bits)}, frame={self.frame})"


def _conj_coeff(c):
    if isinstance(c, GaussianRational):
        return c.conjugate()
    return np.conj(c)


def grlex_key(expo):
    """Graded lexicographic sort key for an exponent pair."""
    i, j = expo
    return (i + j, i, j)


# -- frame conversions ---------------------------------------------------

_HALF = GaussianRational("1/2")
_MINUS_I_HALF = GaussianRational(0, "-1/2")  # 1/(2i)


def from_xy(p):
    """XY -> ZZBAR by substituting x = (z+zbar)/2, y = (z-zbar)/(2i)."""
    if p.frame != XY:
        raise ValueError("from_xy expects an XY-frame polynomial")
    z = BivarPoly.var_z()
    zb = BivarPoly.var_zbar()
    x_sub = (z + zb) * _HALF
    y_sub = (z - zb) * _MINUS_I_HALF
    out = BivarPoly.zero(ZZBAR)
    for (i, j), c in p.terms.items():
        out = out + (x_sub**i) * (y_sub**j) * c
    return out


def to_xy(p):
    """ZZBAR -> XY by substituting z = x + iy, zbar = x - iy."""
    if p.frame != ZZBAR:
        raise ValueError("to_xy expects a ZZBAR-frame polynomial")
    x = BivarPoly.var_x()
    y = BivarPoly.var_y()
    i_unit = GaussianRational(0, 1)
    z_sub = x + y * i_unit
    zb_sub = x - y * i_unit
    out = BivarPoly.zero(XY)
    for (i, j), c in p.terms.items():
        out = out + (z_sub**i) * (zb_sub**j) * c
    return out


def wirtinger(p, which):
    """Formal Wirtinger derivative of a ZZBAR-frame polynomial.

    which: 'dz' or 'dzbar'.
    """
    if which == "dz":
        return p.dz()
    if which == "dzbar":
        return p.dzbar()
    raise ValueError("which must be 'dz' or 'dzbar'")


class BicomplexPoly:
    """Bicomplex-coefficient polynomial as a (sc, vec) pair of BivarPoly."""

    __slots__ = ("sc", "vec")

    def __init__(self, sc=None, vec=None, frame=ZZBAR):
        object.__setattr__(self, "sc", sc if sc is not None else BivarPoly.zero(frame))
        object.__setattr__(
            self, "vec", vec if vec is not None else BivarPoly.zero(frame)
        )
        if self.sc.frame != self.vec.frame:
            raise ValueError("sc and vec must share a frame")

    def __setattr__(self, name, value):
        raise AttributeError("BicomplexPoly is immutable")

    @property
    def frame(self):
        return self.sc.frame

    @classmethod
    def from_scalar(cls, p):
        return cls(p, BivarPoly.zero(p.frame))

    @classmethod
    def from_idempotent(cls, pp, pm):
        """Build from plus/minus polynomials: sc = (pp+pm)/2, vec = -i(pm-pp)/2."""
        half = GaussianRational("1/2") if (pp.exact and pm.exact) else 0.5
        mih = GaussianRational(0, "-1/2") if (pp.exact and pm.exact) else -0.5j
        return cls((pp + pm) * half, (pm - pp) * mih)

    def split(self):
        """(p+, p-) = (sc - i*vec, sc + i*vec)."""
        if self.sc.exact and self.vec.exact:
            i_unit = GaussianRational(0, 1)
        else:
            i_unit = 1j
        return self.sc - self.vec * i_unit, self.sc + self.vec * i_unit

    def __call__(self, z):
        from .bicomplex_core import Bicomplex

        return Bicomplex(self.sc(z), self.vec(z))

    def is_zero(self):
        return self.sc.is_zero() and self.vec.is_zero()

    def __repr__(self):
        return f"BicomplexPoly(sc={self.sc!r}, vec={self.vec!r})"


# -- exact linear algebra over the Gaussian rationals -----------------------


def solve_exact(rows, rhs):
    """Solve the exact linear system rows * x = rhs.

    rows: list of lists of GaussianRational, rhs: list of GaussianRational.
    Returns (solution list, consistent flag). When the system is consistent
    and underdetermined, free variables are set to zero.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [[GaussianRational.from_value(x) for x in row] + [GaussianRational.from_value(b)]
         for row, b in zip(rows, rhs)]
    pivot_cols = []
    r = 0
    for col in range(n):
        piv = None
        for i in range(r, m):
            if a[i][col]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = GaussianRational(1) / a[r][col]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivot_cols.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n]:
            return None, False
    x = [GaussianRational(0)] * n
    for row_idx, col in enumerate(pivot_cols):
        x[col] = a[row_idx][n]
    return x, True


def nullspace_exact(rows, n_cols):
    """Basis of the nullspace of the exact matrix (list of column vectors)."""
    m = len(rows)
    a = [[GaussianRational.from_value(x) for x in row] for row in rows]
    pivot_cols = []
    r = 0
    for col in range(n_cols):
        piv = None
        for i in range(r, m):
            if a[i][col]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = GaussianRational(1) / a[r][col]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivot_cols.append(col)
        r += 1
        if r == m:
            break
    free_cols = [c for c in range(n_cols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        v = [GaussianRational(0)] * n_cols
        v[fc] = GaussianRational(1)
        for row_idx, pc in enumerate(pivot_cols):
            v[pc] = -a[row_idx][fc]
        basis.append(v)
    return basis


# -- conics ------------------------------------------------------------------


class ConicClass(enum.Enum):
    ELLIPSE = "ellipse"
    PARABOLA = "parabola"
    HYPERBOLA = "hyperbola"
    CIRCUMFERENCE = "circumference"
    DEGENERATE = "degenerate"
    EMPTY_LOCUS = "empty_locus"


class EllipseGeometry:
    """Float geometry of a bounded conic locus: center, semiaxes, tilt.

    The locus is { center + e^{i*phi} (p cos t + i q sin t) }. For a
    circumference p == q and phi == 0.
    """

    __slots__ = ("center", "p", "q", "phi")

    def __init__(self, center, p, q, phi):
        self.center = complex(center)
        self.p = float(p)
        self.q = float(q)
        self.phi = float(phi)

    def boundary_points(self, n):
        t = np.arange(n) * (2.0 * np.pi / n)
        return self.center + np.exp(1j * self.phi) * (
            self.p * np.cos(t) + 1j * self.q * np.sin(t)
        )

    def contains(self, z, closed=True):
        w = (np.asarray(z, dtype=complex) - self.center) * np.exp(-1j * self.phi)
        r2 = (np.real(w) / self.p) ** 2 + (np.imag(w) / self.q) ** 2
        return r2 <= 1.0 if closed else r2 < 1.0

    def __repr__(self):
        return (
            f"EllipseGeometry(center={self.center}, p={self.p}, q={self.q}, "
            f"phi={self.phi})"
        )


class Conic:
    """Q(x,y) = a x^2 + b xy + c y^2 + d x + e y + f with exact coefficients."""

    __slots__ = ("a", "b", "c", "d", "e", "f", "kind")

    def __init__(self, a, b, c, d, e, f):
        for name, val in zip("abcdef", (a, b, c, d, e, f)):
            object.__setattr__(self, name, _to_fraction(val))
        object.__setattr__(self, "kind", _classify(self))

    def __setattr__(self, name, value):
        raise AttributeError("Conic is immutable")

    @property
    def delta(self):
        """Discriminant of the quadratic part, b^2 - 4ac."""
        return self.b * self.b - 4 * self.a * self.c

    @property
    def det3(self):
        """Determinant of the full symmetric matrix of Q (times 1)."""
        a, b, c, d, e, f = self.a, self.b / 2, self.c, self.d / 2, self.e / 2, self.f
        return a * (c * f - e * e) - b * (b * f - e * d) + d * (b * e - c * d)

    def coeffs(self):
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    def poly_xy(self):
        return BivarPoly(
            {
                (2, 0): GaussianRational(self.a),
                (1, 1): GaussianRational(self.b),
                (0, 2): GaussianRational(self.c),
                (1, 0): GaussianRational(self.d),
                (0, 1): GaussianRational(self.e),
                (0, 0): GaussianRational(self.f),
            },
            XY,
        )

    def poly_zzbar(self):
        return from_xy(self.poly_xy())

    def center(self):
        """Exact center of the quadratic form; needs delta != 0."""
        delta = self.delta
        if delta == 0:
            raise DegenerateConicError("conic has no unique center")
        cx = (2 * self.c * self.d - self.b * self.e) / delta
        cy = (2 * self.a * self.e - self.b * self.d) / delta
        return cx, cy

    def value_at_center(self):
        cx, cy = self.center()
        return (
            self.a * cx * cx + self.b * cx * cy + self.c * cy * cy
            + self.d * cx + self.e * cy + self.f
        )

    def circle_data(self):
        """Exact (center_x, center_y, r_squared) for a circumference."""
        if self.kind is not ConicClass.CIRCUMFERENCE:
            raise UnsupportedDomainError("not a circumference")
        cx, cy = self.center()
        r2 = -self.value_at_center() / self.a
        return cx, cy, r2

    def geometry(self):
        """Float EllipseGeometry for a bounded nonempty locus."""
        if self.kind is ConicClass.CIRCUMFERENCE:
            cx, cy, r2 = self.circle_data()
            r = math.sqrt(r2)
            return EllipseGeometry(complex(cx, cy), r, r, 0.0)
        if self.kind is not ConicClass.ELLIPSE:
            raise UnsupportedDomainError(
                f"no bounded geometry for a {self.kind.value} conic"
            )
        cx, cy = self.center()
        k = -self.value_at_center()
        a, b, c = float(self.a), float(self.b), float(self.c)
        phi = 0.5 * math.atan2(b, a - c)
        co, si = math.cos(phi), math.sin(phi)
        lam1 = a * co * co + b * si * co + c * si * si
        lam2 = a * si * si - b * si * co + c * co * co
        kf = float(k)
        p = math.sqrt(kf / lam1)
        q = math.sqrt(kf / lam2)
        return EllipseGeometry(complex(cx, cy), p, q, phi)

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        a, b, c, d, e, f = (float(v) for v in self.coeffs())
        out = a * x * x + b * x * y + c * y * y + d * x + e * y + f
        return float(out) if out.shape == () else out

    def __eq__(self, other):
        if not isinstance(other, Conic):
            return NotImplemented
        return self.coeffs() == other.coeffs()

    def __hash__(self):
        return hash(self.coeffs())

    def __repr__(self):
        cs = ", ".join(str(v) for v in self.coeffs())
        return f"Conic({cs}; {self.kind.value})"


def _classify(q):
    delta = q.b * q.b - 4 * q.a * q.c
    det3 = q.det3
    if det3 == 0:
        return ConicClass.DEGENERATE
    if delta < 0:
        # definite quadratic part; sign of a decides which way the form opens
        center_val = q.value_at_center()
        if (center_val > 0) == (q.a > 0):
            return ConicClass.EMPTY_LOCUS
        if q.a == q.c and q.b == 0:
            return ConicClass.CIRCUMFERENCE
        return ConicClass.ELLIPSE
    if delta == 0:
        return ConicClass.PARABOLA
    return ConicClass.HYPERBOLA


def classify(q):
    """Classification of a conic (already stored on construction)."""
    if not isinstance(q, Conic):
        q = Conic(*q)
    return q.kind


def conic_from_poly(p):
    """Conic from a real-coefficient XY-frame polynomial of degree <= 2."""
    if p.frame != XY:
        p = to_xy(p)
    if p.total_deg > 2:
        raise ValueError("conic polynomial must have total degree <= 2")

    def real_part(key):
        c = p.terms.get(key)
        if c is None:
            return Fraction(0)
        g = GaussianRational.from_value(c)
        if g.im != 0:
            raise ValueError("conic coefficients must be real")
        return g.re

    return Conic(
        real_part((2, 0)),
        real_part((1, 1)),
        real_part((0, 2)),
        real_part((1, 0)),
        real_part((0, 1)),
        real_part((0, 0)),
    )


def monomials_up_to(max_total):
    """All exponent pairs with total degree <= max_total, graded lex order."""
    out = [(i, j) for j in range(max_total + 1) for i in range(max_total + 1 - j)]
    out.sort(key=grlex_key)
    return out


def ideal_member_solve(target, q, max_deg):
    """Exact cofactor R with target == Q * R and total deg R <= max_deg.

    Raises NotInIdealError when no such cofactor exists. Assembly uses the
    graded lex order so the system matrix is deterministic.
    """
    qp = q.poly_zzbar() if isinstance(q, Conic) else q
    if qp.frame == XY:
        qp = from_xy(qp)
    if target.frame == XY:
        target = from_xy(target)
    if not target.exact or not qp.exact:
        raise ValueError("ideal membership needs exact coefficients")
    if max_deg < 0:
        raise NotInIdealError("no cofactor up to the requested degree")

    unknowns = monomials_up_to(max_deg)
    col_of = {mono: k for k, mono in enumerate(unknowns)}
    rows_keys = set(target.terms)
    for (qi, qj) in qp.terms:
        for (mi, mj) in unknowns:
            rows_keys.add((qi + mi, qj + mj))
    row_list = sorted(rows_keys, key=grlex_key)
    row_of = {key: r for r, key in enumerate(row_list)}

    zero = GaussianRational(0)
    rows = [[zero] * len(unknowns) for _ in row_list]
    for (qi, qj), qc in qp.terms.items():
        qc = GaussianRational.from_value(qc)
        for mono in unknowns:
            r = row_of[(qi + mono[0], qj + mono[1])]
            rows[r][col_of[mono]] = rows[r][col_of[mono]] + qc
    rhs = [
        GaussianRational.from_value(target.terms.get(key, 0)) for key in row_list
    ]

    sol, ok = solve_exact(rows, rhs)
    if not ok:
        raise NotInIdealError(
            f"target is not a multiple of the conic up to degree {max_deg}"
        )
    return BivarPoly({mono: sol[col_of[mono]] for mono in unknowns}, ZZBAR)
