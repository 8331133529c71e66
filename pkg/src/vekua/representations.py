"""Constructors for the solution-representation theorems.

Every higher-order solution here is assembled from lower-order ingredients:
first-order Vekua solutions phi_k, holomorphic polynomials h_k, or a pair of
complex solutions joined through the idempotent decomposition. The
constructors return SolutionField values: callable maps tagged with how they
were built, so verification and file output can treat them uniformly.

For polynomial coefficients A the factor T[A] is computed once, exactly, by
the per-monomial closed form; only non-polynomial coefficients fall back to
quadrature, memoized per evaluation point.
"""

from __future__ import annotations

import enum

import numpy as np

from .bicomplex_core import Bicomplex, bc_exp, bicomplexify, bc_conj, idempotent_join
from .errors import InvalidOrderError
from .integral_ops import as_field, t_disk, t_domain, t_poly_disk, t_poly_ellipse
from .poly_algebra import BicomplexPoly, BivarPoly, Conic, ConicClass, ZZBAR


class Provenance(enum.Enum):
    INTEGRAL_FORMULA = "integral_formula"
    EXP_TIMES_POLY = "exp_times_poly"
    WITNESS = "witness"
    CONSTRUCTED = "constructed"


class SolutionField:
    """Evaluable solution with provenance metadata.

    evaluator: point -> complex or Bicomplex (numpy arrays pass through);
    order: the polyanalytic/iteration order n the field claims to satisfy;
    coefficient_ref: the coefficient A of the underlying equation, if any.

    Bicomplex fields built by joining two complex solutions keep those
    originals in components = (plus, minus); splitting the field then
    returns the exact objects that went in, instead of reconstituting them
    from the scalar/vector parts in floating point.
    """

    __slots__ = ("evaluator", "provenance", "order", "coefficient_ref",
                 "domain", "bicomplex", "components")

    def __init__(self, evaluator, provenance, order, coefficient_ref=None,
                 domain=None, bicomplex=False, components=None):
        self.evaluator = evaluator
        self.provenance = provenance
        self.order = int(order)
        self.coefficient_ref = coefficient_ref
        self.domain = domain
        self.bicomplex = bool(bicomplex)
        self.components = components

    def __call__(self, z):
        return self.evaluator(z)

    def split_fields(self):
        """(plus, minus) constituents of a joined bicomplex field."""
        if self.components is None:
            raise ValueError("field was not built from idempotent components")
        return self.components

    def __repr__(self):
        tag = "bicomplex " if self.bicomplex else ""
        return (
            f"SolutionField({tag}order={self.order}, "
            f"provenance={self.provenance.value})"
        )


def _poly_coefficient(A):
    """A as an exact ZZBAR BivarPoly when possible, else None."""
    if A is None:
        return BivarPoly.zero(ZZBAR)
    if isinstance(A, BivarPoly):
        return A if A.frame == ZZBAR else None
    if isinstance(A, (int, float, complex)):
        return BivarPoly.const(A, ZZBAR)
    return None


def exp_t_factor(A, domain=None, n_grid=256):
    """Callable z -> e^{T[A](z)} over the disk or a bounded conic.

    Polynomial A uses the exact closed form of T on either domain; anything
    else is quadrature with a per-point memo.
    """
    ap = _poly_coefficient(A)
    if ap is not None and domain is None:
        t_of_a = t_poly_disk(ap)
        return lambda z: np.exp(t_of_a(z))
    if (
        ap is not None
        and isinstance(domain, Conic)
        and domain.kind in (ConicClass.ELLIPSE, ConicClass.CIRCUMFERENCE)
    ):
        t_of_a = t_poly_ellipse(ap, domain)
        return lambda z: np.exp(t_of_a(z))
    field = as_field(A if A is not None else 0.0)
    memo = {}

    def factor(z):
        if np.shape(z) == ():
            key = complex(z)
            val = memo.get(key)
            if val is None:
                if domain is None:
                    val = t_disk(field, key, n_grid)
                else:
                    val = t_domain(field, domain, key, n_grid)
                memo[key] = val
            return np.exp(val)
        if domain is None:
            return np.exp(t_disk(field, z, n_grid))
        return np.exp(t_domain(field, domain, z, n_grid))

    return factor


def hoiv_from_vekua(phi_list, coefficient=None):
    """w(z) = sum_k (z + zbar)^k phi_k(z) from first-order Vekua solutions.

    Each phi_k must solve the same first-order equation; that premise is the
    caller's (or the verify module's), not checked here.
    """
    if not phi_list:
        raise InvalidOrderError("need at least one Vekua ingredient")
    phis = [as_field(p) for p in phi_list]

    def w(z):
        z = np.asarray(z, dtype=complex)
        s = 2.0 * np.real(z)
        acc = np.zeros(z.shape, dtype=complex)
        for k, phi in enumerate(phis):
            acc = acc + (s**k) * np.asarray(phi(z), dtype=complex)
        return acc if acc.shape else complex(acc)

    return SolutionField(
        w, Provenance.CONSTRUCTED, len(phis), coefficient_ref=coefficient
    )


def hoiv_from_holo(A, h_list, domain=None, n_grid=256):
    """w(z) = e^{T[A](z)} * sum_k zbar^k h_k(z) with holomorphic h_k.

    h_k may be BivarPoly (deg_zbar must be 0), low-to-high coefficient
    sequences, or constants. With A None the factor is 1 and w is a plain
    polyanalytic polynomial.
    """
    if not h_list:
        raise InvalidOrderError("need at least one holomorphic ingredient")
    hs = []
    for h in h_list:
        if isinstance(h, BivarPoly):
            if h.frame != ZZBAR or h.deg_zbar != 0:
                raise ValueError("h_k must be holomorphic polynomials in z")
            hs.append(h)
        elif isinstance(h, (list, tuple)):
            hs.append(BivarPoly.from_holomorphic_coeffs(h))
        else:
            hs.append(BivarPoly.const(h, ZZBAR))
    factor = exp_t_factor(A, domain=domain, n_grid=n_grid) if A is not None else None

    def w(z):
        z = np.asarray(z, dtype=complex)
        zb = np.conj(z)
        acc = np.zeros(z.shape, dtype=complex)
        for k, h in enumerate(hs):
            acc = acc + (zb**k) * np.asarray(h(z), dtype=complex)
        if factor is not None:
            acc = acc * factor(z)
        return acc if acc.shape else complex(acc)

    return SolutionField(
        w, Provenance.EXP_TIMES_POLY, len(hs), coefficient_ref=A, domain=domain
    )


class ZHatPoly:
    """Polynomial sum_m c_m (zhat*)^m with Bicomplex coefficients.

    zhat* is the bicomplex conjugate of the bicomplexification of z; its
    idempotent split is (z, z*), so the plus stream of the value is a
    polynomial in z and the minus stream one in z*.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = []
        for c in coeffs:
            cs.append(c if isinstance(c, Bicomplex) else Bicomplex.from_any(c))
        self.coeffs = tuple(cs)

    def split_streams(self):
        """Plus/minus coefficient sequences: value+ = sum c+_m z^m, etc."""
        plus = [c.split()[0] for c in self.coeffs]
        minus = [c.split()[1] for c in self.coeffs]
        return plus, minus

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        plus, minus = self.split_streams()
        vp = np.zeros(z.shape, dtype=complex)
        vm = np.zeros(z.shape, dtype=complex)
        for m, (cp, cm) in enumerate(zip(plus, minus)):
            vp = vp + cp * z**m
            vm = vm + cm * np.conj(z) ** m
        return idempotent_join(vp, vm)


def t_bicomplex_poly(A):
    """Exact bicomplex T of a polynomial bicomplex coefficient.

    Streams: (T^B[A])+ = (T[(A+)*])*, (T^B[A])- = T[A-], both by the
    closed-form polynomial transform.
    """
    if not isinstance(A, BicomplexPoly):
        raise ValueError("t_bicomplex_poly needs a BicomplexPoly")
    ap, am = A.split()
    tp = t_poly_disk(ap.conj_function()).conj_function()
    tm = t_poly_disk(am)
    return BicomplexPoly.from_idempotent(tp, tm)


def bc_hoiv_from_holo(A, h_list, n_grid=256):
    """Bicomplex w(z) = e^{T^B[A](z)} * sum_k (zhat*)^k h_k(z).

    A: BicomplexPoly, plain BivarPoly/scalar (treated as scalar bicomplex),
    or None. h_k: ZHatPoly, Bicomplex constants, or complex constants.
    """
    if not h_list:
        raise InvalidOrderError("need at least one ingredient")
    hs = []
    for h in h_list:
        if isinstance(h, ZHatPoly):
            hs.append(h)
        else:
            hs.append(ZHatPoly([h]))
    if A is None:
        t_of_a = None
    else:
        if isinstance(A, BivarPoly):
            A = BicomplexPoly.from_scalar(A)
        elif not isinstance(A, BicomplexPoly):
            A = BicomplexPoly.from_scalar(BivarPoly.const(A, ZZBAR))
        t_of_a = t_bicomplex_poly(A)

    def w(z):
        z = np.asarray(z, dtype=complex)
        zhat_star = bc_conj(bicomplexify(z))
        acc = Bicomplex(np.zeros(z.shape, dtype=complex), np.zeros(z.shape, dtype=complex))
        power = Bicomplex(np.ones(z.shape, dtype=complex), np.zeros(z.shape, dtype=complex))
        for k, h in enumerate(hs):
            if k:
                power = power * zhat_star
            acc = acc + power * h(z)
        if t_of_a is not None:
            acc = bc_exp(t_of_a(z)) * acc
        return acc

    return SolutionField(
        w, Provenance.EXP_TIMES_POLY, len(hs), coefficient_ref=A, bicomplex=True
    )


def bc_join_solutions(f, g, order=1):
    """w(z) = p+ (f(z))* + p- g(z) from two complex solution fields."""
    ff = as_field(f)
    gg = as_field(g)

    def w(z):
        z = np.asarray(z, dtype=complex)
        vp = np.conj(np.asarray(ff(z), dtype=complex))
        vm = np.asarray(gg(z), dtype=complex)
        return idempotent_join(np.broadcast_to(vp, z.shape), np.broadcast_to(vm, z.shape))

    n = order
    for src in (f, g):
        if isinstance(src, SolutionField):
            n = max(n, src.order)
    return SolutionField(w, Provenance.CONSTRUCTED, n, bicomplex=True,
                         components=(f, g))
