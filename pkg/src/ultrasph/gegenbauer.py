"""Ultraspherical polynomials, derivatives, and associated functions.

P_{l,d}(x) is the coefficient of r^l in the expansion of

    (1 + r^2 - 2 r x)^(-(d-2)/2) = sum_l r^l P_{l,d}(x),   r < 1,

so P_{l,3} are the Legendre polynomials.  The family obeys the three-term
recurrence

    l P_{l,d}(x) = (2l + d - 4) x P_{l-1,d}(x) - (l + d - 4) P_{l-2,d}(x)

with P_{0,d} = 1 and P_{1,d} = (d-2) x, which is what :func:`poly` runs;
:func:`poly_reference` expands the generating function by generalized
binomials instead and serves as an independent cross-check.

Derivatives never differentiate symbolically: the m-th x-derivative of
P_{l,d} equals alpha(m,d) P_{l-m,d+2m} with
alpha(m,d) = (d-2) d (d+2) ... (d+2m-4), which is exact at x = +-1 and
O(l) to evaluate.

The associated function

    assoc(l, m, d, theta) = sin^m(theta) * (d^m/dx^m) P_{l,d}(x) |_{x=cos(theta)}

generalizes the associated Legendre functions (no Condon-Shortley phase)
and is orthogonal over [0, pi] with weight sin^(d-2)(theta) for fixed m.

All evaluation routines accept scalars or numpy arrays for the
x/theta argument.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .geometry import solid_angle

__all__ = [
    "PolyParams",
    "alpha_factor",
    "assoc",
    "deriv_at_one",
    "norm_factor",
    "ode_residual",
    "poly",
    "poly_deriv",
    "poly_reference",
]


def _check_degree(l):
    if not isinstance(l, (int, np.integer)) or l < 0:
        raise ValueError(f"degree must be a nonnegative integer, got {l!r}")
    return int(l)


def _check_dim(d):
    if not isinstance(d, (int, np.integer)) or d < 3:
        raise ValueError(f"dimension must be an integer >= 3, got {d!r}")
    return int(d)


def _check_order(m):
    if not isinstance(m, (int, np.integer)) or m < 0:
        raise ValueError(f"order must be a nonnegative integer, got {m!r}")
    return int(m)


@dataclass(frozen=True)
class PolyParams:
    """Validated parameter triple (l, d, m) with 0 <= m <= l and d >= 3."""

    l: int
    d: int
    m: int = 0

    def __post_init__(self):
        object.__setattr__(self, "l", _check_degree(self.l))
        object.__setattr__(self, "d", _check_dim(self.d))
        object.__setattr__(self, "m", _check_order(self.m))
        if self.m > self.l:
            raise ValueError(f"order m={self.m} exceeds degree l={self.l}")

    def assoc(self, theta):
        return assoc(self.l, self.m, self.d, theta)

    def norm(self):
        return norm_factor(self.l, self.m, self.d)


def _maybe_scalar(values, scalar_in):
    return float(values) if scalar_in else values


def poly(l, d, x):
    """Ultraspherical polynomial P_{l,d}(x) by three-term recurrence."""
    l = _check_degree(l)
    d = _check_dim(d)
    xa = np.asarray(x, dtype=float)
    scalar_in = xa.ndim == 0
    if l == 0:
        return _maybe_scalar(np.ones_like(xa), scalar_in)
    p_prev = np.ones_like(xa)
    p = (d - 2) * xa
    for k in range(2, l + 1):
        p_prev, p = p, ((2 * k + d - 4) * xa * p - (k + d - 4) * p_prev) / k
    return _maybe_scalar(p, scalar_in)


def _poly_reference_exact(l, d, x):
    """Exact-rational binomial expansion; x enters as the rational it is."""
    lam = Fraction(d - 2, 2)
    k0 = (l + 1) // 2
    cb = Fraction(1)  # generalized binomial C(lambda+k-1, k)
    for i in range(1, k0 + 1):
        cb *= (lam + i - 1) / i
    two_x = 2 * Fraction(x)
    total = Fraction(0)
    for k in range(k0, l + 1):
        j = l - k
        total += cb * math.comb(k, j) * two_x ** (2 * k - l) * (-1) ** j
        cb *= (lam + k) / (k + 1)
    return float(total)


def poly_reference(l, d, x):
    """P_{l,d}(x) from the generating function, independently of :func:`poly`.

    Expands (1 - r(2x - r))^(-lambda) with lambda = (d-2)/2 by the
    generalized binomial series and collects the coefficient of r^l:

        P_{l,d}(x) = sum_{k=ceil(l/2)}^{l} C(lambda+k-1, k) C(k, l-k)
                     (2x)^(2k-l) (-1)^(l-k).

    The sum cancels catastrophically for large l, so it runs in exact
    rational arithmetic (a double is a rational) and rounds once at the
    end; the result is the correctly rounded coefficient.
    """
    l = _check_degree(l)
    d = _check_dim(d)
    xa = np.asarray(x, dtype=float)
    flat = [_poly_reference_exact(l, d, float(v)) for v in np.atleast_1d(xa).ravel()]
    if xa.ndim == 0:
        return flat[0]
    return np.asarray(flat).reshape(xa.shape)


def alpha_factor(m, d):
    """The product (d-2) d (d+2) ... (d+2m-4); empty product 1 for m = 0."""
    m = _check_order(m)
    d = _check_dim(d)
    out = 1
    for i in range(m):
        out *= d - 2 + 2 * i
    return float(out)


def _alpha_int(m, d):
    out = 1
    for i in range(m):
        out *= d - 2 + 2 * i
    return out


def poly_deriv(l, m, d, x):
    """m-th x-derivative of P_{l,d} via the dimension shift.

    d^m P_{l,d} / dx^m = alpha(m,d) P_{l-m, d+2m}(x); zero when m > l.
    """
    l = _check_degree(l)
    m = _check_order(m)
    d = _check_dim(d)
    xa = np.asarray(x, dtype=float)
    scalar_in = xa.ndim == 0
    if m > l:
        return _maybe_scalar(np.zeros_like(xa), scalar_in)
    if m == 0:
        return poly(l, d, x)
    val = alpha_factor(m, d) * np.asarray(poly(l - m, d + 2 * m, xa))
    return _maybe_scalar(val, scalar_in)


def deriv_at_one(l, n, d):
    """n-th derivative of P_{l,d} at x = 1, evaluated as an exact rational.

    Equals alpha(n,d) (d+n+l-3)! / ((l-n)! (d+2n-3)!); returns 0 for n > l.
    Python integers do not overflow, so the exact path covers all sizes
    and the nearest double is returned.
    """
    l = _check_degree(l)
    n = _check_order(n)
    d = _check_dim(d)
    if n > l:
        return 0.0
    num = _alpha_int(n, d) * math.factorial(d + n + l - 3)
    den = math.factorial(l - n) * math.factorial(d + 2 * n - 3)
    return float(Fraction(num, den))


def assoc(l, m, d, theta):
    """Associated function sin^m(theta) d^m P_{l,d}/dx^m at x = cos(theta).

    Reduces to the (phase-free) associated Legendre function for d = 3;
    identically zero when m > l.
    """
    l = _check_degree(l)
    m = _check_order(m)
    d = _check_dim(d)
    ta = np.asarray(theta, dtype=float)
    scalar_in = ta.ndim == 0
    if m > l:
        return _maybe_scalar(np.zeros_like(ta), scalar_in)
    val = np.sin(ta) ** m * np.asarray(poly_deriv(l, m, d, np.cos(ta)))
    return _maybe_scalar(val, scalar_in)


def norm_factor(l, n, d):
    """Normalization N with N^2 int_0^pi sin^(d-2)(t) assoc(l,n,d,t)^2 dt = 1.

    N = sqrt( (2l+d-2)/(d-2) * Omega_{d-1}/Omega_d
              * (d-3)! (l-n)! / (d+l+n-3)! ).
    """
    l = _check_degree(l)
    n = _check_order(n)
    d = _check_dim(d)
    if n > l:
        raise ValueError(f"order n={n} exceeds degree l={l}")
    ratio = Fraction(2 * l + d - 2, d - 2) * Fraction(
        math.factorial(d - 3) * math.factorial(l - n), math.factorial(d + l + n - 3)
    )
    return math.sqrt(float(ratio) * solid_angle(d - 1) / solid_angle(d))


def ode_residual(l, m, d, theta):
    """Left side of the Sturm-Liouville equation satisfied by assoc(l,m,d).

    Evaluates, with P = assoc(l, m, d, theta) and analytic derivatives
    built from :func:`poly_deriv`,

        P'' + (d-2) cot(theta) P'
        + ( l(l+d-2) - m(m+d-3)/sin^2(theta) ) P,

    which vanishes identically in exact arithmetic.  theta must stay at
    least 1e-3 away from the endpoint singularities.
    """
    l = _check_degree(l)
    m = _check_order(m)
    d = _check_dim(d)
    if m > l:
        raise ValueError(f"order m={m} exceeds degree l={l}")
    ta = np.asarray(theta, dtype=float)
    scalar_in = ta.ndim == 0
    if np.any(ta < 1e-3) or np.any(ta > math.pi - 1e-3):
        raise ValueError("theta too close to the singular endpoints 0, pi")
    s = np.sin(ta)
    c = np.cos(ta)
    x = c
    g = np.asarray(poly_deriv(l, m, d, x))
    g1 = np.asarray(poly_deriv(l, m + 1, d, x))
    g2 = np.asarray(poly_deriv(l, m + 2, d, x))
    p = s**m * g
    p1 = m * s ** (m - 1) * c * g - s ** (m + 1) * g1
    p2 = (
        m * (m - 1) * s ** (m - 2) * c * c * g
        - m * s**m * g
        - (2 * m + 1) * s**m * c * g1
        + s ** (m + 2) * g2
    )
    resid = p2 + (d - 2) * (c / s) * p1 + (l * (l + d - 2) - m * (m + d - 3) / s**2) * p
    return _maybe_scalar(resid, scalar_in)
