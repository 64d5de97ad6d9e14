"""Orthonormal hyperspherical harmonics and their index algebra.

A harmonic on the (d-1)-sphere is labeled by the integer chain
(l, m_{d-2}, ..., m_2, m_1) with

    l >= m_{d-2} >= ... >= m_2 >= |m_1|,

all entries nonnegative except m_1, whose negative branch is the complex
conjugate of the positive one.  The unnormalized eigenfunction is the
product over the angle chain

    Psi = P^{m_{d-2}}_{l,d}(cos theta_d)
          P^{m_{d-3}}_{m_{d-2},d-1}(cos theta_{d-1}) ...
          P^{m_1}_{m_2,3}(cos theta_3) e^{i m_1 phi},

an eigenfunction of the angular Laplacian with eigenvalue -l(l+d-2).
Y = norm_coeff * Psi is orthonormal against dOmega_d; the normalization
carries an explicit (2 pi)^(-1/2) azimuthal factor so that the Gram matrix
is exactly the identity (the chained 1-D factors alone leave a residual
2 pi from the phi integral).
"""

import math
from dataclasses import dataclass

import numpy as np

from .gegenbauer import assoc, norm_factor, poly
from .geometry import CartesianPoint, UltrasphericalPoint, solid_angle, to_cartesian, to_ultraspherical

__all__ = [
    "MultiIndex",
    "addition_reduced",
    "addition_sum",
    "count",
    "enumerate_indices",
    "eval_harmonic",
    "eval_psi",
    "harmonicity_residual",
    "norm_coeff",
]


@dataclass(frozen=True)
class MultiIndex:
    """Harmonic label (l, m_{d-2}, ..., m_2, m_1) for dimension d.

    ``m`` is ordered outermost first, so m[0] = m_{d-2} and m[-1] = m_1;
    only m_1 may be negative.
    """

    d: int
    l: int
    m: tuple

    def __post_init__(self):
        if not isinstance(self.d, (int, np.integer)) or self.d < 3:
            raise ValueError(f"dimension must be an integer >= 3, got {self.d!r}")
        if not isinstance(self.l, (int, np.integer)) or self.l < 0:
            raise ValueError(f"level must be a nonnegative integer, got {self.l!r}")
        m = tuple(int(v) for v in self.m)
        if len(m) != self.d - 2:
            raise ValueError(
                f"expected {self.d - 2} chain entries for d={self.d}, got {len(m)}"
            )
        bound = int(self.l)
        for v in m[:-1]:
            if not 0 <= v <= bound:
                raise ValueError(f"chain violation in {m}: {v} not in [0, {bound}]")
            bound = v
        if abs(m[-1]) > bound:
            raise ValueError(f"chain violation in {m}: |{m[-1]}| > {bound}")
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "l", int(self.l))
        object.__setattr__(self, "m", m)

    def axis_terms(self):
        """Per-axis factors as (dimension k, degree, order), k = d, ..., 3."""
        degrees = (self.l,) + self.m[:-1]
        orders = self.m[:-1] + (abs(self.m[-1]),)
        return tuple(
            (self.d - i, degrees[i], orders[i]) for i in range(self.d - 2)
        )

    def conjugate(self):
        """The label with m_1 negated."""
        return MultiIndex(self.d, self.l, self.m[:-1] + (-self.m[-1],))


def count(d, l):
    """Number of independent harmonics at level l: (d+2l-2)(d+l-3)!/((d-2)! l!)."""
    if not isinstance(d, (int, np.integer)) or d < 3:
        raise ValueError(f"dimension must be an integer >= 3, got {d!r}")
    if not isinstance(l, (int, np.integer)) or l < 0:
        raise ValueError(f"level must be a nonnegative integer, got {l!r}")
    num = (d + 2 * l - 2) * math.factorial(d + l - 3)
    den = math.factorial(d - 2) * math.factorial(l)
    assert num % den == 0
    return num // den


def _chains(bound, length):
    if length == 1:
        for m1 in range(-bound, bound + 1):
            yield (m1,)
        return
    for v in range(bound + 1):
        for rest in _chains(v, length - 1):
            yield (v,) + rest


def enumerate_indices(d, l):
    """All MultiIndex at level l, in deterministic lexicographic order.

    The outer entries ascend from 0 to their chain bound and m_1 ascends
    over [-m_2, m_2]; the result has length count(d, l).
    """
    return [MultiIndex(d, l, m) for m in _chains(l, d - 2)]


def eval_psi(idx, angles):
    """Unnormalized eigenfunction Psi at the given angles (m_1 >= 0 branch)."""
    if idx.m[-1] < 0:
        raise ValueError("eval_psi handles m_1 >= 0; use eval_harmonic for m_1 < 0")
    if angles.d != idx.d:
        raise ValueError(f"dimension mismatch: index d={idx.d}, point d={angles.d}")
    val = np.exp(1j * idx.m[-1] * np.asarray(angles.phi))
    for (k, degree, order), theta in zip(idx.axis_terms(), angles.theta):
        val = val * np.asarray(assoc(degree, order, k, theta))
    return complex(val) if np.ndim(val) == 0 else val


def norm_coeff(idx):
    """Chained normalization constant, including the (2 pi)^(-1/2) factor."""
    out = 1.0 / math.sqrt(2.0 * math.pi)
    for k, degree, order in idx.axis_terms():
        out *= norm_factor(degree, order, k)
    return out


def eval_harmonic(idx, angles):
    """Orthonormal harmonic Y at the given angles.

    For m_1 < 0 this is norm_coeff times the conjugate of the
    positive-m_1 eigenfunction.
    """
    if idx.m[-1] >= 0:
        return norm_coeff(idx) * eval_psi(idx, angles)
    pos = idx.conjugate()
    val = norm_coeff(idx) * np.conj(eval_psi(pos, angles))
    return complex(val) if np.ndim(val) == 0 else val


def addition_sum(d, l, angles_a, angles_b):
    """Level-l harmonic product sum, equal to P_{l,d}(cos gamma).

    Computes (d-2) Omega_d / (2l+d-2) * sum_idx Y(idx, a) conj(Y(idx, b));
    the imaginary part cancels (conjugate m_1 pairs) and is dropped.
    """
    total = 0.0 + 0.0j
    for idx in enumerate_indices(d, l):
        total += eval_harmonic(idx, angles_a) * np.conj(eval_harmonic(idx, angles_b))
    return float(((d - 2) * solid_angle(d) / (2 * l + d - 2)) * total.real)


def addition_reduced(d, l, theta_a, theta_b, cos_gamma_lower):
    """Single-sum addition theorem over the outermost order only.

    K_{l,d} sum_{m=0}^{l} (2m+d-3) N_{lm}^2 P^m_{l,d}(cos theta_a)
    P^m_{l,d}(cos theta_b) P_{m,d-1}(cos gamma_{d-1}), which again equals
    P_{l,d}(cos gamma_d).  Undefined at d = 3, where K divides by d-3.
    """
    if not isinstance(d, (int, np.integer)) or d < 4:
        raise ValueError(f"addition_reduced requires d >= 4, got {d!r}")
    k_factor = (
        solid_angle(d) / solid_angle(d - 1) * (d - 2) / ((2 * l + d - 2) * (d - 3))
    )
    total = 0.0
    for m in range(l + 1):
        total += (
            (2 * m + d - 3)
            * norm_factor(l, m, d) ** 2
            * assoc(l, m, d, theta_a)
            * assoc(l, m, d, theta_b)
            * poly(m, d - 1, cos_gamma_lower)
        )
    return k_factor * total


def harmonicity_residual(idx, r, angles, h=1e-3, branch="interior"):
    """Relative finite-difference Laplacian residual of a solid harmonic.

    Evaluates u = r^l Y (or u = r^-(l+d-2) Y for ``branch="exterior"``) on
    the 2d+1 point central stencil around the Cartesian image of
    (r, angles) and returns |sum_j D2_j u| / max(1, sum_j |D2_j u|), where
    D2_j is the second difference along axis j.  The residual of an exact
    harmonic is O(h^2) times the local fourth-derivative scale.

    Raises if the stencil comes within sin(theta_j) < 1e-6 of a chart
    singularity.
    """
    if not 1e-4 <= h <= 1e-2:
        raise ValueError(f"step h must lie in [1e-4, 1e-2], got {h!r}")
    if branch not in ("interior", "exterior"):
        raise ValueError(f"unknown branch {branch!r}")
    d = idx.d
    center = UltrasphericalPoint(d, r, angles.theta, angles.phi)
    x0 = to_cartesian(center).x
    stencil = np.tile(x0[:, None], (1, 2 * d + 1))
    for j in range(d):
        stencil[j, 1 + 2 * j] += h
        stencil[j, 2 + 2 * j] -= h
    sp = to_ultraspherical(CartesianPoint(d, stencil))
    for t in sp.theta:
        if np.any(np.sin(t) < 1e-6):
            raise ValueError("stencil too close to a coordinate-axis singularity")
    if branch == "interior":
        radial = np.asarray(sp.r) ** idx.l
    else:
        radial = np.asarray(sp.r) ** (-(idx.l + d - 2))
    u = radial * eval_harmonic(idx, sp)
    second = (u[1::2] - 2.0 * u[0] + u[2::2]) / h**2
    resid = abs(np.sum(second))
    scale = float(np.sum(np.abs(second)))
    return float(resid / max(1.0, scale))
