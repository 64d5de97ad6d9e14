"""Solve Dirichlet problems on a ball, a ball complement, and a shell by
projecting the boundary data onto harmonics and picking radial branches.

Run:  python demos/boundary_value_problems.py
"""

import numpy as np

from ultrasph import (
    BoundaryProblem,
    HarmonicExpansion,
    MultiIndex,
    UltrasphericalPoint,
    enumerate_indices,
    eval_expansion,
    eval_harmonic,
    fit_annulus,
    fit_exterior,
    fit_interior,
    sphere_grid,
)

d, lmax = 4, 3
rng = np.random.default_rng(42)

print("=" * 70)
print("Interior problem: data on r=R continues harmonically into the ball")
print("=" * 70)
target = MultiIndex(d, 2, (1, 1))
problem = BoundaryProblem(
    d, "interior", (2.0,), lmax, (lambda p: eval_harmonic(target, p),)
)
fit = fit_interior(problem)
print(f"boundary data = one level-2 harmonic on R=2")
print(f"recovered A at {target.m}: {fit.coeffs[target][0]:.12f} (expect R^-l = 0.25)")
inside = UltrasphericalPoint(d, 1.0, (0.9, 1.4), 0.3)
print(f"field at r=1: {eval_expansion(fit, 1.0, inside):.12f}")
print(f"  = 2^-2 * Y: {0.25 * eval_harmonic(target, inside):.12f}")

print()
print("=" * 70)
print("Exterior problem: constant data decays like r^-(d-2)")
print("=" * 70)
problem = BoundaryProblem(
    d, "exterior", (1.0,), 1, (lambda p: np.ones(p.phi.shape, dtype=complex),)
)
fit = fit_exterior(problem)
for r in (1.0, 2.0, 4.0):
    val = eval_expansion(fit, r, inside)
    print(f"  r={r}: field {val.real:.12f} vs r^-(d-2) = {r ** -(d - 2):.12f}")

print()
print("=" * 70)
print("Annulus: manufactured two-branch field recovered from both spheres")
print("=" * 70)
coeffs = {
    idx: (complex(rng.normal(), rng.normal()), complex(rng.normal(), rng.normal()))
    for l in range(lmax + 1)
    for idx in enumerate_indices(d, l)
}
truth = HarmonicExpansion(d, lmax, coeffs)
problem = BoundaryProblem(
    d, "annulus", (0.5, 2.0), lmax,
    (
        lambda p: eval_expansion(truth, 0.5, p),
        lambda p: eval_expansion(truth, 2.0, p),
    ),
)
fit = fit_annulus(problem)
err = max(
    max(abs(fit.coeffs[i][0] - a), abs(fit.coeffs[i][1] - b))
    for i, (a, b) in truth.coeffs.items()
)
print(f"max coefficient recovery error over {len(coeffs)} indices: {err:.2e}")

grid = sphere_grid(d, lmax)
for radius in (0.5, 2.0):
    want = np.asarray(eval_expansion(truth, radius, grid.points))
    got = np.asarray(eval_expansion(fit, radius, grid.points))
    print(f"boundary reproduction at r={radius}: "
          f"max error {np.max(np.abs(want - got)):.2e}")
