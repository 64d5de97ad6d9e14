"""Expand the fundamental kernel |x - x'|^-(d-2) into separable radial
and angular factors and watch the truncation error decay geometrically.

Run:  python demos/green_function_expansion.py
"""

import numpy as np

from ultrasph import CartesianPoint, green_expansion

d = 5
rng = np.random.default_rng(7)

va = rng.normal(size=d)
xa = CartesianPoint(d, 0.3 * va / np.linalg.norm(va))
vb = rng.normal(size=d)
xb = CartesianPoint(d, vb / np.linalg.norm(vb))
direct = float(np.sum((xa.x - xb.x) ** 2)) ** (-(d - 2) / 2)

print("=" * 70)
print(f"Separable expansion of |x - x'|^-(d-2) in d={d}")
print("=" * 70)
print(f"|x|  = {xa.norm():.3f}   |x'| = {xb.norm():.3f}   ratio = 0.3")
print(f"direct kernel value: {direct:.15f}")
print()
print(f"{'lmax':>5s} {'expansion':>22s} {'abs error':>12s}")
prev = None
for lmax in (0, 5, 10, 15, 20, 25, 30, 40):
    val = green_expansion(xa, xb, lmax)
    err = abs(val - direct)
    note = ""
    if prev is not None and err > 0:
        note = f"  (improved {prev / err:.1e}x)"
    print(f"{lmax:5d} {val:22.15f} {err:12.3e}{note}")
    prev = err if err > 0 else prev
print()
print("the error contracts by about (r_</r_>)^k when lmax grows by k")

print()
print("A point at the origin keeps only the monopole term:")
origin = CartesianPoint(d, np.zeros(d))
print(f"  kernel from origin to |x'|=1: {green_expansion(origin, xb, 0):.12f} "
      f"(= 1 since r_>^-(d-2) = 1)")
