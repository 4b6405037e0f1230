"""The spectral measure of J_nu and its orthogonal polynomials.

The measure has atoms at 1/4 - x^2 for each positive zero x of chi and a
density on [1/4, inf).  At nu = 1 the density, written in t with
x = 1/4 + t^2, is the continuous dual Hahn weight.  The monic polynomials
p_n have squared norms ((nu)_n (nu+1)_n)^2.

Run with ``python demos/spectral_measure.py``.
"""
import numpy as np

from lmatrix import hilbert
from lmatrix.orthopoly import cdh_weight, gram_matrix

for nu in (1.0, 0.2, -0.5):
    mu = hilbert.spectral_measure(nu)
    atoms = ", ".join(f"{x:.6f} (mass {m:.6f})" for x, m in mu.atoms) or "none"
    print(f"nu = {nu:4}: atoms {atoms}; total mass {mu.total_mass():.12f}")

print("\nnu = 1 density in t against the continuous dual Hahn weight:")
for t in (0.25, 0.5, 1.0, 2.0, 4.0):
    lhs = 2 * t * hilbert.ac_density(t, 1.0)
    print(f"  t = {t:4}: {lhs:.15e}  {cdh_weight(t):.15e}")

print("\northonormal Gram matrix for nu = 0.2 (one atom), degrees 0..4:")
with np.printoptions(precision=2, suppress=False, linewidth=100):
    print(gram_matrix(0.2, 4, normalized=True))
