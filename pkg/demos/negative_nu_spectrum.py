"""Discrete spectrum of the Jacobi inverse J_nu for negative nu.

Each positive zero x of chi(.; nu) gives an eigenvalue 1/4 - x^2 of J_nu.
Below zero the count changes each time nu crosses one of the roots
returned by ``find_negative_nu_roots``.  The finite sections reproduce the
eigenvalue counts.  Eigenvalues close to the continuum edge 1/4 converge
only like n^(-1/2).

Run with ``python demos/negative_nu_spectrum.py``.
"""
from lmatrix import hilbert, oracle

roots = hilbert.find_negative_nu_roots(-2.0, 0.0)
print("count changes at nu =", ", ".join(f"{r.location:.6f}" for r in roots))

for nu in (-0.2, -0.7, -1.2, -1.6):
    zeros = hilbert.positive_zeros_chi(nu)
    analytic = sorted(0.25 - r.location**2 for r in zeros)
    small, _ = oracle.finite_section_spectrum_J(nu, 5000, k=len(analytic) + 1)
    print(f"\nnu = {nu}")
    for k, lam in enumerate(analytic):
        print(f"  eigenvalue {k}: chi zero {lam:.10f}   n=5000 section {small[k]:.10f}")
    print(f"  next section eigenvalue {small[len(analytic)]:.6f} (approaching 1/4)")

nu = -0.7
lam = sorted(0.25 - r.location**2 for r in hilbert.positive_zeros_chi(nu))[-1]
print(f"\nconvergence of the eigenvalue {lam:.8f} at nu = {nu}:")
for n in (1250, 5000, 20000, 80000):
    s, _ = oracle.finite_section_spectrum_J(nu, n, k=2)
    print(f"  n = {n:6d}: gap {s[1] - lam:.3e}")
