"""Where the Hilbert L-operator stops being bounded by 4.

For small positive nu the norm exceeds 4 through a single eigenvalue
4 / (1 - 4 x0^2).  As nu grows the zero x0 slides down to 0 and the
eigenvalue merges into the continuum at nu0.  The finite-section norm
approaches the analytic value from below, and slowly.

Run with ``python demos/norm_threshold.py``.
"""
from lmatrix import hilbert, oracle

nu0 = hilbert.find_nu0().location
print(f"threshold nu0 = {nu0:.15f}\n")

print(f"{'nu':>6} {'x0':>12} {'norm':>12} {'small-nu':>12} {'n=5000':>12}")
for nu in (0.01, 0.05, 0.1, 0.2, 0.3, 0.34, 0.5, 1.0):
    norm = hilbert.operator_norm(nu)
    x0 = hilbert.x0(nu).location if nu < nu0 else float("nan")
    approx = hilbert.norm_asymptotic(nu)
    section = oracle.finite_section_norm_L(nu, 5000)
    print(f"{nu:6.2f} {x0:12.8f} {norm:12.7f} {approx:12.5f} {section:12.7f}")

print("\nfinite sections at nu = 1, where the norm is 4:")
for n in (100, 1000, 10000, 100000):
    print(f"  n = {n:6d}: {oracle.finite_section_norm_L(1.0, n):.6f}")
