"""Demo: at n = 3 the trace-norm curve no longer decides D-majorization.

The shipped fixture triple (A, B, D) satisfies ||A - tD||_1 <= ||B - tD||_1
for every real t, yet no CPTP map sends B to A while fixing D.  The gap is
exhibited by the convex feasibility search, and B still sits above the two
structural extremes: D itself (minimal) and a rank-one top element.

Run:  python3 demos/three_level_counterexample.py
"""

import pathlib

import numpy as np

from gibbsmaj import (GibbsReference, cptp_feasibility, load_hermitian,
                      maximal_element, maximal_element_check,
                      minimal_element_witness, trace_norm_curve_check)

here = pathlib.Path(__file__).resolve().parents[1] / "fixtures"
A = load_hermitian(str(here / "eq1_A.json"))
B = load_hermitian(str(here / "eq1_B.json"))
D = load_hermitian(str(here / "eq1_D.json"))
ref = GibbsReference(D)

print("spectrum of D:", np.round(np.linalg.eigvalsh(D), 6))

print("\ntrace-norm curve condition ||A - tD||_1 <= ||B - tD||_1 for all t:",
      trace_norm_curve_check(A, B, ref))

verdict = cptp_feasibility(A, B, ref)
print("CPTP feasibility verdict:", verdict.status)
print("distance of A from the reachable set:", f"{verdict.residual:.4e}")
print("=> the scalar curve is necessary but not sufficient beyond qubits")

# D is below everything in the trace hyperplane: the constant-output map
# is an explicit certificate.
cert = minimal_element_witness(B, ref)
print("\nminimal element: certificate maps B to D within",
      f"{np.abs(cert.apply(B) - D).max():.1e},",
      "fixes D within", f"{np.abs(cert.apply(D) - D).max():.1e}")

# The rank-one matrix (tr D) |v><v| on the eigenvector of the smallest
# eigenvalue of D sits above everything PSD in the hyperplane.
E = maximal_element(ref)
print("maximal element eigenvalues:", np.round(np.linalg.eigvalsh(E), 6))
print("maximal element D-majorizes B:", maximal_element_check(B, ref))
