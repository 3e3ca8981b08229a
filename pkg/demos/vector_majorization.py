"""Demo: deciding d-majorization of vectors and exploring the polytope.

Run:  python3 demos/vector_majorization.py
"""

import numpy as np

from gibbsmaj import (classical_majorizes, classical_maximizer, d_majorizes,
                      d_stochastic_witness, polytope_inequalities,
                      polytope_vertices, random_d_stochastic)

rng = np.random.default_rng(0)

# A weight vector d and a starting distribution y.
d = np.array([1.0, 0.5, 0.25])
y = np.array([0.6, 0.3, 0.1])
print("d =", d)
print("y =", y)

# The scaled weight vector is below everything with the same total.
bottom = d * (y.sum() / d.sum())
print("\nscaled weight vector", np.round(bottom, 4),
      "is d-majorized by y:", d_majorizes(bottom, y, d))

# Any image of y under a random d-stochastic matrix stays below y,
# and the LP oracle produces an explicit witness matrix.
A = random_d_stochastic(d, rng)
x = A @ y
print("\nrandom image x =", np.round(x, 4))
print("d_majorizes(x, y, d):", d_majorizes(x, y, d))
W = d_stochastic_witness(x, y, d)
print("LP witness found:", W is not None)
print("witness maps y to x within", np.abs(W @ y - x).max())

# A generic vector with the right total usually escapes the polytope.
z = np.array([0.9, 0.4, -0.3])
print("\nz =", z, "d-majorized by y:", d_majorizes(z, y, d))

# The full polytope: 2^n inequalities, vertices, and the vertex that
# classically majorizes every member.
P = polytope_inequalities(y, d)
verts = polytope_vertices(P)
print("\npolytope has", P.sign_rows.shape[0], "inequality rows and",
      len(verts), "vertices:")
for v in verts:
    print("  ", np.round(v, 4))
top = classical_maximizer(y, d)
print("classically maximal vertex:", np.round(top, 4))
for _ in range(5):
    img = random_d_stochastic(d, rng) @ y
    print("  image", np.round(img, 4),
          "classically below the maximal vertex:", classical_majorizes(img, top))
