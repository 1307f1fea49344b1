# Ehrhart polynomials from the closed formula, checked against brute force.

import random
import time

from toric_ehrhart import ehrhart_polynomial, oracle
from toric_ehrhart.corpus import random_simplex, reeve

# %% Reeve tetrahedra all have four lattice points but different volumes
for r in range(1, 6):
    p = ehrhart_polynomial(reeve(r))
    print(f"reeve {r}:", [str(c) for c in p.coeffs], "l(1) =", p(1))

# %% random simplices: formula vs interpolated counts
rng = random.Random(0)
for n in (2, 3, 3, 3):
    S = random_simplex(n, rng)
    t = time.perf_counter()
    p = ehrhart_polynomial(S)
    dt = time.perf_counter() - t
    counts = [oracle.count_points(S, mu) for mu in range(n + 2)]
    print(S.vertices, p.coeffs == oracle.interpolate(counts[: n + 1]), p(n + 1) == counts[-1], f"{dt:.2f}s")

# %% reciprocity: l(-mu) counts interior points up to sign
print(oracle.reciprocity_check(reeve(3), 3))
