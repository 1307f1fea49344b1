# Classical cross-checks: Dedekind sums and Pick's theorem.

import random

from toric_ehrhart import ehrhart_polynomial, oracle
from toric_ehrhart.corpus import random_simplex

# %% reciprocity s(h,k) + s(k,h) = -1/4 + (h/k + k/h + 1/(hk))/12
for h, k in [(3, 5), (7, 12), (13, 200)]:
    print(h, k, oracle.dedekind_sum(h, k) + oracle.dedekind_sum(k, h), oracle.dedekind_reciprocity_rhs(h, k))

# %% Pick: lattice points = area + boundary/2 + 1
rng = random.Random(1)
for _ in range(5):
    T = random_simplex(2, rng)
    print(T.vertices, ehrhart_polynomial(T)(1), oracle.pick_count(T.vertices))
