# Truncated power series over cyclotomic fields, and why the character sums
# come out rational.

from fractions import Fraction

from toric_ehrhart.conegrp import Cone, cone_group
from toric_ehrhart.cycser import coth_shift, x_over_tanh
from toric_ehrhart.ehrhart import PRINTED, character_sum

# %% U / tanh U and coth(pi i / 4 + U) to order 4
print(x_over_tanh(Fraction(1), 4))
print(coth_shift(Fraction(1, 4), Fraction(1), 2))  # coefficients live in Q(zeta_4)

# %% individual terms are irrational, but the sum over the group is fixed by
# every Galois conjugation, so it is rational
G = cone_group(Cone([(1, 0), (1, 5)]))
terms = [coth_shift(g[0], 1, 2) * coth_shift(g[1], 1, 2) for g in (G.gamma[i] for i in G.interior)]
print(terms[0].coeffs[0])
total = character_sum(G, [1, 1], PRINTED, 2, backend="cyclotomic")
print("sum:", total.rational())

# %% for large groups the same sum is computed modulo primes p = 1 mod L and
# reconstructed; both routes agree exactly
G = cone_group(Cone([(1, 0, 0), (0, 1, 0), (3, 5, 17)]))
a = character_sum(G, [1, 2, 3], PRINTED, 3, backend="cyclotomic").rational()
b = character_sum(G, [1, 2, 3], PRINTED, 3, backend="modular")
print(a == b, b)
