import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from toric_ehrhart import modsum
from toric_ehrhart.conegrp import cone_group
from toric_ehrhart.ehrhart import character_sum
from test_conegrp import random_cone


def test_primes_and_roots():
    for L in (1, 2, 12, 97, 360):
        p = next(modsum.primes_one_mod(L))
        assert modsum.is_prime(p) and (p - 1) % L == 0 and p < 2**31
        z = modsum.root_of_unity(L, p)
        assert pow(z, L, p) == 1
        assert all(pow(z, L // f, p) != 1 for f in modsum._prime_factors(L)) if L > 1 else True
    assert [n for n in range(30) if modsum.is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_rational_reconstruction():
    M = 1_000_000_007 * 998_244_353
    for x in (Fraction(0), Fraction(-7, 45), Fraction(123456, 7919), Fraction(1, 3)):
        a = x.numerator * pow(x.denominator, -1, M) % M
        assert modsum.rational_reconstruct(a, M) == x


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10**6), st.sampled_from(["interior", "full"]))
def test_modular_agrees_with_cyclotomic(k, seed, support):
    rng = random.Random(seed)
    C = random_cone(rng, 3, k, bound=3)
    G = cone_group(C)
    if G.order > 40:
        return
    weights = [Fraction(rng.randint(1, 6), rng.randint(1, 3)) for _ in range(k)]
    exact = character_sum(G, weights, None, 3, support=support, backend="cyclotomic").rational()
    modular = character_sum(G, weights, None, 3, support=support, backend="modular")
    assert exact == modular


def test_large_group():
    from toric_ehrhart.conegrp import Cone

    G = cone_group(Cone([(1, 0, 0), (0, 1, 0), (5, 7, 211)]))
    assert G.order == 211
    s = character_sum(G, [1, 1, 1], None, 3, backend="modular")
    assert all(isinstance(c, Fraction) for c in s.coeffs)
