import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from toric_ehrhart import intlat
from toric_ehrhart.conegrp import Cone, cone_group, dual_data, gamma_table


def gamma_of(G, g):
    """gamma_j of an ambient lattice point g in the plane of G's cone."""
    return tuple(Fraction(intlat.dot(g, m), q) % 1 for m, q in zip(G.dual.m, G.dual.q))


def random_cone(rng, n, k, bound=4):
    while True:
        gens = [tuple(rng.randint(-bound, bound) for _ in range(n)) for _ in range(k)]
        if any(all(x == 0 for x in g) for g in gens):
            continue
        gens = [intlat.primitive(g) for g in gens]
        try:
            intlat.plane_lattice(gens)
        except Exception:
            continue
        return Cone(gens)


def test_dual_data_examples():
    d = dual_data(Cone([(1, 0), (0, 1)]))
    assert d.m == ((1, 0), (0, 1)) and d.q == (1, 1)
    d = dual_data(Cone([(1, 0), (1, 2)]))
    assert d.m == ((2, -1), (0, 1)) and d.q == (2, 2)
    d = dual_data(Cone([(1,)]))
    assert d.m == ((1,),) and d.q == (1,)


def test_group_examples():
    G = cone_group(Cone([(1, 0), (0, 1)]))
    assert G.order == 1 and G.interior == []
    assert gamma_table(G) == [[0, 0]]
    G = cone_group(Cone([(1, 0), (1, 2)]))
    assert G.order == 2
    assert gamma_table(G) == [[0, 0], [Fraction(1, 2), Fraction(1, 2)]]
    assert G.interior == [1]
    G = cone_group(Cone(()))
    assert G.order == 1 and G.interior == [0]


def test_gamma_of_lq_cone():
    # the class of (1, 0) in Z^2 / <(1,0),(1,q)> ... is trivial; the class of
    # (0, 1) = ((q-1)/q) (1, 0) + (1/q) (1, q) has gamma = ((q-1)/q, 1/q)
    for q in range(2, 9):
        G = cone_group(Cone([(1, 0), (1, q)]))
        assert G.order == q
        assert gamma_of(G, (0, 1)) == (Fraction(q - 1, q), Fraction(1, q))
        assert gamma_of(G, (1, 0)) == (0, 0)


def test_cone_in_proper_plane():
    # (1,0,1) lies in the plane and equals half the sum of the generators
    G = cone_group(Cone([(1, 1, 0), (1, -1, 2)]))
    assert G.order == 2
    assert G.gamma[1] == (Fraction(1, 2), Fraction(1, 2))
    assert G.reps[1] == (1, 0, 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10**6))
def test_representative_independence(k, seed):
    rng = random.Random(seed)
    C = random_cone(rng, 3, k)
    G = cone_group(C)
    for rep, gam in zip(G.reps, G.gamma):
        assert gamma_of(G, rep) == gam
        for _ in range(100):
            shift = [rng.randint(-5, 5) for _ in range(k)]
            g = tuple(rep[c] + sum(s * gen[c] for s, gen in zip(shift, C.generators)) for c in range(3))
            assert gamma_of(G, g) == gam


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10**6))
def test_order_matches_determinant_and_smith(k, seed):
    C = random_cone(random.Random(seed), 3, k)
    G = cone_group(C)
    coords = [list(r) for r in G.dual.plane.coords]
    assert G.order == abs(intlat.det(coords)) == _smith_product(coords)
    assert len(set(G.gamma)) == G.order


def _smith_product(M):
    out = 1
    for d in intlat.smith_invariants(M):
        out *= d
    return out


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_m_determinant_in_the_plane(seed):
    C = random_cone(random.Random(seed), 2, 2)
    G = cone_group(C)
    assert G.order == abs(intlat.det([list(m) for m in G.dual.m]))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10**6))
def test_interior_means_open_parallelepiped(k, seed):
    C = random_cone(random.Random(seed), 3, k, bound=3)
    G = cone_group(C)
    interior = set(G.interior)
    for i, (rep, gam) in enumerate(zip(G.reps, G.gamma)):
        coords = intlat.solve_rational(C.generators, rep)
        assert tuple(coords) == gam
        assert (i in interior) == all(0 < c < 1 for c in coords)


def test_smooth_cones_are_trivial():
    rng = random.Random(5)
    from toric_ehrhart.corpus import random_unimodular

    for _ in range(20):
        T = random_unimodular(3, rng)
        for k in (1, 2, 3):
            G = cone_group(Cone([tuple(r) for r in T[:k]]))
            assert G.order == 1 and G.interior == []
