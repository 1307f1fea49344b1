"""Finite abelian groups attached to simplicial cones.

For a cone generated by primitive vectors n_1..n_k, let N be the lattice of
integer points in the plane of the cone. The group is ``N / (Z n_1 + ... + Z n_k)``;
its order is the multiplicity of the cone. Each element g acts on the j-th
coordinate through the angle ``gamma_j(g) = (g . m_j) / q_j mod 1``, where
``m_j`` is the primitive plane vector orthogonal to every generator except
``n_j`` and ``q_j = m_j . n_j``. Equivalently gamma_j(g) is the fractional part
of the j-th coordinate of g in the (rational) basis n_1..n_k, so the value does
not depend on the coset representative.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import intlat
from .intlat import LatticeBasis


@dataclass(frozen=True)
class Cone:
    generators: tuple

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(tuple(int(x) for x in g) for g in self.generators))

    @property
    def dim(self):
        return len(self.generators)


@dataclass(frozen=True)
class ConeDual:
    m: tuple
    q: tuple
    plane: LatticeBasis = field(repr=False)


def dual_data(cone):
    """Dual vectors m_i and pairings q_i inside the cone's saturated plane."""
    k = cone.dim
    if k == 0:
        return ConeDual((), (), LatticeBasis((), ()))
    n = len(cone.generators[0])
    if k == n:
        basis = tuple(tuple(r) for r in intlat.identity(n))
        _ = intlat.plane_lattice(cone.generators)  # raises on dependent generators
        plane = LatticeBasis(basis, cone.generators)
    else:
        plane = intlat.plane_lattice(cone.generators)
    W = [list(r) for r in plane.basis]
    C = [list(r) for r in plane.coords]
    gram = intlat.matmul(W, intlat.transpose(W))
    Minv = intlat.inverse_rational(intlat.matmul(C, gram))
    ms, qs = [], []
    for i in range(k):
        col = [Minv[r][i] for r in range(k)]
        den = math.lcm(*(x.denominator for x in col))
        y = intlat.primitive([int(x * den) for x in col])
        m = tuple(sum(y[r] * W[r][c] for r in range(k)) for c in range(n))
        q = intlat.dot(m, cone.generators[i])
        if q < 0:
            m, q = tuple(-x for x in m), -q
        ms.append(m)
        qs.append(q)
    return ConeDual(tuple(ms), tuple(qs), plane)


@dataclass(frozen=True)
class ConeGroup:
    """The group of a cone, stored through its Smith decomposition.

    ``invariants`` are the nontrivial invariant factors d_i; ``shifts`` holds
    an ambient lift t_i of the i-th cyclic generator and ``exponents[i][j]``
    is ``level * gamma_j(t_i)``. Elements are indexed by SNF coordinates
    ``0 <= y_i < d_i`` in lexicographic order.
    """

    cone: Cone
    dual: ConeDual
    invariants: tuple
    shifts: tuple
    exponents: tuple
    level: int

    @property
    def order(self):
        return math.prod(self.invariants)

    @property
    def k(self):
        return self.cone.dim

    @cached_property
    def coordinates(self):
        return list(itertools.product(*(range(d) for d in self.invariants)))

    def exponent_of(self, y):
        L = self.level
        return tuple(sum(yi * X[j] for yi, X in zip(y, self.exponents)) % L for j in range(self.k))

    @cached_property
    def gamma(self):
        """gamma_j(g) in [0, 1) for every element, in canonical order."""
        if self.k == 0:
            return [()]
        L = self.level
        return [tuple(Fraction(e, L) for e in self.exponent_of(y)) for y in self.coordinates]

    @cached_property
    def reps(self):
        """Coset representatives in the half-open parallelepiped of the generators."""
        if self.k == 0:
            return [()]
        n = len(self.cone.generators[0])
        out = []
        for gam in self.gamma:
            v = [sum(g * gen[c] for g, gen in zip(gam, self.cone.generators)) for c in range(n)]
            out.append(tuple(int(x) for x in v))
        return out

    @cached_property
    def interior(self):
        """Indices of elements whose characters are all nontrivial.

        The zero cone has the identity as its only (interior) element.
        """
        if self.k == 0:
            return [0]
        return [i for i, gam in enumerate(self.gamma) if all(g != 0 for g in gam)]


def cone_group(cone):
    dual = dual_data(cone)
    k = cone.dim
    if k == 0:
        return ConeGroup(cone, dual, (), (), (), 1)
    W = [list(r) for r in dual.plane.basis]
    D, _, _, Vi = intlat._snf([list(r) for r in dual.plane.coords])
    diag = [D[i][i] for i in range(k)]
    keep = [i for i in range(k) if diag[i] > 1]
    invariants = tuple(diag[i] for i in keep)
    level = invariants[-1] if invariants else 1
    shifts, exponents = [], []
    for i in keep:
        t = tuple(sum(Vi[i][r] * W[r][c] for r in range(k)) for c in range(len(W[0])))
        shifts.append(t)
        exps = []
        for m, q in zip(dual.m, dual.q):
            val = Fraction(intlat.dot(t, m) * level, q)
            assert val.denominator == 1
            exps.append(int(val) % level)
        exponents.append(tuple(exps))
    return ConeGroup(cone, dual, invariants, tuple(shifts), tuple(exponents), level)


def gamma_table(G):
    return [list(row) for row in G.gamma]
