"""Brute-force ground truth: lattice point counts, interpolation, Dedekind sums.

Nothing here uses the character-sum machinery; these functions exist so the
engine is never checked against itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import intlat
from .errors import NotCoprime

SLAB_POINTS = 2_000_000


def count_points(S, mu, interior=False):
    """Number of x in Z^n inside mu * S (strictly inside when ``interior``)."""
    n = S.dim
    A = np.array([fd.normal for fd in S.facets.values()], dtype=np.int64)
    rhs = np.array([fd.offset * mu for fd in S.facets.values()], dtype=np.int64)
    V = np.array(S.vertices, dtype=np.int64) * mu
    lo, hi = V.min(axis=0), V.max(axis=0)
    if interior:
        rhs = rhs + 1
    # enumerate the box one hyperplane x_0 = c at a time
    rest = [np.arange(lo[i], hi[i] + 1, dtype=np.int64) for i in range(1, n)]
    if rest:
        grid = np.stack(np.meshgrid(*rest, indexing="ij"), axis=-1).reshape(-1, n - 1)
        tail = grid @ A[:, 1:].T
    else:
        tail = np.zeros((1, A.shape[0]), dtype=np.int64)
    total = 0
    for chunk in range(0, tail.shape[0], SLAB_POINTS):
        part = tail[chunk : chunk + SLAB_POINTS]
        for c in range(lo[0], hi[0] + 1):
            total += int(np.count_nonzero(np.all(part + c * A[:, 0] >= rhs, axis=1)))
    return total


@dataclass
class CountTable:
    counts: dict = field(default_factory=dict)
    interior: bool = False


def count_table(S, dilations, interior=False):
    return CountTable({mu: count_points(S, mu, interior) for mu in dilations}, interior)


def interpolate(values):
    """Coefficients (lowest first) of the polynomial through (i, values[i]), i = 0..d."""
    values = [Fraction(v) for v in values]
    d = len(values) - 1
    # Newton forward differences, then expand the falling-factorial basis
    diffs, row = [], list(values)
    for _ in range(d + 1):
        diffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    coeffs = [Fraction(0)] * (d + 1)
    basis = [Fraction(1)]  # x (x-1) ... (x-j+1)
    for j in range(d + 1):
        w = diffs[j] / math.factorial(j)
        for i, c in enumerate(basis):
            coeffs[i] += w * c
        basis = [Fraction(0)] + basis
        for i in range(len(basis) - 1):
            basis[i] -= j * basis[i + 1]
    return tuple(coeffs)


def evaluate(coeffs, x):
    x = Fraction(x)
    return sum((c * x**r for r, c in enumerate(coeffs)), Fraction(0))


def oracle_polynomial(S):
    """Ehrhart polynomial by interpolating brute-force counts at mu = 0..n."""
    return interpolate([count_points(S, mu) for mu in range(S.dim + 1)])


def _sawtooth(x):
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)


def dedekind_sum(h, k):
    """s(h, k) by direct summation of sawtooth products."""
    if k < 1 or math.gcd(h, k) != 1:
        raise NotCoprime(f"NotCoprime: gcd({h}, {k}) != 1")
    return sum((_sawtooth(Fraction(i, k)) * _sawtooth(Fraction(h * i, k)) for i in range(1, k)), Fraction(0))


def dedekind_reciprocity_rhs(h, k):
    return Fraction(-1, 4) + (Fraction(h, k) + Fraction(k, h) + Fraction(1, h * k)) / 12


def reciprocity_check(S, mu_max=3):
    """Check l(-mu) = (-1)^n * interior_count(mu) for the interpolated polynomial."""
    poly = oracle_polynomial(S)
    sign = -1 if S.dim % 2 else 1
    rows = []
    for mu in range(1, mu_max + 1):
        lhs = evaluate(poly, -mu)
        inner = count_points(S, mu, interior=True)
        rows.append({"mu": mu, "value": str(lhs), "interior": inner, "ok": lhs == sign * inner})
    return {"polynomial": [str(c) for c in poly], "rows": rows, "ok": all(r["ok"] for r in rows)}


def euclidean_volume(S):
    edges = [[a - b for a, b in zip(v, S.vertices[0])] for v in S.vertices[1:]]
    return Fraction(abs(intlat.det(edges)), math.factorial(S.dim))


def shoelace_area(vertices):
    (x0, y0), (x1, y1), (x2, y2) = vertices
    return Fraction(abs((x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)), 2)


def boundary_points(vertices):
    m = len(vertices)
    return sum(
        math.gcd(*(a - b for a, b in zip(vertices[i], vertices[(i + 1) % m]))) for i in range(m)
    )


def pick_count(vertices):
    """A + B/2 + 1 for a lattice triangle."""
    return shoelace_area(vertices) + Fraction(boundary_points(vertices), 2) + 1
