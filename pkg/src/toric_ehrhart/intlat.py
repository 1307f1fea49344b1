"""Exact integer lattice linear algebra.

Matrices are lists of rows of Python ints; nothing in this module touches
floating point. The normal forms follow the usual conventions:

* ``hnf``: row Hermite form ``H = U A`` with positive pivots and the entries
  above each pivot reduced into ``[0, pivot)``.
* ``snf``: Smith form ``D = U A V`` with ``d_1 | d_2 | ...`` and ``d_i >= 0``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .errors import DegenerateCone, DegenerateFace, ZeroVector

Rational = Fraction


class VolumeConvention(enum.Enum):
    LATTICE = "lattice"
    NORMALIZED = "normalized"


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    cols = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def transpose(A):
    return [list(r) for r in zip(*A)]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def det(M):
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def _check_nonzero(A):
    if not A or not A[0] or all(x == 0 for row in A for x in row):
        raise ValueError("matrix must be nonzero")


def hnf(A):
    """Row Hermite normal form. Returns ``(H, U)`` with ``H = U A``."""
    _check_nonzero(A)
    H = [list(map(int, r)) for r in A]
    m, n = len(H), len(H[0])
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[piv] = H[piv], H[r]
            U[r], U[piv] = U[piv], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
                    if H[i][c]:
                        done = False
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return H, U


def _snf(A):
    m, n = len(A), len(A[0])
    D = [list(map(int, r)) for r in A]
    U, V, Vi = identity(m), identity(n), identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def add_row(dst, src, q):
        D[dst] = [x + q * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_col(dst, src, q):
        for M in (D, V):
            for row in M:
                row[dst] += q * row[src]
        Vi[src] = [x - q * y for x, y in zip(Vi[src], Vi[dst])]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return D, U, V, Vi
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return D, U, V, Vi


def snf(A):
    """Smith normal form. Returns ``(D, U, V)`` with ``D = U A V``."""
    _check_nonzero(A)
    D, U, V, _ = _snf(A)
    return D, U, V


def smith_invariants(A):
    D, _, _, _ = _snf(A)
    return [D[i][i] for i in range(min(len(D), len(D[0])))]


def primitive(v):
    """Divide an integer vector by the gcd of its entries, keeping its direction."""
    g = reduce(math.gcd, (abs(int(x)) for x in v), 0)
    if g == 0:
        raise ZeroVector("ZeroVector: cannot normalize the zero vector")
    return tuple(int(x) // g for x in v)


def solve_rational(M, b):
    """Solve ``x M = b`` for a row vector ``x`` when ``M`` has full row rank.

    ``M`` is k x n, ``b`` has length n and must lie in the row space.
    """
    k = len(M)
    # columns of M^T augmented with b, eliminate over Q
    rows = [[Fraction(M[i][j]) for i in range(k)] + [Fraction(b[j])] for j in range(len(b))]
    piv_row = 0
    pivots = []
    for c in range(k):
        p = next((r for r in range(piv_row, len(rows)) if rows[r][c] != 0), None)
        if p is None:
            raise DegenerateCone("DegenerateCone: rows are linearly dependent")
        rows[piv_row], rows[p] = rows[p], rows[piv_row]
        pv = rows[piv_row][c]
        rows[piv_row] = [x / pv for x in rows[piv_row]]
        for r in range(len(rows)):
            if r != piv_row and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[piv_row])]
        pivots.append(piv_row)
        piv_row += 1
    if any(rows[r][k] != 0 for r in range(piv_row, len(rows))):
        raise ValueError("vector is not in the row space")
    return [rows[i][k] for i in range(k)]


def inverse_rational(M):
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


@dataclass(frozen=True)
class LatticeBasis:
    """Basis of a saturated sublattice together with input coordinates.

    ``basis`` is k x n (rows are basis vectors, in HNF). ``coords`` is k x k:
    row i gives the i-th input vector in terms of ``basis``.
    """

    basis: tuple
    coords: tuple

    @property
    def rank(self):
        return len(self.basis)

    def index(self):
        """Index of the input vectors' span inside the saturated lattice."""
        return abs(det([list(r) for r in self.coords]))


def plane_lattice(vectors):
    """Saturated lattice ``Z^n`` intersected with the real span of ``vectors``."""
    A = [list(map(int, v)) for v in vectors]
    k = len(A)
    if k == 0:
        return LatticeBasis((), ())
    n = len(A[0])
    if k > n or all(x == 0 for r in A for x in r):
        raise DegenerateCone("DegenerateCone: vectors are linearly dependent")
    D, U, V, Vi = _snf(A)
    if any(D[i][i] == 0 for i in range(k)):
        raise DegenerateCone("DegenerateCone: vectors are linearly dependent")
    # A = U^-1 D V^-1, so the first k rows of V^-1 span the saturation
    W, _ = hnf([Vi[i] for i in range(k)])
    coords = tuple(tuple(_integral(solve_rational(W, a))) for a in A)
    return LatticeBasis(tuple(tuple(r) for r in W), coords)


def _integral(xs):
    out = []
    for x in xs:
        if x.denominator != 1:
            raise ArithmeticError("expected integral coordinates")
        out.append(int(x))
    return out


def integer_kernel(A, n):
    """Basis of the integer vectors orthogonal to every row of ``A`` (ambient dim n)."""
    if not A or all(x == 0 for r in A for x in r):
        return [tuple(r) for r in identity(n)]
    D, _, V, _ = _snf(A)
    rank = sum(1 for i in range(min(len(D), n)) if D[i][i] != 0)
    return [tuple(V[r][c] for r in range(n)) for c in range(rank, n)]


def lattice_volume(points, convention=VolumeConvention.LATTICE):
    """Volume of the simplex on ``points`` relative to the lattice of its affine span.

    LATTICE gives the relative volume (unit simplex = 1/r!); NORMALIZED gives
    r! times that. A single point has volume 1 under both conventions.
    """
    pts = [tuple(map(int, p)) for p in points]
    r = len(pts) - 1
    if r == 0:
        return Fraction(1)
    edges = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
    try:
        index = plane_lattice(edges).index()
    except DegenerateCone as exc:
        raise DegenerateFace("DegenerateFace: points are affinely dependent") from exc
    if convention is VolumeConvention.NORMALIZED:
        return Fraction(index)
    return Fraction(index, math.factorial(r))
