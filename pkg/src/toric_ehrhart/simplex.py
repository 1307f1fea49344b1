"""Lattice simplices, their face lattice, and inward facet normals."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from . import intlat
from .conegrp import Cone
from .errors import DegenerateSimplex
from .intlat import VolumeConvention


@dataclass(frozen=True, order=True)
class Face:
    """A nonempty face, identified by the sorted indices of its vertices."""

    vertices: tuple

    @property
    def dim(self):
        return len(self.vertices) - 1

    def sort_key(self):
        return (self.dim, self.vertices)

    def __contains__(self, other):
        return set(other.vertices) <= set(self.vertices)

    def __str__(self):
        return "{" + ",".join(map(str, self.vertices)) + "}"


@dataclass(frozen=True)
class FacetData:
    facet: Face
    normal: tuple
    offset: int


@dataclass(frozen=True)
class Simplex:
    """An n-simplex with n+1 integer vertices in Z^n."""

    vertices: tuple

    def __post_init__(self):
        verts = tuple(tuple(int(x) for x in v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise DegenerateSimplex("DegenerateSimplex: no vertices")
        n = len(verts) - 1
        if n == 0 or any(len(v) != n for v in verts):
            raise DegenerateSimplex(
                f"DegenerateSimplex: need n+1 points in Z^n, got {len(verts)} points of "
                f"dimension {sorted({len(v) for v in verts})}"
            )
        edges = [[a - b for a, b in zip(v, verts[0])] for v in verts[1:]]
        if intlat.det(edges) == 0:
            raise DegenerateSimplex("DegenerateSimplex: vertices are affinely dependent")

    @property
    def dim(self):
        return len(self.vertices) - 1

    @cached_property
    def facets(self):
        """Facet data keyed by facet, in face order."""
        n = self.dim
        out = {}
        for omit in range(n, -1, -1):
            F = Face(tuple(i for i in range(n + 1) if i != omit))
            out[F] = _facet_normal(self.vertices, F, omit)
        return dict(sorted(out.items(), key=lambda kv: kv[0].sort_key()))

    def transformed(self, T, t=None):
        """Image under ``x -> T x + t``."""
        t = t or (0,) * self.dim
        return Simplex(tuple(tuple(intlat.dot(row, v) + s for row, s in zip(T, t)) for v in self.vertices))


def _facet_normal(vertices, F, omit):
    n = len(vertices) - 1
    p = vertices[F.vertices[0]]
    edges = [[a - b for a, b in zip(vertices[i], p)] for i in F.vertices[1:]]
    kernel = intlat.integer_kernel(edges, n)
    normal = intlat.primitive(kernel[0])
    if intlat.dot(normal, [a - b for a, b in zip(vertices[omit], p)]) < 0:
        normal = tuple(-x for x in normal)
    return FacetData(F, normal, intlat.dot(normal, p))


def faces(S):
    """All nonempty faces, sorted by (dim, vertex subset)."""
    idx = range(S.dim + 1)
    return [Face(c) for r in range(1, S.dim + 2) for c in itertools.combinations(idx, r)]


def facet_normal(S, F):
    if F.dim != S.dim - 1:
        raise ValueError(f"{F} is not a facet")
    return S.facets[F]


def facets_containing(S, E):
    """F_E: the facets whose vertex set contains E's vertices."""
    return [F for F in S.facets if E in F]


def facets_avoiding(S, E):
    """H_E: the facets that do not contain E."""
    return [F for F in S.facets if E not in F]


def dual_cone(S, E):
    """Cone spanned by the inward normals of the facets containing E."""
    return Cone(tuple(S.facets[F].normal for F in facets_containing(S, E)))


def face_volume(S, E, convention=VolumeConvention.LATTICE):
    return intlat.lattice_volume([S.vertices[i] for i in E.vertices], convention)
