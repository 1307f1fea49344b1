"""Named test simplices, random generators and SimplexFile reading."""

from __future__ import annotations

import json
import random
from pathlib import Path

from . import intlat
from .errors import DegenerateSimplex
from .simplex import Simplex


def standard_simplex(n):
    return Simplex([(0,) * n] + [tuple(int(i == j) for j in range(n)) for i in range(n)])


def segment(length):
    return Simplex([(0,), (length,)])


def reeve(r):
    return Simplex([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, r)])


def default_corpus():
    """(name, Simplex) pairs used for calibration: dims 1..3, smooth and singular."""
    out = [(f"segment_{L}", segment(L)) for L in (1, 3, 5)]
    triangles = {
        "triangle_unit": [(0, 0), (1, 0), (0, 1)],
        "triangle_1_3": [(0, 0), (1, 0), (1, 3)],
        "triangle_dilated_2": [(0, 0), (2, 0), (0, 2)],
        "triangle_skew": [(0, 0), (3, 1), (1, 2)],
        "triangle_wide": [(0, 0), (4, 1), (1, 3)],
    }
    out += [(k, Simplex(v)) for k, v in triangles.items()]
    out += [(f"reeve_{r}", reeve(r)) for r in range(1, 6)]
    out.append(("tetra_singular", Simplex([(0, 0, 0), (2, 1, 0), (1, 3, 1), (0, 1, 4)])))
    return out


def random_simplex(n, rng, lo=-6, hi=6):
    while True:
        try:
            return Simplex([tuple(rng.randint(lo, hi) for _ in range(n)) for _ in range(n + 1)])
        except DegenerateSimplex:
            continue


def random_simplices(count, dims=(1, 2, 3), seed=0, lo=-6, hi=6):
    rng = random.Random(seed)
    return [random_simplex(dims[i % len(dims)], rng, lo, hi) for i in range(count)]


def random_unimodular(n, rng, bound=3, steps=12):
    """A random matrix in GL_n(Z) with entries in [-bound, bound]."""
    while True:
        M = intlat.identity(n)
        for _ in range(steps):
            i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
            if n == 1 or rng.random() < 0.2:
                M[i] = [-x for x in M[i]]
                continue
            q = rng.choice((-1, 1))
            cand = [a + q * b for a, b in zip(M[i], M[j])]
            if max(abs(x) for x in cand) <= bound:
                M[i] = cand
        if abs(intlat.det(M)) == 1:
            return M


# SimplexFile ------------------------------------------------------------------


class SimplexFileError(ValueError):
    pass


def parse_simplex(obj):
    """(name, Simplex) from a decoded SimplexFile object.

    Vertices are ambient coordinates; with a "lattice" basis (rows) they are
    rewritten in that basis and must have integral coordinates.
    """
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise SimplexFileError("SimplexFile must be an object with a 'vertices' list")
    name = obj.get("name", "simplex")
    verts = obj["vertices"]
    if not isinstance(verts, list) or not all(
        isinstance(v, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in v) for v in verts
    ):
        raise SimplexFileError("'vertices' must be a list of integer lists")
    if "lattice" in obj:
        B = obj["lattice"]
        n = len(B)
        if not all(isinstance(r, list) and len(r) == n and all(isinstance(x, int) for x in r) for r in B):
            raise SimplexFileError("'lattice' must be a square integer matrix")
        if intlat.det(B) == 0:
            raise SimplexFileError("'lattice' basis is singular")
        converted = []
        for v in verts:
            if len(v) != n:
                raise SimplexFileError("vertex dimension does not match the lattice basis")
            c = intlat.solve_rational(B, v)
            if any(x.denominator != 1 for x in c):
                raise SimplexFileError(f"vertex {v} is not a point of the given lattice")
            converted.append(tuple(int(x) for x in c))
        verts = converted
    try:
        return name, Simplex(verts)
    except DegenerateSimplex as exc:
        raise SimplexFileError(str(exc)) from exc


def load_simplex(path):
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SimplexFileError(f"cannot read {path}: {exc}") from exc
    return parse_simplex(obj)


def load_corpus(directory):
    files = sorted(Path(directory).glob("*.json"))
    if not files:
        raise SimplexFileError(f"no SimplexFiles in {directory}")
    return [load_simplex(f) for f in files]


def simplex_to_json(name, S):
    return {"name": name, "vertices": [list(v) for v in S.vertices]}


def shipped_corpus_dir():
    return Path(__file__).parent / "data" / "corpus"
