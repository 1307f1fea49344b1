"""Ehrhart polynomials of lattice simplices from cone character sums.

The polynomial is assembled as ``l(k) = sum_r a_r b_r k^r``: the ``a_r`` are
coefficients of a power series in U built from face volumes, x/tanh factors
and coth character sums over the finite groups of the normal cones, and the
``b_r`` are volume ratios attached to faces of dimension r.

Several normalisations of that recipe are plausible, so every computation is
parameterised by a :class:`ConventionProfile`. ``PRINTED`` is the literal
reading; ``CALIBRATED`` is the profile selected by :func:`calibrate` against
brute-force lattice point counts and shipped in ``data/calibrated_profile.json``.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from . import simplex as sx
from .conegrp import cone_group
from .cycser import TruncSeries, coth_shift, rational_part, x_over_tanh
from .errors import (
    AmbiguousProfile,
    EhrhartError,
    FaceDependence,
    NoProfileMatches,
)
from .intlat import VolumeConvention
from .modsum import character_sum_modular

CYCLOTOMIC_MAX_ORDER = 16


class BPower(enum.Enum):
    DENOM = "denom"
    NONE = "none"
    NUMER = "numer"


class Degree(enum.Enum):
    """Which power of U feeds a_r: U^r, or U^(n-r)."""

    ASCENDING = "ascending"
    COMPLEMENT = "complement"


class Assembly(enum.Enum):
    """How group sums are attached to faces.

    FACE_PAIRS sums over pairs K <= E, weighting the interior character sum of
    E's cone by a bracket over its subfaces. CONE_LOCAL attaches to each face
    K the sum over all of G_K, where an element contributes
    ``prod (1 + coth(pi i gamma_F + nu_F U))`` over the facets with gamma_F != 0.
    The two agree whenever every cone group splits along its faces, which is
    always the case in dimension <= 2.
    """

    FACE_PAIRS = "face_pairs"
    CONE_LOCAL = "cone_local"


@dataclass(frozen=True)
class ConventionProfile:
    volume: VolumeConvention = VolumeConvention.LATTICE
    u_scale: Fraction = Fraction(1)
    b_power: BPower = BPower.DENOM
    degree: Degree = Degree.ASCENDING
    assembly: Assembly = Assembly.FACE_PAIRS

    def __post_init__(self):
        object.__setattr__(self, "u_scale", Fraction(self.u_scale))
        if self.u_scale not in (1, Fraction(1, 2)):
            raise ValueError(f"u_scale must be 1 or 1/2, got {self.u_scale}")

    @classmethod
    def all(cls):
        """Every profile in the knob space, in a fixed order."""
        return [
            cls(v, s, b, d, a)
            for v in VolumeConvention
            for s in (Fraction(1), Fraction(1, 2))
            for b in BPower
            for d in Degree
            for a in Assembly
        ]

    def to_dict(self):
        return {
            "volume": self.volume.value,
            "u_scale": str(self.u_scale),
            "b_power": self.b_power.value,
            "degree": self.degree.value,
            "assembly": self.assembly.value,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            VolumeConvention(d["volume"]),
            Fraction(d["u_scale"]),
            BPower(d["b_power"]),
            Degree(d.get("degree", "ascending")),
            Assembly(d.get("assembly", "face_pairs")),
        )

    @property
    def label(self):
        return "/".join(str(v) for v in self.to_dict().values())

    def _two_power(self):
        """(coefficient of n, coefficient of r) in log2 of the scaling of c_r.

        u_scale multiplies the U^j coefficient by s^j and b_power contributes
        2^(-(n-r)), 1 or 2^(n-r); both are powers of two that depend only on
        (n, r), so they combine into one linear form.
        """
        t = -1 if self.u_scale != 1 else 0
        e = {BPower.DENOM: -1, BPower.NONE: 0, BPower.NUMER: 1}[self.b_power]
        if self.degree is Degree.ASCENDING:
            return (e, t - e)
        return (t + e, -t - e)

    def equivalent(self, other):
        """True when both profiles give identical polynomials on every simplex."""
        return (
            self.volume == other.volume
            and self.degree == other.degree
            and self.assembly == other.assembly
            and self._two_power() == other._two_power()
        )

    def distance(self, other):
        return sum(x != y for x, y in zip(self.to_dict().values(), other.to_dict().values()))


PRINTED = ConventionProfile()


def _load_calibrated():
    path = resources.files("toric_ehrhart").joinpath("data/calibrated_profile.json")
    return ConventionProfile.from_dict(json.loads(path.read_text())["profile"])


CALIBRATED = _load_calibrated()


@dataclass(frozen=True)
class EhrhartPolynomial:
    n: int
    a: tuple
    b: tuple
    coeffs: tuple
    profile: ConventionProfile = field(compare=False)

    def __call__(self, k):
        k = Fraction(k)
        return sum((c * k**r for r, c in enumerate(self.coeffs)), Fraction(0))

    @property
    def degree(self):
        nz = [r for r, c in enumerate(self.coeffs) if c]
        return nz[-1] if nz else -1

    def to_dict(self):
        return {
            "profile": self.profile.to_dict(),
            "a": [str(x) for x in self.a],
            "b": [str(x) for x in self.b],
            "coeffs": [str(x) for x in self.coeffs],
        }


# per-simplex data ---------------------------------------------------------


class _SimplexData:
    """Profile-independent pieces of the computation, memoised per simplex."""

    def __init__(self, S):
        self.S = S
        self.faces = sx.faces(S)
        self.facets = list(S.facets)
        self.containing = {E: sx.facets_containing(S, E) for E in self.faces}
        self.avoiding = {E: sx.facets_avoiding(S, E) for E in self.faces}
        self.groups = {E: cone_group(sx.dual_cone(S, E)) for E in self.faces}
        self._volumes = {}
        self._series = {}

    def volumes(self, convention):
        if convention not in self._volumes:
            self._volumes[convention] = {E: sx.face_volume(self.S, E, convention) for E in self.faces}
        return self._volumes[convention]

    def multiplicity(self, E):
        return self.groups[E].order


@lru_cache(maxsize=512)
def simplex_data(S):
    return _SimplexData(S)


# building blocks ------------------------------------------------------------


def _profile(profile):
    return CALIBRATED if profile is None else profile


def omega(S, K, profile=None, D=None):
    """The monomial m(K) * prod_{F containing K} (nu(F) s U)."""
    profile = _profile(profile)
    data = simplex_data(S)
    D = S.dim if D is None else D
    vol = data.volumes(profile.volume)
    coeff = Fraction(data.multiplicity(K))
    for F in data.containing[K]:
        coeff *= vol[F] * profile.u_scale
    return TruncSeries.monomial(coeff, len(data.containing[K]), D)


def _character_sum_cyclotomic(G, weights, D, support):
    L = G.level
    elements = G.interior if support == "interior" else range(G.order)
    total = TruncSeries.zero(D)
    for idx in elements:
        term = TruncSeries.one(D)
        for gam, w in zip(G.gamma[idx], weights):
            if gam == 0:
                continue
            f = coth_shift(gam, w, D, L)
            term = term * (f + 1 if support == "full" else f)
        total = total + term
    return total


def character_sum(G, weights, profile=None, D=0, *, support="interior", backend="auto"):
    """Sum over group elements of products of shifted coth series.

    ``support="interior"`` sums ``prod_j coth(pi i gamma_j(g) + s w_j U)`` over
    the elements with every gamma_j nonzero (the zero cone gives 1, a smooth
    cone gives 0). ``support="full"`` sums over all of G, each element
    contributing ``prod (1 + coth(...))`` over the coordinates where gamma_j
    is nonzero.

    ``backend`` is "cyclotomic" (exact arithmetic in Q(zeta_L); coefficients
    may be cyclotomic), "modular" (multi-modular, rational result) or "auto".
    """
    profile = _profile(profile)
    if support not in ("interior", "full"):
        raise ValueError(f"unknown support {support!r}")
    weights = [Fraction(w) * profile.u_scale for w in weights]
    if len(weights) != G.k:
        raise ValueError(f"expected {G.k} weights, got {len(weights)}")
    if G.k == 0:
        return TruncSeries.one(D)
    if backend == "auto":
        backend = "cyclotomic" if G.order <= CYCLOTOMIC_MAX_ORDER else "modular"
    if backend == "cyclotomic":
        return _character_sum_cyclotomic(G, weights, D, support)
    if backend == "modular":
        return character_sum_modular(G, weights, D, support=support)
    raise ValueError(f"unknown backend {backend!r}")


def _tanh_product(data, K, vol, s, D):
    out = TruncSeries.one(D)
    for F in data.avoiding[K]:
        out = out * x_over_tanh(vol[F] * s, D)
    return out


def _series_terms(S, profile, backend):
    """The summands of the U-series, one per face, in canonical face order."""
    data = simplex_data(S)
    n = S.dim
    vol = data.volumes(profile.volume)
    s = profile.u_scale
    terms = []
    if profile.assembly is Assembly.FACE_PAIRS:
        for E in data.faces:
            weights = [vol[F] for F in data.containing[E]]
            chars = character_sum(data.groups[E], weights, profile, n, backend=backend)
            if not any(chars.coeffs):
                continue
            bracket = TruncSeries.zero(n)
            for K in data.faces:
                if K.vertices and set(K.vertices) <= set(E.vertices):
                    bracket = bracket + omega(S, K, profile, n) * _tanh_product(data, K, vol, s, n)
            terms.append(bracket * chars / data.multiplicity(E))
    else:
        for K in data.faces:
            weights = [vol[F] for F in data.containing[K]]
            chars = character_sum(data.groups[K], weights, profile, n, support="full", backend=backend)
            local = omega(S, K, profile, n) * _tanh_product(data, K, vol, s, n)
            terms.append(local * chars / data.multiplicity(K))
    return terms


def ehrhart_series(S, profile=None, backend="auto"):
    """The assembled U-series with rational coefficients (truncated at U^n)."""
    profile = _profile(profile)
    data = simplex_data(S)
    key = (profile.volume, profile.u_scale, profile.assembly, backend)
    if key not in data._series:
        terms = _series_terms(S, profile, backend)
        level = math.lcm(1, *(t.level for t in terms))
        total = TruncSeries.zero(S.dim)
        for t in terms:
            total = total + t.to_level(level)
        data._series[key] = total.rational()
    return data._series[key]


def a_coefficients(S, profile=None, backend="auto"):
    profile = _profile(profile)
    series = ehrhart_series(S, profile, backend)
    n = S.dim
    if profile.degree is Degree.ASCENDING:
        return tuple(rational_part(series[r]) for r in range(n + 1))
    return tuple(rational_part(series[n - r]) for r in range(n + 1))


def b_candidates(S, profile=None):
    """b_r computed from each face of dimension r: {r: [(face, value), ...]}."""
    profile = _profile(profile)
    data = simplex_data(S)
    n = S.dim
    vol = data.volumes(profile.volume)
    out = {r: [] for r in range(n + 1)}
    for E in data.faces:
        r = E.dim
        den = Fraction(data.multiplicity(E))
        for F in data.containing[E]:
            den *= vol[F]
        two = Fraction(2) ** (n - r)
        value = vol[E] / den
        if profile.b_power is BPower.DENOM:
            value /= two
        elif profile.b_power is BPower.NUMER:
            value *= two
        out[r].append((E, value))
    return out


def b_coefficients(S, profile=None):
    out = []
    for r, vals in b_candidates(S, profile).items():
        distinct = {v for _, v in vals}
        if len(distinct) != 1:
            detail = ", ".join(f"{E}: {v}" for E, v in vals)
            raise FaceDependence(f"FaceDependence: b_{r} differs across faces ({detail})")
        out.append(distinct.pop())
    return tuple(out)


def ehrhart_polynomial(S, profile=None, backend="auto"):
    profile = _profile(profile)
    a = a_coefficients(S, profile, backend)
    b = b_coefficients(S, profile)
    return EhrhartPolynomial(S.dim, a, b, tuple(x * y for x, y in zip(a, b)), profile)


# calibration ------------------------------------------------------------------


@dataclass
class CalibrationReport:
    """Per-profile, per-simplex comparison against oracle polynomials.

    ``rows`` holds one entry per (profile, simplex) with the engine and oracle
    coefficients and the per-degree ratios engine/oracle (None where the
    oracle coefficient is zero, "error" when the engine raised).
    """

    names: list
    oracle: dict
    rows: list = field(default_factory=list)
    matching: list = field(default_factory=list)
    chosen: ConventionProfile | None = None

    def to_dict(self):
        return {
            "corpus": self.names,
            "oracle": {k: [str(c) for c in v] for k, v in self.oracle.items()},
            "matching": [p.to_dict() for p in self.matching],
            "chosen": self.chosen.to_dict() if self.chosen else None,
            "rows": self.rows,
        }

    def table(self):
        lines = []
        for row in self.rows:
            status = "ok" if row["match"] else "FAIL"
            detail = row.get("error") or " ".join(
                "-" if x is None else str(x) for x in row["ratios"]
            )
            lines.append(f"{row['profile']:<45} {row['simplex']:<24} {status:<4} {detail}")
        return "\n".join(lines)


def _ratios(engine, oracle):
    return [None if o == 0 else str(Fraction(e) / o) for e, o in zip(engine, oracle)]


def calibration_report(corpus, max_dim_oracle=3, profiles=None, backend="auto"):
    """Evaluate every profile on ``corpus`` (a list of (name, Simplex) or Simplex)."""
    from .oracle import oracle_polynomial

    entries = [(c if isinstance(c, tuple) else (f"simplex{i}", c)) for i, c in enumerate(corpus)]
    profiles = ConventionProfile.all() if profiles is None else profiles
    oracle = {}
    for name, S in entries:
        if S.dim <= max_dim_oracle:
            oracle[name] = oracle_polynomial(S)
    report = CalibrationReport([name for name, _ in entries], oracle)
    for profile in profiles:
        ok = True
        for name, S in entries:
            if name not in oracle:
                continue
            row = {"profile": profile.label, "simplex": name}
            try:
                poly = ehrhart_polynomial(S, profile, backend)
            except EhrhartError as exc:
                row.update(match=False, error=str(exc), coeffs=None, ratios=None)
                ok = False
            else:
                match = list(poly.coeffs) == list(oracle[name])
                row.update(
                    match=match,
                    coeffs=[str(c) for c in poly.coeffs],
                    ratios=_ratios(poly.coeffs, oracle[name]),
                )
                ok = ok and match
            report.rows.append(row)
        if ok:
            report.matching.append(profile)
    return report


def run_calibration(corpus, max_dim_oracle=3, profiles=None, backend="auto"):
    """Calibration report with ``chosen`` set: the profile whose polynomials equal the oracle on every corpus entry.

    Profiles that are identical as functions of the simplex (see
    ``ConventionProfile.equivalent``) cannot be told apart by any corpus; such
    a class counts as one match and is represented by its member closest to
    the printed profile. Raises NoProfileMatches when nothing survives and
    AmbiguousProfile when inequivalent profiles survive.
    """
    report = calibration_report(corpus, max_dim_oracle, profiles, backend)
    if not report.matching:
        raise NoProfileMatches("NoProfileMatches: no profile reproduces the oracle", report)
    first = report.matching[0]
    if not all(first.equivalent(p) for p in report.matching):
        labels = ", ".join(p.label for p in report.matching)
        raise AmbiguousProfile(f"AmbiguousProfile: {len(report.matching)} profiles match ({labels})", report)
    order = ConventionProfile.all()
    report.chosen = min(report.matching, key=lambda p: (p.distance(PRINTED), order.index(p)))
    return report


def calibrate(corpus, max_dim_oracle=3, profiles=None, backend="auto"):
    return run_calibration(corpus, max_dim_oracle, profiles, backend).chosen

