import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toric_ehrhart import ehrhart as eh
from toric_ehrhart import simplex as sx
from toric_ehrhart.conegrp import Cone, cone_group
from toric_ehrhart.corpus import (
    default_corpus,
    random_simplex,
    random_unimodular,
    reeve,
    segment,
    standard_simplex,
)
from toric_ehrhart.cycser import TruncSeries
from toric_ehrhart.errors import AmbiguousProfile, FaceDependence, NoProfileMatches
from toric_ehrhart.ehrhart import Assembly, BPower, ConventionProfile, Degree
from toric_ehrhart.intlat import VolumeConvention
from toric_ehrhart.simplex import Face, Simplex

F = Fraction
HALF = ConventionProfile(u_scale=F(1, 2))
HALF_NONE = ConventionProfile(u_scale=F(1, 2), b_power=BPower.NONE)

# brute-force counts interpolated once and frozen
KNOWN = {
    "reeve_3": (1, F(3, 2), 1, F(1, 2)),
    "reeve_5": (1, F(7, 6), 1, F(5, 6)),
    "tetra_singular": (1, F(3, 2), F(3, 2), 3),
    "triangle_1_3": (1, F(5, 2), F(3, 2)),
    "triangle_skew": (1, F(3, 2), F(5, 2)),
}


def test_profile_space():
    profiles = ConventionProfile.all()
    assert len(profiles) == len(set(profiles)) == 48
    assert eh.PRINTED == ConventionProfile(VolumeConvention.LATTICE, 1, BPower.DENOM, Degree.ASCENDING, Assembly.FACE_PAIRS)
    for p in profiles:
        assert ConventionProfile.from_dict(p.to_dict()) == p
    with pytest.raises(ValueError):
        ConventionProfile(u_scale=F(1, 3))


def test_profile_equivalence_is_exact():
    a = ConventionProfile(u_scale=1, b_power=BPower.DENOM, degree=Degree.COMPLEMENT)
    b = ConventionProfile(u_scale=F(1, 2), b_power=BPower.NONE, degree=Degree.COMPLEMENT)
    assert a.equivalent(b)
    assert not eh.PRINTED.equivalent(HALF_NONE)
    for p in ConventionProfile.all():
        for q in ConventionProfile.all():
            if p.equivalent(q):
                for name, S in default_corpus()[:8]:
                    assert eh.ehrhart_polynomial(S, p).coeffs == eh.ehrhart_polynomial(S, q).coeffs


def test_omega_examples():
    S = segment(7)
    assert eh.omega(S, Face((0, 1)), eh.PRINTED) == TruncSeries.one(1)
    assert eh.omega(S, Face((0,)), eh.PRINTED) == TruncSeries([0, 1])
    assert eh.omega(S, Face((0,)), HALF) == TruncSeries([0, F(1, 2)])
    T = standard_simplex(2)
    assert eh.omega(T, Face((0,)), eh.PRINTED) == TruncSeries([0, 0, 1])
    assert eh.omega(T, Face((0,)), HALF) == TruncSeries([0, 0, F(1, 4)])


def test_character_sum_examples():
    smooth = cone_group(Cone([(1, 0), (0, 1)]))
    assert eh.character_sum(smooth, [2, 3], eh.PRINTED, 4) == TruncSeries.zero(4)
    G = cone_group(Cone([(1, 0), (1, 2)]))
    for s in (F(1), F(1, 2)):
        p = ConventionProfile(u_scale=s)
        got = eh.character_sum(G, [2, 3], p, 3)
        assert got == TruncSeries([0, 0, s * s * 6, 0])
    assert eh.character_sum(cone_group(Cone(())), [], eh.PRINTED, 2) == TruncSeries.one(2)
    # the full sum over a smooth cone is the identity term
    assert eh.character_sum(smooth, [2, 3], eh.PRINTED, 2, support="full") == TruncSeries.one(2)


def test_segment_coefficients():
    S = segment(5)
    assert eh.a_coefficients(S, eh.PRINTED) == (1, 2)
    assert eh.a_coefficients(S, HALF) == (1, 1)
    assert eh.b_coefficients(S, eh.PRINTED) == (F(1, 2), 5)
    assert eh.b_coefficients(S, ConventionProfile(b_power=BPower.NONE)) == (1, 5)
    assert eh.ehrhart_polynomial(S, HALF_NONE).coeffs == (1, 5)
    assert eh.ehrhart_polynomial(S, eh.PRINTED).coeffs == (F(1, 2), 10)
    assert eh.ehrhart_polynomial(S).coeffs == (1, 5)


def test_a0_independent_of_u_scale():
    for name, S in default_corpus():
        assert eh.a_coefficients(S, eh.PRINTED)[0] == eh.a_coefficients(S, HALF)[0]


def test_b_top_is_volume():
    for name, S in default_corpus():
        for vol in VolumeConvention:
            p = ConventionProfile(volume=vol)
            assert eh.b_coefficients(S, p)[-1] == sx.face_volume(S, Face(tuple(range(S.dim + 1))), vol)


def test_standard_triangle():
    poly = eh.ehrhart_polynomial(standard_simplex(2))
    assert poly.coeffs == (1, F(3, 2), F(1, 2))
    assert [poly(k) for k in range(5)] == [1, 3, 6, 10, 15]
    assert poly.degree == 2 and poly.profile == eh.CALIBRATED


def test_known_polynomials():
    corpus = dict(default_corpus())
    for name, coeffs in KNOWN.items():
        assert eh.ehrhart_polynomial(corpus[name]).coeffs == coeffs


def test_printed_assembly_breaks_in_dimension_three():
    # the face-pair assembly agrees in dimension 2 but not on singular tetrahedra
    fixed = ConventionProfile(degree=Degree.COMPLEMENT)
    assert eh.ehrhart_polynomial(Simplex([(0, 0), (1, 0), (1, 3)]), fixed).coeffs == KNOWN["triangle_1_3"]
    assert eh.ehrhart_polynomial(reeve(3), fixed).coeffs[0] == F(4, 9)


def test_backends_agree():
    for name, S in default_corpus():
        a = eh.a_coefficients(S, backend="cyclotomic")
        assert a == eh.a_coefficients(S, backend="modular") == eh.a_coefficients(S)


def test_face_dependence_detected(monkeypatch):
    S = Simplex([(0, 0), (3, 0), (0, 2)])
    eh.simplex_data.cache_clear()
    real = sx.face_volume

    def skewed(T, E, convention=VolumeConvention.LATTICE):
        v = real(T, E, convention)
        return v * 2 if E == Face((0, 1)) else v

    monkeypatch.setattr(sx, "face_volume", skewed)
    with pytest.raises(FaceDependence):
        eh.b_coefficients(S)
    eh.simplex_data.cache_clear()


def test_calibration_examples():
    corpus = default_corpus()
    segments = [c for c in corpus if c[0].startswith("segment")]
    with pytest.raises(AmbiguousProfile) as info:
        eh.calibrate(segments)
    survivors = info.value.report.matching
    assert HALF_NONE in survivors and eh.PRINTED not in survivors
    assert {p.volume for p in survivors} == set(VolumeConvention)
    report = eh.run_calibration(corpus)
    assert report.chosen == eh.CALIBRATED
    assert all(p.equivalent(eh.CALIBRATED) for p in report.matching)
    with pytest.raises(NoProfileMatches):
        eh.calibrate(corpus, profiles=[eh.PRINTED, HALF_NONE])
    # the unit triangle alone pins the volume convention
    tri = [c for c in corpus if c[0] == "triangle_unit"]
    with pytest.raises(AmbiguousProfile) as info:
        eh.calibrate(tri)
    assert {p.volume for p in info.value.report.matching} == {VolumeConvention.LATTICE}


def test_printed_ratio_table_on_segments():
    report = eh.calibration_report([("segment_5", segment(5))], profiles=[eh.PRINTED])
    row = report.rows[0]
    assert row["coeffs"] == ["1/2", "10"] and row["ratios"] == ["1/2", "2"] and not row["match"]


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10**6))
def test_unimodular_invariance(n, seed):
    rng = random.Random(seed)
    S = random_simplex(n, rng, -3, 3)
    T = random_unimodular(n, rng)
    t = [rng.randint(-4, 4) for _ in range(n)]
    assert eh.ehrhart_polynomial(S.transformed(T, t)).coeffs == eh.ehrhart_polynomial(S).coeffs


def test_determinism():
    S = random_simplex(3, random.Random(11))
    first = eh.ehrhart_polynomial(S).to_dict()
    eh.simplex_data.cache_clear()
    assert eh.ehrhart_polynomial(S).to_dict() == first
