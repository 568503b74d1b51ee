import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_force_torsion
from pythec.curve import INFINITY, Curve, Point, SingularCurveError, integralize, scalar_mul
from pythec.families import Family, PythTriple, construct, enumerate_ppts
from pythec.torsion import (CertificateKind, NonPrimitiveTripleError, OrderVerdict, _integer_roots_monic_cubic,
                            certify_positive_rank, lemma2_nonintegrality_certificate, nagell_lutz_candidates,
                            nagell_lutz_torsion, point_order, remark_divisibility_certificate, torsion_points)

F = Fraction


def _pt(x, y):
    return Point(F(x), F(y))


def test_point_order_examples():
    assert point_order(Curve(0, -1, 0), _pt(0, 0)) == OrderVerdict.finite(2)
    assert point_order(Curve(0, 0, 1), _pt(2, 3)) == OrderVerdict.finite(6)
    assert point_order(Curve(0, 0, 1), INFINITY) == OrderVerdict.finite(1)
    v = point_order(Curve(0, -9, 25), Point(F(25, 9), F(125, 27)))
    assert v == OrderVerdict.infinite(CertificateKind.MAZUR_EXHAUSTION)
    assert str(v) == "InfiniteOrder(mazur_exhaustion)"
    assert str(OrderVerdict.finite(6)) == "FiniteOrder(6)"


def test_lemma2_certificate_examples():
    v = lemma2_nonintegrality_certificate(Curve(0, -9, 25), Point(F(25, 9), F(125, 27)))
    assert v == OrderVerdict.infinite(CertificateKind.NON_INTEGRAL_COORDINATES)
    v = lemma2_nonintegrality_certificate(Curve(0, -225, 64), Point(F(64, 225), F(512, 3375)))
    assert v.is_infinite
    assert lemma2_nonintegrality_certificate(Curve(0, -1, 0), _pt(1, 0)) is None
    with pytest.raises(ValueError):
        lemma2_nonintegrality_certificate(Curve(0, F(1, 4), 0), _pt(0, 0))


def test_lemma2_certificate_on_integral_model():
    inst = construct("F1", 2, "alpha")
    M = integralize(inst.curve)
    # (1, 5/4) maps to (64, 640): integral, so no verdict
    assert lemma2_nonintegrality_certificate(M, inst.points["R"]) is None
    assert point_order(inst.curve, inst.points["R"]).is_infinite


def test_nagell_lutz_examples():
    assert set(nagell_lutz_torsion(Curve(0, -1, 0))) == {INFINITY, _pt(0, 0), _pt(1, 0), _pt(-1, 0)}
    assert set(nagell_lutz_torsion(Curve(0, 0, 1))) == {
        INFINITY, _pt(-1, 0), _pt(0, 1), _pt(0, -1), _pt(2, 3), _pt(2, -3)}
    assert nagell_lutz_torsion(Curve(0, -225, 64)) == [INFINITY]
    assert nagell_lutz_torsion(Curve(0, -225, 64))[0] is INFINITY


def test_torsion_points_on_rational_curve():
    # y^2 = x^3 - x/16 is y^2 = x^3 - 4x scaled by u = 2
    pts = torsion_points(Curve(0, F(-1, 4), 0))
    assert set(pts) == {INFINITY, _pt(0, 0), _pt(F(1, 2), 0), _pt(F(-1, 2), 0)}


def _small_curves(count, seed=11):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        a2, a4, a6 = (rng.randint(-20, 20) for _ in range(3))
        try:
            out.append(Curve(a2, a4, a6))
        except SingularCurveError:
            continue
    # curves with nontrivial torsion so the comparison is not vacuous
    out += [Curve(0, -1, 0), Curve(0, 0, 1), Curve(1, -1, 0), Curve(0, 4, 0), Curve(-1, 0, 1)]
    return out


@pytest.mark.parametrize("E", _small_curves(20), ids=str)
def test_nagell_lutz_matches_brute_force(E):
    a2, a4, a6 = int(E.a2), int(E.a4), int(E.a6)
    got = nagell_lutz_torsion(E)
    assert set(got) - {INFINITY} == set(brute_force_torsion(a2, a4, a6, xrange=100))
    cands = set(nagell_lutz_candidates(E))
    for P in cands - set(got):
        assert point_order(E, P).is_infinite


def test_torsion_orders_match_pari(pari_reference):
    for entry in pari_reference["torsion_orders"]:
        E = Curve(*entry["curve"])
        assert len(nagell_lutz_torsion(E)) == entry["order"], entry


@given(st.integers(-60, 60), st.integers(-60, 60), st.integers(-60, 60))
def test_integer_roots_of_cubic(a, b, c):
    roots = _integer_roots_monic_cubic(a, b, c)
    bound = 1 + max(abs(a), abs(b), abs(c))
    assert roots == [x for x in range(-bound, bound + 1) if x**3 + a * x * x + b * x + c == 0]


@given(st.integers(-60, 60), st.integers(-60, 60), st.integers(-60, 60))
def test_integer_roots_of_factored_cubic(r, s, t):
    a, b, c = -(r + s + t), r * s + r * t + s * t, -r * s * t
    assert _integer_roots_monic_cubic(a, b, c) == sorted({r, s, t})


def test_remark_certificate_examples():
    v = remark_divisibility_certificate("F7", PythTriple(3, 4, 5))
    assert v == OrderVerdict.infinite(CertificateKind.Y_NOT_DIVIDING_D)
    assert remark_divisibility_certificate("F6", PythTriple(3, 4, 5)) is None
    assert remark_divisibility_certificate("F7", PythTriple(5, 12, 13)).is_infinite
    # swapping the legs makes b odd, which opens the F6 gate
    assert remark_divisibility_certificate("F6", PythTriple(4, 3, 5)).is_infinite
    with pytest.raises(NonPrimitiveTripleError):
        remark_divisibility_certificate("F7", PythTriple(6, 8, 10))
    with pytest.raises(ValueError):
        remark_divisibility_certificate("F1", PythTriple(3, 4, 5))


def _both_orientations(limit):
    for T in enumerate_ppts(limit):
        yield T
        yield PythTriple(T.b, T.a, T.c)


@pytest.mark.parametrize("fam", [Family.F6_frey_ac, Family.F7_frey_bc])
def test_remark_certificate_agrees_with_point_order(fam):
    conclusive = 0
    for T in _both_orientations(200):
        v = remark_divisibility_certificate(fam, T)
        if v is None:
            continue
        conclusive += 1
        inst = construct(fam, T)
        assert point_order(inst.curve, inst.points["P2"]).is_infinite
    assert conclusive > 0


def test_certify_examples():
    cert = certify_positive_rank("F1", (3, 4, 5))
    assert cert.witness == Point(F(25, 9), F(125, 27))
    assert cert.verdict == OrderVerdict.infinite(CertificateKind.NON_INTEGRAL_COORDINATES)
    assert cert.to_json() == {"family": "F1_a2c2", "triple": [3, 4, 5],
                              "witness": {"x": "25/9", "y": "125/27"},
                              "verdict": "infinite", "certificate": "non_integral_coordinates"}
    assert certify_positive_rank("F6", (3, 4, 5)).witness == Point(F(225, 16), F(3375, 64))
    cert = certify_positive_rank("F7", PythTriple(3, 4, 5))
    assert cert.witness == Point(F(400, 9), F(8000, 27)) and cert.verdict.is_infinite
    with pytest.raises(NonPrimitiveTripleError):
        certify_positive_rank("F1", (6, 8, 10))


@pytest.mark.parametrize("fam", list(Family))
def test_every_ppt_gets_a_certificate_and_verdicts_are_sound(fam):
    for T in enumerate_ppts(200):
        cert = certify_positive_rank(fam, T)
        E = construct(fam, T).curve
        assert E.contains(cert.witness)
        assert cert.verdict.is_infinite
        for n in range(1, 13):
            assert scalar_mul(E, n, cert.witness) is not INFINITY
