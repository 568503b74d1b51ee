import csv
import decimal
import io
from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import exact_det
from pythec.curve import Curve, Point
from pythec.families import construct
from pythec.heights import Status, determinant, gram_matrix, regulator, reproduce_determinants
from pythec.heights.regulator import DEFAULT_EPSILON, independent_subset, leading_minors
from pythec.heights.reproduce import CLAIMS, CSV_COLUMNS, find_relation
from pythec.numeric import Real, decimal_context

F = Fraction
entries = st.fractions(min_value=-50, max_value=50, max_denominator=30)


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(entries, min_size=n, max_size=n),
                                                      min_size=n, max_size=n)))
def test_determinant_matches_exact_elimination(rows):
    M = [[Real.exact(q, 30) for q in row] for row in rows]
    det = determinant(M)
    assert det.contains(exact_det(rows))


def test_leading_minors():
    rows = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    M = [[Real.exact(v) for v in row] for row in rows]
    assert [float(m) for m in leading_minors(M)] == [2.0, 5.0, 18.0]


def _instance(fam, value, kind, names):
    inst = construct(fam, value, kind)
    return inst.curve, [inst.points[n] for n in names]


def test_alpha_2_regulator():
    E, pts = _instance("F1", 2, "alpha", ("P", "Q", "R"))
    rep = regulator(E, pts)
    assert abs(float(rep.det) - 73.3583597733868) < 1e-9
    assert rep.independent and rep.status is Status.INDEPENDENT
    assert rep.rank_lower_bound == 3 and rep.basis == [0, 1, 2]
    with decimal.localcontext(decimal_context(100)):
        for i in range(3):
            for j in range(3):
                assert abs(rep.gram[i][j].value - rep.gram[j][i].value) <= Decimal(10) ** -(rep.precision - 1)


def test_t1_regulator_on_p2_p3_p4():
    E, pts = _instance("F2", 1, "T", ("P2", "P3", "P4"))
    rep = regulator(E, pts)
    assert abs(float(rep.det) - 7.34210213314542) < 1e-9
    assert rep.rank_lower_bound == 3


def test_t1_p1_p2_p3_are_dependent():
    E, pts = _instance("F2", 1, "T", ("P1", "P2", "P3"))
    rep = regulator(E, pts)
    assert rep.status is Status.NOT_CERTIFIED
    assert rep.rank_lower_bound == 2
    with decimal.localcontext(decimal_context(100)):
        assert abs(rep.det.value) <= rep.det.error
    rel = find_relation(E, pts)
    assert rel is not None and any(rel)


def test_torsion_point_kills_independence():
    E = Curve(0, 0, 1)
    rep = regulator(E, [Point(F(2), F(3))])
    assert rep.det.value == 0 and not rep.independent and rep.rank_lower_bound == 0
    E2 = Curve(-1, 0, 1)  # (0, 1) has order 3 on y^2 = x^3 - x^2 + 1
    rep = regulator(E2, [E2.point(0, 1), E2.point(1, 1)])
    assert rep.status is Status.NOT_CERTIFIED


def test_indeterminate_when_epsilon_is_below_the_error():
    E, pts = _instance("F1", 2, "alpha", ("P", "Q", "R"))
    rep = regulator(E, pts, precision=20, epsilon="1e-25")
    assert rep.status is Status.INDETERMINATE and not rep.independent
    # smaller minors carry smaller errors and may still be certified
    assert rep.rank_lower_bound < 3


def test_greedy_basis_skips_dependent_points():
    E, pts = _instance("F2", 1, "T", ("P1", "P2", "P3", "P4"))
    rep = regulator(E, pts)
    assert rep.status is Status.NOT_CERTIFIED
    assert rep.basis == [0, 1, 3]
    G = gram_matrix(E, pts)
    assert independent_subset(G, DEFAULT_EPSILON) == [0, 1, 3]


def test_regulator_rejects_bad_input():
    E = Curve(0, -225, 64)
    with pytest.raises(ValueError):
        regulator(E, [])
    with pytest.raises(ValueError):
        regulator(E, [Point(F(1), F(1))])


def test_regulator_json():
    E, pts = _instance("F5", "7/29", "t", ("P3", "P4"))
    data = regulator(E, pts, precision=30).to_json()
    assert data["status"] == "independent" and data["independent"] is True
    assert data["epsilon"] == "1e-4" and data["precision"] == 30
    assert data["rank_lower_bound"] == 2 and data["basis"] == [0, 1]
    assert data["det"].startswith("13.2385415745155")
    assert len(data["gram"]) == 2 and data["curve"]["a2"] == "0"


def test_low_precision_still_matches():
    E, pts = _instance("F3", 10, "m", ("P2", "P3", "P4"))
    assert abs(float(regulator(E, pts, precision=30).det) - 105.429678471199) < 1e-9


@pytest.fixture(scope="module")
def report():
    return reproduce_determinants()


def test_reproduce_table(report):
    assert len(report.rows) == len(CLAIMS) == 9
    matches = {(r.claim.family, r.claim.points): r.match for r in report.rows}
    assert matches.pop(("F2_a2b2", ("P1", "P2", "P3"))) == "paper-inconsistent"
    assert set(matches.values()) == {"true"}
    assert report.ok and not report.failed


def test_reproduce_flags(report):
    by_points = {(r.claim.family, r.claim.points): r for r in report.rows}
    dep = by_points[("F2_a2b2", ("P1", "P2", "P3"))]
    assert "exact_dependence" in dep.flags and dep.notes
    for r in report.rows:
        if r.claim.family == "F3_b2a2":
            assert "curve_display_mismatch" in r.flags
            assert r.match == "true"


def test_reproduce_csv_and_json(report):
    rows = list(csv.reader(io.StringIO(report.to_csv())))
    assert rows[0] == CSV_COLUMNS
    assert len(rows) == 10
    u2 = [r for r in rows if r[1] == "u=2"]
    assert all(r[3] == "16.9957115044387" and r[6] == "true" for r in u2)
    data = report.to_json()
    assert data["ok"] is True and data["tolerance"] == "1e-6"
    assert data["calibration"]["normalization"] == "bsd"


def test_u2_third_point_set_is_also_independent():
    E, pts = _instance("F4", 2, "u", ("P1", "P3", "P4"))
    rep = regulator(E, pts)
    assert rep.independent and rep.det.is_certainly_nonzero()
