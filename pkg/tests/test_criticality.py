# tests/test_criticality.py

import math

import pytest
import sympy

from polyharm.variational.criticality import (
    conjecture_angle,
    criticality_polynomial,
    dimension_scan,
    find_critical_angles,
    first_variation,
    reference_angles,
    sobolev_check,
    verify_conjecture,
)
from polyharm.variational.energy import EnergySpec
from polyharm.variational.errors import AdmissibilityError, DomainError
from polyharm.variational.geometry import Bump

from .conftest import A3, A4, A5


@pytest.mark.parametrize("r, n, a, bump", [
    (2, 5, math.pi / 3, Bump(3)),
    (2, 5, math.pi / 3, Bump(2, power_at_zero=1)),
    (3, 7, A3, Bump(3)),
    (3, 7, A3, Bump(4)),
])
def test_first_variation_vanishes_at_critical_angles(ball, r, n, a, bump):
    assert abs(first_variation(a, bump, ball(n), EnergySpec(r)).value) <= 1e-9


def test_first_variation_at_noncritical_angle(ball):
    assert abs(first_variation(math.pi / 4, Bump(3), ball(7), EnergySpec(3)).value) > 1e-3


def test_first_variation_requires_admissible_bump(ball):
    with pytest.raises(AdmissibilityError):
        first_variation(0.5, Bump(2), ball(7), EnergySpec(3))


def test_first_variation_requires_proper_angle(ball):
    with pytest.raises(DomainError):
        first_variation(math.pi / 2, Bump(3), ball(7), EnergySpec(3))


@pytest.mark.parametrize("r, n, expected", [
    (2, 5, [math.pi / 3]),
    (2, 6, [0.5 * math.acos(-4 / 5)]),
    (3, 7, [A3]),
    (3, 8, []),
    (4, 9, [A4]),
])
def test_find_critical_angles(run, r, n, expected):
    records = find_critical_angles(r, n, run=run)
    assert [rec.a for rec in records] == pytest.approx(expected, abs=1e-8)
    for rec in records:
        assert rec.sobolev_ok
        assert rec.tag == f"critical-angle:r{r}-n{n}"
        assert len(rec.normalized_residuals) == 3
        assert rec.absolute_residuals.keys() == rec.normalized_residuals.keys()
        assert max(rec.normalized_residuals.values()) <= rec.tolerance
        assert rec.closed_form_deviation <= 1e-8


def test_es_variant_finds_same_angle(run):
    records = find_critical_angles(4, 9, "es", run=run)
    assert [rec.a for rec in records] == pytest.approx([A4], abs=1e-8)


@pytest.mark.parametrize("r, n, a", [(2, 5, math.pi / 3), (3, 7, A3)])
def test_absolute_residuals_vanish(run, r, n, a):
    [record] = find_critical_angles(r, n, run=run)
    assert record.a == pytest.approx(a, abs=1e-8)
    assert max(record.absolute_residuals.values()) <= 1e-8


@pytest.mark.slow
def test_es_variant_finds_same_angle_fifth_order(run):
    standard = find_critical_angles(5, 11, run=run)
    es = find_critical_angles(5, 11, "es", run=run)
    assert [rec.a for rec in es] == pytest.approx([rec.a for rec in standard], abs=1e-10)
    assert [rec.a for rec in es] == pytest.approx([A5], abs=1e-8)


def test_below_sobolev_threshold_is_empty(run):
    assert find_critical_angles(3, 6, run=run) == []


def test_dimension_scan_range_checked(run):
    with pytest.raises(DomainError):
        dimension_scan(3, 6, 8, run=run)
    with pytest.raises(DomainError):
        dimension_scan(3, 7, 41, run=run)


@pytest.mark.slow
@pytest.mark.parametrize("r, n_max, expected", [(2, 20, {5, 6}), (3, 20, {7}), (4, 20, {9}), (5, 20, {11})])
def test_dimension_scan(run, r, n_max, expected):
    found = dimension_scan(r, 2 * r + 1, n_max, run=run)
    assert {n for n, records in found.items() if records} == expected


@pytest.mark.slow
def test_dimension_scan_r5_angle(run):
    records = dimension_scan(5, 11, 11, run=run)[11]
    assert [rec.a for rec in records] == pytest.approx([A5], abs=1e-8)


def test_trienergy_polynomial():
    report = criticality_polynomial(3, 7)
    assert report.coefficients == [108, 24, -12]
    assert report.roots == pytest.approx([(math.sqrt(10) - 1) / 9])
    assert report.angles == pytest.approx([A3])


def test_trienergy_polynomial_has_no_root_beyond_eight():
    assert criticality_polynomial(3, 9).roots == []
    assert criticality_polynomial(3, 8).roots == []


def test_bienergy_polynomial():
    report = criticality_polynomial(2, 5)
    assert report.coefficients == [8, -2]
    assert report.angles == pytest.approx([math.pi / 3])
    assert criticality_polynomial(2, 7).roots == []


def test_fifth_order_polynomial():
    report = criticality_polynomial(5, 11)
    assert report.value_at_zero < 0 < report.value_at_one
    assert len(report.roots) == 1
    assert report.angles == pytest.approx([A5])


def test_polynomial_unknown_order():
    with pytest.raises(DomainError):
        criticality_polynomial(4, 9)


def test_exact_roots_with_sympy():
    x = sympy.symbols("x")
    tri = sympy.Poly(criticality_polynomial(3, 7).coefficients, x)
    assert sympy.simplify(tri.as_expr().subs(x, (sympy.sqrt(10) - 1) / 9)) == 0
    cubic = 5000 * x ** 3 + 9800 * x ** 2 + 1040 * x - 720
    assert sympy.expand(cubic.subs(x, (3 * sympy.sqrt(6) - 2) / 25)) == 0
    quintic = sympy.Poly(criticality_polynomial(5, 11).coefficients, x)
    assert sympy.rem(quintic, sympy.Poly(cubic, x)).is_zero


@pytest.mark.parametrize("r, argument", [
    (2, -0.5),
    (4, (math.sqrt(105) - 19) / 16),
    (5, (6 * math.sqrt(6) - 29) / 25),
])
def test_conjecture_angle(r, argument):
    record = conjecture_angle(r)
    assert record.n == 2 * r + 1
    assert record.argument == pytest.approx(argument)
    assert record.a == pytest.approx(0.5 * math.acos(argument))


def test_conjecture_reproduces_bienergy_angle():
    assert conjecture_angle(2).a == pytest.approx(math.pi / 3)
    assert conjecture_angle(3).a == pytest.approx(A3)


@pytest.mark.slow
@pytest.mark.parametrize("r", [6, 7, 8])
def test_verify_conjecture(run, r):
    record = verify_conjecture(r, run=run)
    assert record.deviation is not None
    assert record.deviation <= 1e-7
    assert record.roots_found == 1


def test_reference_angles():
    assert reference_angles(3, 7) == pytest.approx([A3])
    assert reference_angles(2, 6) == pytest.approx([0.5 * math.acos(-0.8)])


@pytest.mark.parametrize("r, n, member", [(3, 7, True), (3, 6, False), (2, 5, True), (2, 4, False), (5, 11, True)])
def test_sobolev_membership(r, n, member):
    report = sobolev_check(r, n)
    assert report.member is member
    assert all(c.passed == (c.exponent > -1) for c in report.constraints)


@pytest.mark.parametrize("r", range(2, 9))
def test_sobolev_threshold(r):
    assert sobolev_check(r, 2 * r + 1).member
    assert not sobolev_check(r, 2 * r).member


@pytest.mark.parametrize("r", range(2, 9))
@pytest.mark.parametrize("n", range(3, 26))
def test_sobolev_truth_table(r, n):
    assert sobolev_check(r, n).member is (n >= 2 * r + 1)
