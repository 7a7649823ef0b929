# tests/test_stability.py

import math

import pytest
from scipy.integrate import quad

from polyharm.variational.energy import EnergySpec
from polyharm.variational.errors import AdmissibilityError, DomainError
from polyharm.variational.geometry import Bump
from polyharm.variational.stability import (
    REFERENCE_CASES,
    calibration_constant,
    reference_stability_suite,
    second_variation,
    stability_case,
)

from .conftest import A5

CASE_NAMES = ["r3-n7", "r4-n9-std", "r4-n9-es", "r5-n11-std", "r5-n11-es"]


@pytest.mark.parametrize("name, value", [
    ("r3-n7", -11.0781),
    ("r4-n9-std", -118.393),
    ("r4-n9-es", -113.988),
    ("r5-n11-std", -100.476),
    ("r5-n11-es", -152.878),
])
def test_reference_values(name, value):
    assert REFERENCE_CASES[name].reference == pytest.approx(value, abs=1e-3)


def test_reference_cases_use_admissible_bumps():
    for case in REFERENCE_CASES.values():
        assert case.bump.is_admissible(case.r)
        assert 0 < case.a < math.pi / 2


def test_es_minus_standard_difference():
    diff = REFERENCE_CASES["r4-n9-std"].reference - REFERENCE_CASES["r4-n9-es"].reference
    assert diff == pytest.approx(-4.405, abs=1e-3)


def test_calibration_constant_is_one(run):
    assert calibration_constant(run) == pytest.approx(1.0, rel=1e-6)


def test_trienergy_case(run):
    [record] = reference_stability_suite(["r3-n7"], run=run)
    assert record.tag == "instability:r3-n7"
    assert record.second_variation == pytest.approx(-11.0781, abs=1e-3)
    assert abs(record.first_variation) <= 1e-8
    assert record.verdict == "unstable"
    assert record.ratio == pytest.approx(1.0, rel=1e-6)


@pytest.mark.slow
def test_full_suite(run):
    records = reference_stability_suite(CASE_NAMES, run=run)
    assert [rec.tag for rec in records] == [f"instability:{name}" for name in CASE_NAMES]
    calibration = {rec.calibration_constant for rec in records}
    assert len(calibration) == 1
    for rec in records:
        assert rec.verdict == "unstable"
        assert rec.second_variation < 0
        assert rec.ratio == pytest.approx(1.0, rel=1e-6)


def test_unknown_case(run):
    with pytest.raises(DomainError):
        reference_stability_suite(["r9-n19"], run=run)


def test_inadmissible_generic_case(run):
    with pytest.raises(AdmissibilityError):
        stability_case(5, 11, 0.5, Bump(3), run=run)


def test_noncritical_angle_is_inconclusive(run):
    record = stability_case(3, 7, 0.7, Bump(3), run=run)
    assert abs(record.first_variation) > 1e-8
    assert record.verdict == "inconclusive"


def test_second_variation_is_bump_scale_quadratic(ball):
    a = REFERENCE_CASES["r3-n7"].a
    base = second_variation(a, Bump(3), ball(7), EnergySpec(3)).value
    doubled = second_variation(a, Bump(3, scale=2.0), ball(7), EnergySpec(3)).value
    assert doubled == pytest.approx(4 * base, rel=1e-10)


def test_biharmonic_cases_are_unstable(run):
    records = reference_stability_suite(["r2-n5", "r2-n6"], run=run)
    assert [rec.verdict for rec in records] == ["unstable", "unstable"]
    assert all(rec.second_variation < 0 for rec in records)
    assert records[1].bump == "(1-rho)^3"
    assert records[1].second_variation == pytest.approx(-0.042857, abs=1e-5)


def _es5_correction(n: int, a: float, k: int, weight: float) -> float:
    # d²/ds² поправки ES-5 при α = a + s(1-ρ)^k, шар в сферу
    s, c = math.sin(a), math.cos(a)
    big_k = (n - 1) * s * c

    def integrand(rho):
        v1 = -k * (1 - rho) ** (k - 1)
        v2 = k * (k - 1) * (1 - rho) ** (k - 2)
        linear = s * (rho * v2 - 2 * v1) - (n - 3) * weight * v1
        cross = s * s * (3 * (n - 1) * c * c + 4 * n - 16) * v1 * v1
        return rho ** (n - 9) * (linear * linear + cross)

    value, _ = quad(integrand, 0.0, 1.0, epsabs=1e-14, epsrel=1e-13)
    return (n - 1) * big_k * big_k * value


@pytest.mark.slow
@pytest.mark.parametrize("drift", ["h2", "h1"])
def test_es5_correction_second_variation(ball, drift):
    weight = -math.sin(A5) if drift == "h2" else math.cos(A5)
    std = second_variation(A5, Bump(8), ball(11), EnergySpec(5)).value
    es = second_variation(A5, Bump(8), ball(11), EnergySpec(5, "es", drift)).value
    assert es - std == pytest.approx(_es5_correction(11, A5, 8, weight), rel=1e-8)


@pytest.mark.slow
def test_es5_drift_conventions_differ(ball):
    default = second_variation(A5, Bump(8), ball(11), EnergySpec(5, "es")).value
    reference = second_variation(A5, Bump(8), ball(11), EnergySpec(5, "es", "h1")).value
    assert default == pytest.approx(-313.098, abs=5e-3)
    assert reference == pytest.approx(REFERENCE_CASES["r5-n11-es"].reference, rel=1e-6)


@pytest.mark.slow
def test_es5_reference_case(run):
    [record] = reference_stability_suite(["r5-n11-es"], run=run)
    assert record.verdict == "unstable"
    assert record.ratio == pytest.approx(1.0, rel=1e-6)
