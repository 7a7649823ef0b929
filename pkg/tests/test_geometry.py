# tests/test_geometry.py

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyharm.variational.errors import AdmissibilityError, DomainError
from polyharm.variational.geometry import (
    Bump,
    ModelPair,
    ProfileFamily,
    WarpFn,
    parse_bump,
    parse_warp,
    profile_jet,
    standard_bumps,
    warp_jet,
)


def test_identity_jet():
    assert warp_jet(WarpFn("identity"), 0.5, 3).coeffs == (0.5, 1.0, 0.0, 0.0)


def test_sine_jet_at_half_pi():
    assert warp_jet(WarpFn("sin"), math.pi / 2, 2).coeffs == pytest.approx([1.0, 0.0, -1.0], abs=1e-15)


def test_series_jet():
    assert warp_jet(WarpFn("series", (1.0,)), 0.1, 1).coeffs == pytest.approx([0.101, 1.03])


@given(st.floats(min_value=0.01, max_value=2.0))
def test_zero_series_matches_identity(rho):
    zero = WarpFn("series", (0.0, 0.0))
    assert zero.derivatives(rho, 5) == WarpFn("identity").derivatives(rho, 5)


def test_series_pole_conditions():
    derivs = WarpFn("series", (0.5, 0.25)).derivatives(0.0, 6)
    assert derivs[:3] == [0.0, 1.0, 0.0]
    assert derivs[3] == pytest.approx(3.0)
    assert derivs[4] == 0.0
    assert derivs[5] == pytest.approx(30.0)


@pytest.mark.parametrize("kind, rho", [("identity", 0.0), ("sin", math.pi), ("sinh", -0.1)])
def test_warp_jet_outside_interval(kind, rho):
    with pytest.raises(DomainError):
        warp_jet(WarpFn(kind), rho, 2)


def test_unknown_warp_kind():
    with pytest.raises(DomainError):
        WarpFn("cosh")


def test_model_pair_dimension():
    with pytest.raises(DomainError):
        ModelPair(1)
    model = ModelPair.ball_to_sphere(7)
    assert (model.f.kind, model.h.kind) == ("identity", "sin")


def test_constant_profile_jet():
    jet = ProfileFamily(math.pi / 3).jet(0.4, 3)
    assert jet.coeffs == pytest.approx([math.pi / 3, 0.0, 0.0, 0.0])


def test_bump_derivatives_at_zero():
    assert Bump(3).derivatives(0.0, 3) == pytest.approx([1.0, -3.0, 6.0])


def test_bump_vanishes_at_boundary_in_perturbation_ring():
    jet = profile_jet(ProfileFamily(0.5, Bump(3)), 1.0, 2, "perturbation")
    assert all(float(c.v1) == 0.0 for c in jet.coeffs)
    assert all(c.v2 == 0.0 for c in jet.coeffs)


def test_family_shift_in_double_ring():
    jet = ProfileFamily(0.5, Bump(2)).jet(0.0, 1, "double", s=0.1)
    assert jet.coeffs == pytest.approx([0.6, -0.2])


def test_admissibility_gate():
    Bump(5).require_admissible(5)
    with pytest.raises(AdmissibilityError):
        Bump(3).require_admissible(5)


def test_standard_bumps_are_admissible():
    assert all(b.is_admissible(4) for b in standard_bumps(4))
    assert len({b.label() for b in standard_bumps(4)}) == 3


def test_proper_profile():
    ProfileFamily(0.7).require_proper()
    for a in (0.0, math.pi / 2, 2.0):
        with pytest.raises(DomainError):
            ProfileFamily(a).require_proper()
    with pytest.raises(DomainError):
        ProfileFamily(0.0, slope=1.0).require_proper()


def test_constant_profile_range():
    ProfileFamily(2.0)
    with pytest.raises(DomainError):
        ProfileFamily(math.pi)


def test_vectorized_base():
    base = np.array([0.3, 0.6])[:, None]
    jet = ProfileFamily(base).jet(np.array([0.1, 0.2, 0.3]), 2)
    assert np.shape(jet.value) == (2, 3)


@pytest.mark.parametrize("text, expected", [
    ("bump:(1-rho)^3", Bump(3)),
    ("(1 - rho)^7", Bump(7)),
    ("bump:rho(1-rho)^4", Bump(4, power_at_zero=1)),
    ("bump:rho^2*(1-rho)^5", Bump(5, power_at_zero=2)),
])
def test_parse_bump(text, expected):
    assert parse_bump(text) == expected


def test_parse_bump_rejects_garbage():
    with pytest.raises(DomainError):
        parse_bump("bump:rho^2")


def test_parse_warp():
    assert parse_warp("sinh") == WarpFn("sinh")
    assert parse_warp("series:b3=0.5,b7=1").coefficients == (0.5, 0.0, 1.0)
    with pytest.raises(DomainError):
        parse_warp("series:b4=1")
    with pytest.raises(DomainError):
        parse_warp("cosh")
