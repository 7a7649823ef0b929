# tests/test_jets.py

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyharm.variational.errors import ArityError, DomainError, SingularityError
from polyharm.variational.jets import Jet, Perturbation2, guarded_sqrt, jet_analytic, jet_binary, jet_shift

finite = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)
positive = st.floats(min_value=0.5, max_value=3.0)


def test_product_of_variable_jets():
    rho = Jet([2.0, 1.0, 0.0])
    assert (rho * rho).coeffs == (4.0, 4.0, 2.0)


def test_reciprocal_of_variable():
    inv = 1.0 / Jet.variable(1.0, 2)
    assert inv.coeffs == pytest.approx([1.0, -1.0, 2.0])


def test_zero_jet_annihilates():
    a = Jet([1.5, -2.0, 3.0])
    assert (a * Jet.constant(0.0, 2)).coeffs == (0.0, 0.0, 0.0)


def test_constant_jet_has_zero_tail():
    assert Jet.constant(3.0, 4).coeffs[1:] == (0.0,) * 4


@pytest.mark.parametrize("fn, value, expected", [
    ("sin", math.pi / 6, 0.5),
    ("sqrt", 4.0, 2.0),
])
def test_analytic_of_constant(fn, value, expected):
    out = jet_analytic(fn, Jet.constant(value, 3))
    assert out.value == pytest.approx(expected)
    assert out.coeffs[1:] == pytest.approx([0.0, 0.0, 0.0])


def test_sine_of_variable_at_zero():
    out = jet_analytic("sin", Jet.variable(0.0, 3))
    assert out.coeffs == pytest.approx([0.0, 1.0, 0.0, -1.0])


def test_shift():
    assert Jet([1.0, 2.0, 3.0]).shift().coeffs == (2.0, 3.0)
    assert Jet.constant(5.0, 2).shift().coeffs == (0.0, 0.0)
    cube = Jet([1.0, 3.0, 6.0, 6.0])
    assert cube.shift().shift().coeffs == (6.0, 6.0)


def test_jet_shift_drops_value():
    assert jet_shift(Jet([1.0, 2.0, 3.0])).coeffs == (2.0, 3.0)


def test_shift_of_order_zero_raises():
    with pytest.raises(ArityError):
        Jet([1.0]).shift()


def test_mixed_orders_truncate():
    out = Jet([1.0, 1.0, 1.0]) + Jet([1.0, 1.0])
    assert out.order == 1


def test_binary_requires_equal_orders():
    with pytest.raises(ArityError):
        jet_binary("+", Jet([1.0, 2.0]), Jet([1.0]))


def test_division_by_zero_value():
    with pytest.raises(SingularityError):
        Jet([1.0, 1.0]) / Jet([0.0, 1.0])
    with pytest.raises(ZeroDivisionError):
        Perturbation2(1.0) / Perturbation2(0.0, 1.0)


def test_sqrt_of_nonpositive_jet():
    with pytest.raises(DomainError):
        jet_analytic("sqrt", Jet([-1.0, 1.0]))


def test_guarded_sqrt():
    assert guarded_sqrt(-1e-16) == 0.0
    assert guarded_sqrt(4.0) == 2.0
    with pytest.raises(DomainError):
        guarded_sqrt(-1e-3)


def test_perturbation_product_rule():
    x = Perturbation2(1.0, 2.0, 0.0)
    y = Perturbation2(3.0, 4.0, 0.0)
    z = x * y
    assert (z.v0, z.v1, z.v2) == (3.0, 10.0, 16.0)


@given(finite, finite, finite, finite, finite, finite)
def test_perturbation_ring_laws(a0, a1, a2, b0, b1, b2):
    x = Perturbation2(a0, a1, a2)
    y = Perturbation2(b0, b1, b2)
    xy, yx = x * y, y * x
    assert (xy.v0, xy.v1, xy.v2) == pytest.approx((yx.v0, yx.v1, yx.v2))
    assert xy.v1 == pytest.approx(a1 * b0 + a0 * b1)
    s = x + y
    assert (s.v0, s.v1, s.v2) == pytest.approx((a0 + b0, a1 + b1, a2 + b2))


@given(positive, finite)
def test_perturbation_chain_rule_for_sine(x0, x1):
    out = Perturbation2(x0, x1, 0.0).sin()
    assert out.v0 == pytest.approx(math.sin(x0))
    assert out.v1 == pytest.approx(math.cos(x0) * x1)
    assert out.v2 == pytest.approx(-math.sin(x0) * x1 * x1, abs=1e-12)


@settings(max_examples=50)
@given(st.lists(finite, min_size=4, max_size=4), st.lists(positive, min_size=1, max_size=1),
       st.lists(finite, min_size=3, max_size=3))
def test_quotient_inverts_product(num, head, tail):
    a = Jet(num)
    b = Jet(head + tail)
    back = (a * b) / b
    assert back.coeffs == pytest.approx(a.coeffs, abs=1e-8, rel=1e-8)


@given(positive)
def test_integer_power_matches_repeated_product(x0):
    rho = Jet.variable(x0, 4)
    assert (rho ** 3).coeffs == pytest.approx((rho * rho * rho).coeffs)
    assert (rho ** 0.5).coeffs == pytest.approx(jet_analytic("sqrt", rho).coeffs)


def test_perturbation_jet_carries_slots():
    jet = Jet([Perturbation2(1.0, 1.0, 0.0), Perturbation2(0.0, 2.0, 0.0)])
    sq = jet * jet
    assert sq.coeffs[0].v1 == pytest.approx(2.0)
    assert sq.coeffs[1].v1 == pytest.approx(4.0)


def _sample(x: Jet) -> Jet:
    return jet_analytic("sin", x) * jet_analytic("sqrt", 1.0 + x * x) / (2.0 + x)


@pytest.mark.parametrize("rho0", [0.15, 0.4, 0.75])
def test_coefficients_match_central_differences(rho0):
    h = 1e-4
    jet = _sample(Jet.variable(rho0, 5))
    assert jet.value == pytest.approx(math.sin(rho0) * math.sqrt(1 + rho0 ** 2) / (2 + rho0), rel=1e-13)

    def central(k, step):
        return (_sample(Jet.variable(rho0 + step, 5))[k] - _sample(Jet.variable(rho0 - step, 5))[k]) / (2 * step)

    for k in range(5):
        estimate = (4 * central(k, h / 2) - central(k, h)) / 3
        assert jet[k + 1] == pytest.approx(estimate, rel=1e-6, abs=1e-9)
