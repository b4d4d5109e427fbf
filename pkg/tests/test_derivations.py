"""
Tests for conformal derivations and the inner-derivation extraction
"""
import pytest

from models.algebra import ConformalElement, LambdaValue
from models.derivation import ConformalDerivation, DegreeComponent, zero_derivation
from models.poly import MultiPoly, parse, var
from models.report import IndexWindow
from utils.derivations import (
    check_leibniz, check_leibniz_window, degree_components, extract_inner, inner,
    random_non_inner, verify_der_equals_inn,
)
from utils.errors import NotDivisible, WindowExceeded


def test_inner_derivation_values(cw):
    D = inner(cw, ConformalElement.basis(1, var("d")))
    assert D.on_basis(2) == LambdaValue({3: parse("l*(d + 2*l)")})
    assert D.support_bound == 1


def test_inner_derivations_satisfy_leibniz(cw, window):
    x = ConformalElement({1: parse("d^2 + 1"), -2: MultiPoly.const(3)})
    assert check_leibniz_window(cw, inner(cw, x), window).passed
    assert check_leibniz_window(cw, zero_derivation(), window).passed


def test_index_dependent_family_fails_leibniz(cw, window):
    D = ConformalDerivation(
        name="shift",
        action=lambda i: [(i, MultiPoly.const(i))],
        support_bound=0,
    )
    assert not check_leibniz(cw, D, 0, 1).passed
    assert not check_leibniz_window(cw, D, window).passed


def test_degree_components_split_by_offset(cw, window):
    x = ConformalElement({1: var("d"), -2: MultiPoly.const(3)})
    components = degree_components(inner(cw, x), window)
    assert [c.offset for c in components] == [-2, 1]
    assert components[1].f(0) == parse("l*(d + 2*l)")


def test_extract_inner_round_trip(cw, window):
    x = ConformalElement({1: parse("d^2 + 1"), -2: MultiPoly.const(3)})
    rebuilt = ConformalElement()
    for component in degree_components(inner(cw, x), window):
        rebuilt = rebuilt + extract_inner(cw, component, window, 4)
    assert rebuilt == x


def test_extract_inner_rejects_constant_family(cw, window):
    component = DegreeComponent(0, {i: MultiPoly.one() for i in window}, window)
    with pytest.raises(NotDivisible):
        extract_inner(cw, component, window, 3)


def test_support_bound_is_enforced():
    D = ConformalDerivation(name="wide", action=lambda i: [(i + 3, MultiPoly.one())], support_bound=1)
    with pytest.raises(ValueError):
        D.on_basis(0)


def test_component_outside_window():
    component = DegreeComponent(0, {0: MultiPoly.one()}, IndexWindow(0, 0))
    with pytest.raises(WindowExceeded):
        component.f(1)
    with pytest.raises(WindowExceeded):
        component.as_derivation().on_basis(1)


def test_random_non_inner_family_fails(cw, rng, window):
    for _ in range(5):
        assert not check_leibniz_window(cw, random_non_inner(rng), window).passed


@pytest.mark.slow
def test_der_equals_inn_campaign(cw, rng):
    report = verify_der_equals_inn(cw, IndexWindow.symmetric(4), 5, 100, rng)
    assert report.passed, report.failures
    assert report.details["counts"] == {"trials": 100, "inner_round_trips": 100, "non_inner_failures": 100}


def test_campaign_on_empty_window_is_vacuous(cw, rng):
    report = verify_der_equals_inn(cw, IndexWindow.empty(), 3, 5, rng)
    assert report.details["vacuous"]
    assert report.checked == 0
