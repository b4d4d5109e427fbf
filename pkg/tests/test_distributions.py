"""
Tests for formal distributions, locality and the Fourier transform
"""
import pytest

from models.algebra import ConformalElement, LambdaValue, bracket
from models.distribution import Distribution2, LoopElement
from models.poly import parse
from models.report import IndexWindow
from utils.distributions import (
    as_scalar_polynomial, bracket_distributions, check_pairwise_local, decompose_local, delta_derivative,
    derivative_w, derive_bracket, fourier_lambda, is_local, locality_order, make_delta,
    make_L_distribution, multiply_by_z_minus_w_power, reconstruct, scale_distribution,
)
from utils.errors import RegionExhausted

BAND = IndexWindow.symmetric(8)


def _bracket(i, j, band=BAND):
    return bracket_distributions(make_L_distribution(i, band), make_L_distribution(j, band))


def _square_weighted_delta(band):
    """sum_i i^2 z^i w^{-i-1}"""
    ws = IndexWindow(-band.hi - 1, -band.lo - 1)
    coeffs = {(i, -i - 1): LoopElement.scalar(i * i) for i in band}
    return Distribution2(coeffs, (band, ws), (band, ws))


def test_delta_is_local_of_order_one():
    delta = make_delta(IndexWindow.symmetric(6))
    assert not is_local(delta, 0)
    assert is_local(delta, 1)
    assert locality_order(delta, 3) == 1


def test_fourier_transform_of_delta_is_one():
    delta = make_delta(IndexWindow.symmetric(6))
    assert as_scalar_polynomial(fourier_lambda(delta, 1)) == 1


def test_delta_expands_to_itself():
    components = decompose_local(make_delta(IndexWindow.symmetric(6)), 1)
    assert components[0].coeffs == {0: LoopElement.scalar(1)}
    assert components[1].is_zero()


def test_derivative_of_delta_expands_to_order_one():
    components = decompose_local(delta_derivative(1, IndexWindow.symmetric(6)), 2)
    assert components[0].is_zero()
    assert components[1].coeffs == {0: LoopElement.scalar(1)}
    assert components[2].is_zero()


def test_square_weighted_delta_needs_order_three():
    a = _square_weighted_delta(IndexWindow.symmetric(6))
    assert not is_local(a, 1)
    assert not is_local(a, 2)
    assert is_local(a, 3)
    assert locality_order(a, 3) == 3
    assert locality_order(a, 2) is None


def test_loop_bracket_is_local_of_order_two():
    a = _bracket(1, 2)
    assert not is_local(a, 1)
    assert is_local(a, 2)
    assert locality_order(a, 4) == 2


def test_delta_expansion_components():
    """c^0 = -d_w L_3(w), c^1 = -2 L_3(w), nothing above"""
    components = decompose_local(_bracket(1, 2), 2)
    L3 = make_L_distribution(3, BAND)
    assert components[0].agrees_with(scale_distribution(derivative_w(L3), -1))
    assert components[1].agrees_with(scale_distribution(L3, -2))
    assert components[2].is_zero()


@pytest.mark.slow
def test_every_small_pair_expands_like_cw():
    for i in range(-3, 4):
        for j in range(-3, 4):
            a = _bracket(i, j)
            assert locality_order(a, 3) == 2, (i, j)
            components = decompose_local(a, 2)
            target = make_L_distribution(i + j, BAND)
            assert components[0].agrees_with(scale_distribution(derivative_w(target), -1)), (i, j)
            assert components[1].agrees_with(scale_distribution(target, -2)), (i, j)
            assert components[2].is_zero(), (i, j)
            assert reconstruct(components, a) > 0


def test_derived_bracket_matches_cw(cw):
    for i in range(-3, 4):
        for j in range(-3, 4):
            expected = bracket(cw, ConformalElement.basis(i), ConformalElement.basis(j))
            assert derive_bracket(i, j, BAND) == expected, (i, j)


def test_derived_bracket_rendering():
    assert str(derive_bracket(1, 2, 8)) == "(-d - 2*l) L_3"
    assert derive_bracket(0, 0, 8) == LambdaValue({0: parse("-d - 2*l")})


def test_multiplying_by_z_minus_w_shrinks_validity():
    a = _bracket(0, 1)
    product = multiply_by_z_minus_w_power(a, 2)
    zs, ws = product.validity
    assert zs.lo == a.validity[0].lo + 2
    assert ws.lo == a.validity[1].lo + 2


def test_small_band_exhausts_region():
    with pytest.raises(RegionExhausted):
        is_local(_bracket(0, 1, IndexWindow(0, 0)), 2)


def test_pairwise_locality_of_the_family():
    report = check_pairwise_local([-1, 0, 1], 6, N=2)
    assert report.passed
    assert report.checked == 9
