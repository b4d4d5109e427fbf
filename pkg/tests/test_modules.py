"""
Tests for the module families, the module axiom and basis changes
"""
from fractions import Fraction

import pytest

from models.algebra import ConformalElement
from models.module import GRADED_SEQUENCE, GRADED_UNIFORM, RANK_ONE, TRIVIAL, ModuleDescriptor, ModuleElement
from models.poly import MultiPoly, parse
from models.report import IndexWindow
from utils.classifier import identify_rank_one
from utils.errors import BadSequence, WindowExceeded, ZeroParameter, ZeroScale
from utils.modules import (
    act, act_shifted, change_basis, check_module, check_module_axiom, check_sesquilinearity_action,
    descriptor_for, instantiate, is_trivial, make_trivial, make_V_ab, make_V_abc, make_V_Ab,
    same_table, with_entry,
)


def _rational(rng):
    return Fraction(rng.randint(-9, 9), rng.randint(1, 4))


def _scales(rng, window):
    return {k: Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3)) for k in window}


def test_rank_one_action():
    mod = make_V_abc(2, 1, 3)
    assert mod.f(2, 0) == parse("9*(2*l + 1 - d)")
    assert mod.f(-1, 0) == parse("1/3*(2*l + 1 - d)")
    assert mod.target(5, 0) == 0
    symbolic = make_V_abc()
    assert symbolic.f(-2, 0) == parse("cinv^2*(a*l + b - d)")


def test_rank_one_needs_nonzero_c():
    with pytest.raises(ZeroParameter):
        make_V_abc(1, 0, 0)


def test_symbolic_rank_one_module_passes(cw, window):
    report = check_module(cw, make_V_abc(), window)
    assert report.passed
    assert report.checked == 25


def test_graded_uniform_module_passes(cw, window):
    report = check_module(cw, make_V_ab("a", "b", window), window)
    assert report.passed
    coverage = report.details["coverage"]
    assert coverage["checked"] > 0
    assert coverage["skipped"] > 0
    assert coverage["checked"] + coverage["skipped"] == 125


@pytest.mark.slow
def test_random_sequence_modules_pass(cw, rng):
    window = IndexWindow.symmetric(4)
    for _ in range(50):
        A = {k: rng.choice([0, -1]) for k in window}
        b = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        assert check_module(cw, make_V_Ab(A, b, window), window).passed, (A, b)


@pytest.mark.slow
def test_random_rank_one_modules(cw, rng, window):
    for _ in range(20):
        a, b = _rational(rng), _rational(rng)
        c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
        mod = make_V_abc(a, b, c, algebra_window=window)
        assert check_module(cw, mod, window).passed, (a, b, c)
        assert identify_rank_one(mod, window) == descriptor_for(RANK_ONE, a=a, b=b, c=c)


def test_sequence_cases():
    mod = make_V_Ab([0, -1, 0], b=0)
    assert mod.window == IndexWindow.symmetric(1)
    assert mod.f(0, 0) == parse("-d - l")
    assert mod.f(0, 1) == parse("-d")
    assert mod.f(1, -1) == MultiPoly.const(-1)
    assert mod.f(-1, 0) == parse("-d*(d + l)")


def test_bad_sequences():
    with pytest.raises(BadSequence):
        make_V_Ab([0, 2, 0])
    with pytest.raises(BadSequence):
        make_V_Ab([0, -1])
    with pytest.raises(BadSequence):
        make_V_Ab({0: 0, 2: -1})
    with pytest.raises(BadSequence):
        make_V_Ab([0, -1, 0], window=IndexWindow.symmetric(2))


def test_edited_entry_breaks_the_axiom(cw, window):
    mod = make_V_ab("a", "b", window)
    mutant = with_entry(mod, 0, 0, mod.f(0, 0) + 1)
    assert check_module(cw, mod, window).passed
    assert not check_module(cw, mutant, window).passed


def test_axiom_outside_window_is_refused(cw, window):
    with pytest.raises(WindowExceeded):
        check_module_axiom(cw, make_V_ab("a", "b", window), 2, 2, 0)


def test_action_is_sesquilinear():
    mod = make_V_ab(Fraction(1, 2), 3)
    x = ConformalElement.basis(1, parse("d^2 + 1"))
    v = ModuleElement.basis(-1, parse("d - 2"))
    assert check_sesquilinearity_action(mod, x, v).passed


def test_act_on_basis():
    mod = make_V_ab(1, 0)
    value = act(mod, ConformalElement.basis(1), ModuleElement.basis(2))
    assert value == ModuleElement({3: parse("l - d")})


def test_act_shifted_substitutes_after_acting():
    mod = make_V_ab(1, 0)
    x = ConformalElement.basis(1, parse("d"))
    value = act_shifted(mod, x, ModuleElement.basis(2), parse("l + m"))
    assert value == ModuleElement({3: parse("-(l + m)*(l + m - d)")})
    assert act_shifted(mod, x, ModuleElement.basis(2), parse("l")) == act(mod, x, ModuleElement.basis(2))


def test_change_basis_rescales_coefficients():
    window = IndexWindow.symmetric(1)
    mod = make_V_ab(1, 0, window)
    scaled = change_basis(mod, {-1: 1, 0: 2, 1: 4})
    assert scaled.f(1, 0) == parse("1/2*(l - d)")
    assert scaled.f(-1, 1) == parse("2*(l - d)")
    assert same_table(change_basis(scaled, {-1: 1, 0: Fraction(1, 2), 1: Fraction(1, 4)}), mod)


@pytest.mark.slow
def test_change_basis_keeps_the_verdict(cw, rng, window):
    alternating = {k: 0 if k % 2 == 0 else -1 for k in window}
    for mod in (make_V_ab(Fraction(1, 2), 3, window), make_V_Ab(alternating, -1, window)):
        mutant = with_entry(mod, 0, 0, mod.f(0, 0) + 1)
        for _ in range(3):
            scales = _scales(rng, window)
            assert check_module(cw, change_basis(mod, scales), window).passed
            assert not check_module(cw, change_basis(mutant, scales), window).passed


def test_change_basis_rejects_zero_scale():
    window = IndexWindow.symmetric(1)
    with pytest.raises(ZeroScale):
        change_basis(make_V_ab(1, 0, window), {-1: 1, 0: 0, 1: 1})
    with pytest.raises(ZeroScale):
        change_basis(make_V_ab(1, 0, window), {0: 1})


def test_trivial_module(cw, window):
    mod = make_trivial(window)
    assert is_trivial(mod)
    assert check_module(cw, mod, window).passed
    assert not is_trivial(make_V_ab(0, 0, window))


def test_descriptor_labels():
    assert ModuleDescriptor(TRIVIAL).label() == "Trivial"
    assert descriptor_for(RANK_ONE, a="a", b="b", c="c").label() == "RankOne(a, b, c)"
    assert descriptor_for(GRADED_UNIFORM, a=Fraction(1, 2), b=0).label() == "GradedUniform(1/2, 0)"
    label = descriptor_for(GRADED_SEQUENCE, A={0: 0, 1: -1}, b=2).label()
    assert label == "GradedSequence({0: 0, 1: -1}, 2)"
    with pytest.raises(ValueError):
        ModuleDescriptor("nonsense")


def test_instantiate_round_trip(window):
    descriptor = descriptor_for(GRADED_SEQUENCE, A={k: (0 if k % 2 else -1) for k in window}, b=1)
    mod = instantiate(descriptor, window)
    expected = make_V_Ab({k: (0 if k % 2 else -1) for k in window}, 1, window)
    assert same_table(mod, expected)
    rank_one = instantiate(descriptor_for(RANK_ONE, a=1, b=0, c=1))
    assert same_table(rank_one, make_V_abc(1, 0, 1), window)
