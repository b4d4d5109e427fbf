"""
Tests for the exact linear algebra behind the bounded-degree solvers
"""
import pytest
from sympy import Matrix, eye

from models.poly import parse, substitute_many, var
from utils.errors import NotShiftInvariant
from utils.linear import solve_linear_family, vandermonde_inverse, vandermonde_reduce


def test_vandermonde_inverse():
    nodes = Matrix(3, 3, lambda k, j: k ** j)
    assert vandermonde_inverse(2) * nodes == eye(3)


def test_reduce_shift_invariant():
    assert vandermonde_reduce(parse("l^2 + 1"), 2) == parse("l^2 + 1")
    assert vandermonde_reduce(parse("a*l + 3"), 0) == parse("a*l + 3")
    assert vandermonde_reduce(parse("0"), 1).is_zero()


def test_reduce_rejects_d_dependence():
    with pytest.raises(NotShiftInvariant):
        vandermonde_reduce(parse("d"), 1)
    with pytest.raises(NotShiftInvariant):
        vandermonde_reduce(parse("d*l - l^2"), 2)


def test_shift_invariant_family():
    d, lam = var("d"), var("l")
    basis = [parse("1"), d, lam, d * lam]
    solutions = solve_linear_family(basis, lambda g: substitute_many(g, {"d": d + lam}) - g, ["d", "l"])
    assert solutions == [parse("1"), lam]
