"""
Graded Lie conformal algebras presented by structure polynomials, and the
lambda-bracket calculus on their elements.
"""
from dataclasses import dataclass, field
from typing import Callable

from models.poly import MultiPoly, substitute_many, var

D, LAM = "d", "l"


class Combination:
    """Finite sum  sum_i p_i * X_i  with polynomial coefficients; zero terms dropped."""

    symbol = "X"

    def __init__(self, terms=None):
        cleaned = {}
        for index, coeff in (terms or {}).items():
            coeff = coeff if isinstance(coeff, MultiPoly) else MultiPoly.const(coeff)
            if not coeff.is_zero():
                cleaned[index] = coeff
        self.terms = dict(sorted(cleaned.items()))

    @classmethod
    def basis(cls, index, coeff=None):
        return cls({index: MultiPoly.one() if coeff is None else coeff})

    @classmethod
    def zero(cls):
        return cls()

    def is_zero(self):
        return not self.terms

    def support(self):
        return list(self.terms)

    def coefficient(self, index):
        return self.terms.get(index, MultiPoly.zero())

    def map_coefficients(self, fn):
        return type(self)({index: fn(coeff) for index, coeff in self.terms.items()})

    def substitute(self, mapping):
        return self.map_coefficients(lambda p: substitute_many(p, mapping))

    def __add__(self, other):
        result = dict(self.terms)
        for index, coeff in other.terms.items():
            result[index] = result.get(index, MultiPoly.zero()) + coeff
        return type(self)(result)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.map_coefficients(lambda p: -p)

    def scale(self, factor):
        return self.map_coefficients(lambda p: p * factor)

    def __eq__(self, other):
        if isinstance(other, Combination):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({coeff}) {self.symbol}_{index}" for index, coeff in self.terms.items())

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class ConformalElement(Combination):
    """Element sum_i h_i(d) L_i of the algebra."""

    symbol = "L"

    def derive(self):
        """The element d * x."""
        return self.scale(var(D))


class LambdaValue(Combination):
    """Element of A[lambda]: coefficients are polynomials in (d, bracket variable)."""

    symbol = "L"


BracketRule = Callable[[int, int], list]


@dataclass(frozen=True)
class GradedConformalAlgebra:
    """[L_i _lambda L_j] = sum_k P(d, l) L_k as produced by bracket_rule(i, j)."""
    name: str
    bracket_rule: BracketRule
    grading_offsets: frozenset = field(default_factory=lambda: frozenset({0}))

    def basis_bracket(self, i, j, lam=LAM):
        """LambdaValue of [L_i _lam L_j]."""
        terms = {}
        for k, poly in self.bracket_rule(i, j):
            if lam != LAM:
                poly = substitute_many(poly, {LAM: var(lam)})
            terms[k] = terms.get(k, MultiPoly.zero()) + poly
        return LambdaValue(terms)


def bracket(alg, x, y, lam=LAM):
    """[x _lam y] by sesquilinear extension of the basis rule.

    [f(d) L_i _lam g(d) L_j] = f(-lam) g(d + lam) [L_i _lam L_j]. Coefficients may
    carry other variables as constants, but never the bracket variable itself.
    """
    lam_poly = var(lam)
    result = LambdaValue()
    for i, f in x.terms.items():
        left = substitute_many(f, {D: -lam_poly})
        for j, g in y.terms.items():
            right = substitute_many(g, {D: var(D) + lam_poly})
            factor = left * right
            result = result + alg.basis_bracket(i, j, lam).scale(factor)
    return result


def bracket_shifted(alg, x, y, shift, fresh="n"):
    """[x _{shift} y] for a composite bracket variable such as l + m.

    The bracket is evaluated in a fresh variable and the shift substituted
    afterwards, so no variable of x, y or shift is captured.
    """
    value = bracket(alg, x, y, fresh)
    return value.substitute({fresh: shift})
