"""
Truncated formal distributions with coefficients in the loop Virasoro algebra.

Coefficients are LoopElements: finite rational combinations of basis symbols
L_{alpha,i}, plus a scalar sentinel so that delta-type distributions share the
same representation. Every distribution carries the band it stores and the
validity region on which its coefficients are exact.
"""
from dataclasses import dataclass, field

from sympy import Rational

from models.report import IndexWindow

SCALAR = "1"


class LoopElement:
    """sum q_{alpha,i} L_{alpha,i} (+ q * 1 for the scalar sentinel)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {key: Rational(q) for key, q in (terms or {}).items() if q}

    @classmethod
    def basis(cls, alpha, i, q=1):
        return cls({(alpha, i): q})

    @classmethod
    def scalar(cls, q=1):
        return cls({SCALAR: q})

    def is_zero(self):
        return not self.terms

    def is_scalar(self):
        return all(key == SCALAR for key in self.terms)

    def loop_degrees(self):
        return {key[1] for key in self.terms if key != SCALAR}

    def component(self, i):
        """Part supported on loop degree i."""
        return LoopElement({key: q for key, q in self.terms.items() if key != SCALAR and key[1] == i})

    def __add__(self, other):
        result = dict(self.terms)
        for key, q in other.terms.items():
            result[key] = result.get(key, 0) + q
        return LoopElement(result)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, q):
        return LoopElement({key: value * q for key, value in self.terms.items()})

    def bracket(self, other):
        """Bilinear extension of [L_{a,i}, L_{b,j}] = (b - a) L_{a+b,i+j}; scalars are central."""
        result = {}
        for left, p in self.terms.items():
            if left == SCALAR:
                continue
            for right, q in other.terms.items():
                if right == SCALAR:
                    continue
                (a, i), (b, j) = left, right
                key = (a + b, i + j)
                result[key] = result.get(key, 0) + (b - a) * p * q
        return LoopElement(result)

    def __eq__(self, other):
        if isinstance(other, LoopElement):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=lambda k: (k == SCALAR, k if k != SCALAR else (0, 0))):
            q = self.terms[key]
            symbol = "1" if key == SCALAR else f"L[{key[0]},{key[1]}]"
            parts.append(f"{q}*{symbol}")
        return " + ".join(parts)

    __repr__ = __str__


ZERO = LoopElement()


@dataclass
class Distribution1:
    """sum_n c_n w^n over a band of exponents; exact on validity."""
    coeffs: dict
    band: IndexWindow
    validity: IndexWindow

    def __post_init__(self):
        self.coeffs = {n: c for n, c in self.coeffs.items() if not c.is_zero()}

    def coefficient(self, n):
        return self.coeffs.get(n, ZERO)

    def is_zero(self):
        return not self.coeffs

    def loop_degrees(self):
        degrees = set()
        for c in self.coeffs.values():
            degrees |= c.loop_degrees()
        return degrees

    def agrees_with(self, other, region=None):
        """Coefficient equality on a region (default: both validity regions)."""
        region = region or IndexWindow(max(self.validity.lo, other.validity.lo),
                                       min(self.validity.hi, other.validity.hi))
        return all(self.coefficient(n) == other.coefficient(n) for n in region)


@dataclass
class Distribution2:
    """sum_{m,n} c_{m,n} z^m w^n; band and validity are (z-range, w-range) rectangles."""
    coeffs: dict
    band: tuple
    validity: tuple
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {mn: c for mn, c in self.coeffs.items() if not c.is_zero()}

    def coefficient(self, m, n):
        return self.coeffs.get((m, n), ZERO)

    def is_zero(self):
        return not self.coeffs

    def valid_points(self):
        zs, ws = self.validity
        for m in zs:
            for n in ws:
                yield m, n

    def region_is_empty(self):
        zs, ws = self.validity
        return zs.is_empty() or ws.is_empty()
