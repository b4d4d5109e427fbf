"""
Exact multivariate polynomials over the rationals.

Values live in a sympy sparse polynomial ring over QQ whose generators are the
operator variables d, l, m, n (standing for the derivation and the three
bracket variables) followed by the symbolic parameters. The parameter pair
c / cinv is kept reduced modulo c*cinv = 1 on every construction, so equality
of two MultiPoly values is equality of Laurent polynomials in c.
"""
import logging
import re
from fractions import Fraction

from sympy import Symbol, oo
from sympy.polys.domains import QQ
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyRing
from sympy.polys.orderings import grlex

from utils.errors import NotDivisible, NotInvertible, PolySyntaxError

logger = logging.getLogger(__name__)

OPERATOR_VARIABLES = ("d", "l", "m", "n")
DEFAULT_PARAMETERS = ("a", "b", "c", "cinv")

# Display aliases accepted by the parser
ALIASES = {"∂": "d", "λ": "l", "μ": "m", "ν": "n"}

UNIT = "c"
UNIT_INVERSE = "cinv"


class Registry:
    """Fixed set of indeterminates and the polynomial ring they generate."""

    def __init__(self, parameters=DEFAULT_PARAMETERS):
        params = []
        for name in parameters:
            if name in OPERATOR_VARIABLES or name in params:
                continue
            params.append(name)
        self.parameters = tuple(params)
        self.names = OPERATOR_VARIABLES + self.parameters
        self.ring = PolyRing([Symbol(name) for name in self.names], QQ, grlex)
        self._index = {name: i for i, name in enumerate(self.names)}

    def __contains__(self, name):
        return name in self._index

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"Unknown indeterminate: {name}") from None

    def gen(self, name):
        return self.ring.gens[self.index(name)]

    def is_operator(self, name):
        return name in OPERATOR_VARIABLES

    def unit_indices(self):
        """Indices of (c, cinv) when both are registered, else None."""
        if UNIT in self._index and UNIT_INVERSE in self._index:
            return self._index[UNIT], self._index[UNIT_INVERSE]
        return None


_registry = Registry()


def declare_parameters(*names):
    """Extend the session registry with extra parameter names; existing values are re-keyed lazily."""
    global _registry
    missing = [name for name in names if name not in _registry]
    for name in missing:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", name):
            raise ValueError(f"Invalid parameter name: {name!r}")
    if missing:
        _registry = Registry(_registry.parameters + tuple(missing))
        logger.debug("Registry extended with %s", ", ".join(missing))
    return _registry


def _to_qq(value):
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    return QQ.convert(value)


def _reduce_units(element):
    """Cancel c^m * cinv^n down to c^(m-n) or cinv^(n-m)."""
    pair = _registry.unit_indices() if element.ring == _registry.ring else None
    if pair is None:
        return element
    ci, ii = pair
    if not any(monom[ci] and monom[ii] for monom in element.keys()):
        return element
    terms = {}
    for monom, coeff in element.items():
        shift = min(monom[ci], monom[ii])
        if shift:
            monom = list(monom)
            monom[ci] -= shift
            monom[ii] -= shift
            monom = tuple(monom)
        terms[monom] = terms.get(monom, QQ.zero) + coeff
    return element.ring.from_dict({k: v for k, v in terms.items() if v})


def _element(value):
    """Coerce into an element of the current session ring."""
    ring = _registry.ring
    if isinstance(value, MultiPoly):
        element = value._p
        if element.ring != ring:
            element = element.set_ring(ring)
        return element
    return ring.ground_new(_to_qq(value))


class MultiPoly:
    """Immutable exact polynomial in canonical form."""

    __slots__ = ("_p",)

    def __init__(self, element=None):
        if element is None:
            element = _registry.ring.zero
        object.__setattr__(self, "_p", _reduce_units(element))

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # Constructors

    @classmethod
    def const(cls, value):
        return cls(_registry.ring.ground_new(_to_qq(value)))

    @classmethod
    def var(cls, name):
        name = ALIASES.get(name, name)
        return cls(_registry.gen(name))

    @classmethod
    def zero(cls):
        return cls(_registry.ring.zero)

    @classmethod
    def one(cls):
        return cls(_registry.ring.one)

    @classmethod
    def from_sympy(cls, expr):
        """Convert a sympy expression over the registered symbols."""
        return cls(_registry.ring.from_expr(expr))

    @classmethod
    def from_monomials(cls, terms):
        """Build from {((name, exponent), ...): coefficient}."""
        ring = _registry.ring
        result = {}
        for factors, coeff in terms.items():
            monom = [0] * ring.ngens
            for name, power in factors:
                monom[_registry.index(name)] += power
            key = tuple(monom)
            result[key] = result.get(key, QQ.zero) + _to_qq(coeff)
        return cls(ring.from_dict({k: v for k, v in result.items() if v}))

    # Introspection

    @property
    def element(self):
        return _element(self)

    def to_sympy(self):
        return _element(self).as_expr()

    def terms(self):
        """Yield ({name: exponent}, Fraction) pairs in canonical order."""
        element = _element(self)
        for monom, coeff in element.terms():
            powers = {name: e for name, e in zip(_registry.names, monom) if e}
            yield powers, Fraction(int(QQ.numer(coeff)), int(QQ.denom(coeff)))

    def variables(self):
        element = _element(self)
        used = set()
        for monom in element.keys():
            used.update(name for name, e in zip(_registry.names, monom) if e)
        return frozenset(used)

    def is_zero(self):
        return not self._p

    def is_constant(self):
        return not self.variables()

    def constant_value(self):
        """Rational value of a constant polynomial."""
        if not self.is_constant():
            raise ValueError(f"Not a constant: {render(self)}")
        element = _element(self)
        coeff = element.get(element.ring.zero_monom, QQ.zero)
        return Fraction(int(QQ.numer(coeff)), int(QQ.denom(coeff)))

    def is_scalar(self):
        """True when free of the operator variables d, l, m, n."""
        return not (self.variables() & set(OPERATOR_VARIABLES))

    # Arithmetic

    def __add__(self, other):
        return MultiPoly(_element(self) + _element(other))

    __radd__ = __add__

    def __sub__(self, other):
        return MultiPoly(_element(self) - _element(other))

    def __rsub__(self, other):
        return MultiPoly(_element(other) - _element(self))

    def __neg__(self):
        return MultiPoly(-_element(self))

    def __mul__(self, other):
        return MultiPoly(_element(self) * _element(other))

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            raise TypeError("Exponent must be an integer")
        if exponent >= 0:
            return MultiPoly(_element(self) ** exponent)
        return inverse(self) ** (-exponent)

    def __eq__(self, other):
        if isinstance(other, (MultiPoly, int, Fraction)):
            return _element(self) == _element(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(_element(self).items()))

    def __bool__(self):
        return bool(self._p)

    def __repr__(self):
        return f"MultiPoly({render(self)!r})"

    def __str__(self):
        return render(self)


def _coerce(value):
    return value if isinstance(value, MultiPoly) else MultiPoly.const(value)


def var(name):
    return MultiPoly.var(name)


def const(value):
    return MultiPoly.const(value)


def add(p, q):
    return _coerce(p) + _coerce(q)


def mul(p, q):
    return _coerce(p) * _coerce(q)


def substitute(p, name, value):
    """Replace one indeterminate by a polynomial."""
    return substitute_many(p, {name: value})


def substitute_many(p, mapping):
    """Simultaneous substitution {name: value}; no variable capture between entries."""
    element = _element(_coerce(p))
    replacements = [(_registry.gen(ALIASES.get(name, name)), _element(_coerce(value)))
                    for name, value in mapping.items()]
    if not replacements:
        return MultiPoly(element)
    return MultiPoly(element.compose(replacements))


def exact_divide(p, q):
    """Return r with p = q*r, raising NotDivisible when q does not divide p."""
    p, q = _coerce(p), _coerce(q)
    if q.is_zero():
        raise ZeroDivisionError("exact_divide by the zero polynomial")
    if p.is_zero():
        return MultiPoly.zero()
    try:
        quotient = _element(p).exquo(_element(q))
    except ExactQuotientFailed:
        raise NotDivisible(p, q) from None
    result = MultiPoly(quotient)
    # Unit reduction may hide a remainder the ring division could not see
    if result * q != p:
        raise NotDivisible(p, q)
    return result


def inverse(p):
    """Inverse of a unit: nonzero constants and monomials in c / cinv."""
    p = _coerce(p)
    if p.is_zero():
        raise NotInvertible(p)
    terms = list(p.terms())
    if len(terms) == 1:
        powers, coeff = terms[0]
        if set(powers) <= {UNIT, UNIT_INVERSE}:
            result = MultiPoly.const(1 / coeff)
            if powers.get(UNIT):
                result = result * MultiPoly.var(UNIT_INVERSE) ** powers[UNIT]
            if powers.get(UNIT_INVERSE):
                result = result * MultiPoly.var(UNIT) ** powers[UNIT_INVERSE]
            return result
    raise NotInvertible(p)


def degree_in(p, name):
    """Highest exponent of name; -oo for the zero polynomial."""
    p = _coerce(p)
    if p.is_zero():
        return -oo
    i = _registry.index(ALIASES.get(name, name))
    return max(monom[i] for monom in _element(p).keys())


def total_degree(p):
    p = _coerce(p)
    if p.is_zero():
        return -oo
    return max(sum(monom) for monom in _element(p).keys())


def coefficient_of(p, name, k):
    """Coefficient of name^k as a polynomial in the remaining indeterminates."""
    element = _element(_coerce(p))
    ring = _registry.ring
    i = _registry.index(ALIASES.get(name, name))
    terms = {}
    for monom, coeff in element.items():
        if monom[i] == k:
            monom = monom[:i] + (0,) + monom[i + 1:]
            terms[monom] = coeff
    return MultiPoly(ring.from_dict(terms))


def monomial_coefficients(p, names):
    """Coefficients of p viewed as a polynomial in the given names."""
    p = _coerce(p)
    element = _element(p)
    ring = _registry.ring
    idx = [_registry.index(ALIASES.get(n, n)) for n in names]
    grouped = {}
    for monom, coeff in element.items():
        key = tuple(monom[i] for i in idx)
        rest = list(monom)
        for i in idx:
            rest[i] = 0
        bucket = grouped.setdefault(key, {})
        bucket[tuple(rest)] = coeff
    return {key: MultiPoly(ring.from_dict(bucket)) for key, bucket in grouped.items()}


def formal_derivative(p, name):
    element = _element(_coerce(p))
    return MultiPoly(element.diff(_registry.gen(ALIASES.get(name, name))))


# Text grammar

_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<name>[^\W\d][\w']*|∂)|(?P<op>[-+*^()]))"
)


class _Parser:
    """Recursive descent parser for the polynomial grammar."""

    def __init__(self, text):
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text):
        tokens = []
        i = 0
        while i < len(text):
            if text[i].isspace():
                i += 1
                continue
            match = _TOKEN.match(text, i)
            if not match or match.end() == i:
                raise PolySyntaxError(f"Unexpected character {text[i]!r}", i)
            kind = match.lastgroup
            start = match.start(kind)
            tokens.append((kind, match.group(kind), start))
            i = match.end()
        tokens.append(("end", "", len(text)))
        return tokens

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def parse(self):
        if self.peek()[0] == "end":
            raise PolySyntaxError("Empty polynomial", 0)
        result = self.expr()
        kind, value, position = self.peek()
        if kind != "end":
            raise PolySyntaxError(f"Unexpected token {value!r}", position)
        return result

    def expr(self):
        result = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.advance()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self):
        result = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.advance()
            result = result * self.unary()
        return result

    def unary(self):
        kind, value, _ = self.peek()
        if kind == "op" and value in ("+", "-"):
            self.advance()
            operand = self.unary()
            return -operand if value == "-" else operand
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.advance()
            kind, value, position = self.advance()
            if kind != "number" or "/" in value:
                raise PolySyntaxError("Exponent must be a nonnegative integer literal", position)
            return base ** int(value)
        return base

    def atom(self):
        kind, value, position = self.advance()
        if kind == "number":
            if "/" in value:
                num, den = value.split("/")
                if int(den) == 0:
                    raise PolySyntaxError("Zero denominator", position)
                return MultiPoly.const(Fraction(int(num), int(den)))
            return MultiPoly.const(int(value))
        if kind == "name":
            name = ALIASES.get(value, value)
            if name not in _registry:
                raise PolySyntaxError(f"Unknown indeterminate {value!r}", position)
            return MultiPoly.var(name)
        if kind == "op" and value == "(":
            inner = self.expr()
            closing = self.advance()
            if closing[1] != ")":
                raise PolySyntaxError("Expected ')'", closing[2])
            return inner
        if kind == "end":
            raise PolySyntaxError("Unexpected end of input", position)
        raise PolySyntaxError(f"Unexpected token {value!r}", position)


def parse(text):
    """Parse the textual grammar into a MultiPoly."""
    if not isinstance(text, str):
        raise PolySyntaxError("Polynomial text must be a string", 0)
    return _Parser(text).parse()


def _format_coeff(coeff):
    if coeff.denominator == 1:
        return str(coeff.numerator)
    return f"{coeff.numerator}/{coeff.denominator}"


def render(p):
    """Canonical text: graded-lex order on (d, l, m, n, parameters)."""
    p = _coerce(p)
    if p.is_zero():
        return "0"
    parts = []
    for powers, coeff in p.terms():
        factors = []
        for name in _registry.names:
            e = powers.get(name)
            if e:
                factors.append(name if e == 1 else f"{name}^{e}")
        magnitude = abs(coeff)
        if not factors:
            body = _format_coeff(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_format_coeff(magnitude)] + factors)
        sign = "-" if coeff < 0 else "+"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def random_poly(rng, names, max_degree, density=0.5, bound=5):
    """Random polynomial in the given names with integer coefficients in [-bound, bound]."""
    terms = {}
    for powers in _exponents(len(names), max_degree):
        if rng.random() < density:
            coeff = rng.randint(-bound, bound)
            if coeff:
                terms[tuple(zip(names, powers))] = coeff
    return MultiPoly.from_monomials(terms)


def _exponents(count, max_degree):
    if count == 0:
        yield ()
        return
    for first in range(max_degree + 1):
        for rest in _exponents(count - 1, max_degree - first):
            yield (first,) + rest
