"""
Built-in module families, the module-axiom checker and basis changes.
"""
import logging
from collections.abc import Mapping
from fractions import Fraction
from itertools import product

from models.algebra import ConformalElement, bracket
from models.module import (
    GRADED_SEQUENCE, GRADED_UNIFORM, RANK_ONE, TRIVIAL,
    GradedConformalModule, ModuleDescriptor, ModuleElement,
)
from models.poly import MultiPoly, inverse, parse, substitute_many, var
from models.report import CheckReport, IndexWindow
from utils.errors import BadSequence, WindowExceeded, ZeroParameter, ZeroScale

logger = logging.getLogger(__name__)

SEQUENCE_VALUES = (0, -1)


def as_scalar(value):
    """Coerce an int, Fraction, parameter name or polynomial text to a MultiPoly."""
    if isinstance(value, MultiPoly):
        return value
    if isinstance(value, str):
        return parse(value)
    return MultiPoly.const(Fraction(value))


def _affine(a, b):
    """a*l + b - d."""
    return a * var("l") + b - var("d")


def make_V_abc(a="a", b="b", c="c", algebra_window=None):
    """Rank-one module L_i _l v = c^i (-d + a*l + b) v."""
    a, b, c = as_scalar(a), as_scalar(b), as_scalar(c)
    if c.is_zero():
        raise ZeroParameter("c must be nonzero")
    base = _affine(a, b)
    return GradedConformalModule(
        name=f"V[{a}, {b}, {c}]",
        window=IndexWindow(0, 0),
        action=lambda i, j: c ** i * base,
        rank_one=True,
        algebra_window=algebra_window,
    )


def make_V_ab(a="a", b="b", window=None):
    """L_i _l v_j = -(d - b - a*l) v_{i+j}."""
    a, b = as_scalar(a), as_scalar(b)
    base = _affine(a, b)
    return GradedConformalModule(
        name=f"V[{a}, {b}]",
        window=window or IndexWindow.symmetric(4),
        action=lambda i, j: base,
    )


def _sequence(A, window):
    if isinstance(A, Mapping):
        entries = {int(k): v for k, v in A.items()}
        if window is None:
            if not entries:
                raise BadSequence("Empty sequence")
            window = IndexWindow(min(entries), max(entries))
    else:
        values = list(A)
        if window is None:
            if len(values) % 2 == 0:
                raise BadSequence("A list sequence without a window needs odd length")
            window = IndexWindow.symmetric(len(values) // 2)
        if len(values) != len(window):
            raise BadSequence(f"Sequence has {len(values)} entries for a window of {len(window)}")
        entries = dict(zip(window, values))
    sequence = {}
    for k in window:
        if k not in entries:
            raise BadSequence(f"Sequence has no entry at {k}")
        value = as_scalar(entries[k])
        if not value.is_constant() or value.constant_value() not in SEQUENCE_VALUES:
            raise BadSequence(f"Entry a_{k} = {value} is not 0 or -1")
        sequence[k] = int(value.constant_value())
    return sequence, window


def make_V_Ab(A, b="b", window=None):
    """Four-case action driven by a {0, -1}-sequence A over the window."""
    sequence, window = _sequence(A, window)
    b = as_scalar(b)
    x = var("d") - b
    lam = var("l")
    cases = {
        (0, 0): -x,
        (-1, -1): -(x + lam),
        (0, -1): MultiPoly.const(-1),
        (-1, 0): -(x * (x + lam)),
    }
    return GradedConformalModule(
        name=f"V[A, {b}]",
        window=window,
        action=lambda i, j: cases[(sequence[j], sequence[i + j])],
    )


def make_trivial(window=None, rank_one=False, algebra_window=None):
    return GradedConformalModule(
        name="trivial",
        window=IndexWindow(0, 0) if rank_one else (window or IndexWindow.symmetric(4)),
        action=lambda i, j: MultiPoly.zero(),
        rank_one=rank_one,
        algebra_window=algebra_window,
    )


def instantiate(descriptor, window=None):
    """The module a descriptor names; graded kinds need the module window."""
    params = descriptor.params
    if descriptor.kind == TRIVIAL:
        return make_trivial(window, rank_one=window is None)
    if descriptor.kind == RANK_ONE:
        return make_V_abc(params["a"], params["b"], params["c"])
    if descriptor.kind == GRADED_UNIFORM:
        return make_V_ab(params["a"], params["b"], window)
    if descriptor.kind == GRADED_SEQUENCE:
        A = params["A"]
        if window is not None:
            A = {k: A[k] for k in window if k in A}
        return make_V_Ab(A, params["b"], window)
    raise ValueError(f"Unknown module kind: {descriptor.kind}")


def with_entry(mod, i, j, poly):
    """Copy of mod with the single coefficient f_{i,j} replaced."""
    poly = as_scalar(poly)
    base = mod.action
    return GradedConformalModule(
        name=f"{mod.name}[f({i},{j}) edited]",
        window=mod.window,
        action=lambda p, q: poly if (p, q) == (i, j) else base(p, q),
        rank_one=mod.rank_one,
        algebra_window=mod.algebra_window,
    )


def act(mod, x, v, lam="l"):
    """x _lam v for x = sum f_i(d) L_i and v = sum g_j(d) v_j.

    (f(d) L_i) _lam (g(d) v_j) = f(-lam) g(d + lam) f_{i,j}(d, lam) v_target.
    """
    lam_poly = var(lam)
    result = ModuleElement()
    for i, f in x.terms.items():
        left = substitute_many(f, {"d": -lam_poly})
        for j, g in v.terms.items():
            right = substitute_many(g, {"d": var("d") + lam_poly})
            coefficient = mod.f(i, j)
            if lam != "l":
                coefficient = substitute_many(coefficient, {"l": lam_poly})
            term = ModuleElement.basis(mod.target(i, j), left * right * coefficient)
            result = result + term
    return result


def act_shifted(mod, x, v, shift, fresh="n"):
    """x _{shift} v evaluated in a fresh variable, then substituted."""
    return act(mod, x, v, fresh).substitute({fresh: shift})


def _required_indices(mod, i, j, k):
    if mod.rank_one:
        return [k]
    return [k, j + k, i + k, i + j + k]


def check_module_axiom(alg, mod, i, j, k, report=None):
    """L_i _l (L_j _m v_k) - L_j _m (L_i _l v_k) = [L_i _l L_j] _{l+m} v_k."""
    report = report or CheckReport(name="module-axiom")
    outside = [n for n in _required_indices(mod, i, j, k) if n not in mod.window]
    if outside:
        raise WindowExceeded(f"Triple ({i}, {j}, {k}) needs v_{outside[0]} outside the window")
    a, b = ConformalElement.basis(i), ConformalElement.basis(j)
    v = ModuleElement.basis(k)

    lhs = act(mod, a, act(mod, b, v, "m"), "l") - act(mod, b, act(mod, a, v, "l"), "m")
    rhs = ModuleElement()
    for index, coeff in bracket(alg, a, b, "l").terms.items():
        rhs = rhs + act_shifted(mod, ConformalElement.basis(index, coeff), v, var("l") + var("m"))

    report.record((i, j, k), lhs, rhs)
    return report


def check_module(alg, mod, window):
    """Module axiom on every admissible triple; window bounds algebra indices for rank-one tables."""
    report = CheckReport(name="module-axiom")
    skipped = 0
    if mod.rank_one:
        triples = [(i, j, 0) for i, j in product(window, window)]
    else:
        triples = [(t2 - k, t1 - k, k) for k in mod.window for t1 in mod.window for t2 in mod.window]
    for i, j, k in triples:
        try:
            check_module_axiom(alg, mod, i, j, k, report)
        except WindowExceeded:
            skipped += 1
    report.details["coverage"] = {"checked": report.checked, "skipped": skipped}
    logger.debug("Module %s: %d triples checked, %d skipped, passed=%s",
                 mod.name, report.checked, skipped, report.passed)
    return report


def check_sesquilinearity_action(mod, x, v):
    """(d x) _l v = -l (x _l v) and x _l (d v) = (d + l)(x _l v)."""
    report = CheckReport(name="action-sesquilinearity")
    base = act(mod, x, v)
    lam, d = var("l"), var("d")
    report.record(("d*x", "v"), act(mod, x.derive(), v), base.scale(-lam))
    report.record(("x", "d*v"), act(mod, x, v.scale(d)), base.scale(d + lam))
    return report


def is_trivial(mod, window=None):
    """True iff every in-window structure coefficient vanishes."""
    return all(mod.f(i, j).is_zero() for i, j in mod.pairs(window))


def change_basis(mod, d):
    """Module in the basis u_j = d_j v_j: f'_{i,j} = (d_j / d_{i+j}) f_{i,j}."""
    scales = {}
    for j in mod.window:
        if j not in d:
            raise ZeroScale(f"No scale given for v_{j}")
        value = as_scalar(d[j])
        if value.is_zero():
            raise ZeroScale(f"Scale for v_{j} is zero")
        scales[j] = value
    inverses = {j: inverse(value) for j, value in scales.items()}
    base = mod.action
    return GradedConformalModule(
        name=f"{mod.name}[rescaled]",
        window=mod.window,
        action=lambda i, j: scales[j] * inverses[mod.target(i, j)] * base(i, j),
        rank_one=mod.rank_one,
        algebra_window=mod.algebra_window,
    )


def same_table(first, second, window=None):
    """Coefficient-wise equality of two modules over the pairs of first."""
    return all(first.f(i, j) == second.f(i, j) for i, j in first.pairs(window))


def descriptor_for(kind, **params):
    converted = {}
    for key, value in params.items():
        if isinstance(value, Mapping):
            converted[key] = {k: as_scalar(v) for k, v in value.items()}
        else:
            converted[key] = as_scalar(value)
    return ModuleDescriptor(kind, converted)
