"""
Axiom checkers for graded Lie conformal algebras and the built-in loop Virasoro
conformal algebra.
"""
import logging
from itertools import product

from models.algebra import (
    ConformalElement, GradedConformalAlgebra, LambdaValue, bracket, bracket_shifted,
)
from models.poly import MultiPoly, parse, var
from models.report import CheckReport
from utils.errors import WindowExceeded

logger = logging.getLogger(__name__)

CW_STRUCTURE = "-d - 2*l"


def make_CW():
    """Loop Virasoro conformal algebra: [L_i _l L_j] = (-d - 2l) L_{i+j}."""
    structure = parse(CW_STRUCTURE)
    return GradedConformalAlgebra(
        name="cw",
        bracket_rule=lambda i, j: [(i + j, structure)],
        grading_offsets=frozenset({0}),
    )


def make_uniform_algebra(name, structure, offsets=frozenset({0})):
    """Algebra with one structure polynomial for every pair, emitted at i + j."""
    structure = parse(structure) if isinstance(structure, str) else structure
    return GradedConformalAlgebra(
        name=name,
        bracket_rule=lambda i, j: [(i + j, structure)],
        grading_offsets=frozenset(offsets),
    )


def restrict_to_zero(alg):
    """The subalgebra C[d] L_0 (for cw, the conformal Virasoro algebra)."""
    return GradedConformalAlgebra(
        name=f"{alg.name}|0",
        bracket_rule=lambda i, j: [(k, p) for k, p in alg.bracket_rule(0, 0) if k == 0]
        if i == 0 and j == 0 else [],
        grading_offsets=frozenset({0}),
    )


def check_skew_symmetry(alg, i, j, report=None):
    """[L_i _l L_j] = -[L_j _{-l-d} L_i] as polynomials."""
    report = report or CheckReport(name="skew-symmetry")
    lhs = alg.basis_bracket(i, j)
    flipped = alg.basis_bracket(j, i).substitute({"l": -var("l") - var("d")})
    report.record((i, j), lhs, -flipped)
    return report


def check_jacobi(alg, i, j, k, report=None):
    """[a _l [b _m c]] = [[a _l b] _{l+m} c] + [b _m [a _l c]] on basis elements."""
    report = report or CheckReport(name="jacobi")
    a, b, c = (ConformalElement.basis(n) for n in (i, j, k))
    lam, mu = var("l"), var("m")

    lhs = LambdaValue()
    for index, coeff in bracket(alg, b, c, "m").terms.items():
        lhs = lhs + bracket(alg, a, ConformalElement.basis(index, coeff), "l")

    first = LambdaValue()
    for index, coeff in bracket(alg, a, b, "l").terms.items():
        first = first + bracket_shifted(alg, ConformalElement.basis(index, coeff), c, lam + mu)

    second = LambdaValue()
    for index, coeff in bracket(alg, a, c, "l").terms.items():
        second = second + bracket(alg, b, ConformalElement.basis(index, coeff), "m")

    report.record((i, j, k), lhs, first + second)
    return report


def check_graded(alg, window):
    """Every emitted index k satisfies k - (i + j) in the grading offsets."""
    report = CheckReport(name="graded")
    for i, j in product(window, window):
        try:
            emitted = alg.bracket_rule(i, j)
        except WindowExceeded:
            continue
        for k, poly in emitted:
            report.checked += 1
            if poly.is_zero():
                continue
            if k - (i + j) not in alg.grading_offsets:
                report.passed = False
                report.failures.append({"indices": [i, j, k], "note": "offset outside grading"})
    return report


def check_bracket_sesquilinearity(alg, x, y):
    """[dx _l y] = -l [x _l y] and [x _l dy] = (d + l) [x _l y] for given elements."""
    report = CheckReport(name="sesquilinearity")
    base = bracket(alg, x, y)
    report.record(("d*x", "y"), bracket(alg, x.derive(), y), base.scale(-var("l")))
    report.record(("x", "d*y"), bracket(alg, x, y.derive()), base.scale(var("d") + var("l")))
    return report


def check_algebra(alg, window):
    """Skew-symmetry on all pairs, Jacobi on all triples and grading over the window.

    Instances that need a bracket outside a tabulated algebra are skipped and
    counted in the coverage details.
    """
    skew = CheckReport(name="skew-symmetry")
    skipped = 0
    for i, j in product(window, window):
        try:
            check_skew_symmetry(alg, i, j, skew)
        except WindowExceeded:
            skipped += 1
    skew.details["coverage"] = {"checked": skew.checked, "skipped": skipped}
    jacobi = CheckReport(name="jacobi")
    skipped = 0
    for i, j, k in product(window, window, window):
        try:
            check_jacobi(alg, i, j, k, jacobi)
        except WindowExceeded:
            skipped += 1
    jacobi.details["coverage"] = {"checked": jacobi.checked, "skipped": skipped}
    graded = check_graded(alg, window)
    logger.debug("Algebra %s on %s: skew=%s jacobi=%s graded=%s",
                 alg.name, window, skew.passed, jacobi.passed, graded.passed)
    return [skew, jacobi, graded]


def structure_mutants():
    """Nine single-monomial degree <= 1 perturbations of the cw structure polynomial."""
    base = parse(CW_STRUCTURE)
    mutants = []
    for monomial in ("1", "d", "l"):
        for eps in (-1, 1, 2):
            perturbed = base + MultiPoly.const(eps) * parse(monomial)
            label = f"{CW_STRUCTURE} + ({eps})*{monomial}"
            mutants.append((label, make_uniform_algebra(f"mutant[{label}]", perturbed)))
    return mutants


def make_parity_mutant():
    """[L_i _l L_j] = (-d - 2l) L_{i+j} when i + j is even, 0 otherwise."""
    structure = parse(CW_STRUCTURE)
    return GradedConformalAlgebra(
        name="parity-mutant",
        bracket_rule=lambda i, j: [(i + j, structure)] if (i + j) % 2 == 0 else [],
    )


def make_offset_mutant(offset=1):
    """cw with every output index shifted; violates the declared grading."""
    structure = parse(CW_STRUCTURE)
    return GradedConformalAlgebra(
        name=f"offset-mutant[{offset}]",
        bracket_rule=lambda i, j: [(i + j + offset, structure)],
        grading_offsets=frozenset({0}),
    )


def detects_mutant(alg, window):
    """True when skew-symmetry or Jacobi fails somewhere on the window."""
    for i, j in product(window, window):
        if not check_skew_symmetry(alg, i, j).passed:
            return True
    for i, j, k in product(window, window, window):
        if not check_jacobi(alg, i, j, k).passed:
            return True
    return not check_graded(alg, window).passed

