"""
Conformal derivations of a graded conformal algebra: inner derivations, the
Leibniz check, splitting by degree and recovering the inner element of a
single-degree component.
"""
import logging
from itertools import product

from models.algebra import ConformalElement, LambdaValue, bracket, bracket_shifted
from models.derivation import ConformalDerivation, DegreeComponent, element_support_bound
from models.poly import MultiPoly, degree_in, exact_divide, random_poly, substitute_many, var
from models.report import CheckReport
from utils.errors import NotDivisible, VerificationFailed, WindowExceeded

logger = logging.getLogger(__name__)

# Ways of reading g off f_0; the first is the one that reproduces ad_{g(d) L_c} on cw
INNER_READINGS = (
    ("f0(l, -l) / l", lambda l: {"d": l, "l": -l}),
    ("f0(-l, l) / l", lambda l: {"d": -l}),
)


def inner(alg, x):
    """ad_x with (ad_x)_l(L_i) = [x _l L_i]."""
    return ConformalDerivation(
        name=f"ad[{x}]",
        action=lambda i: list(bracket(alg, x, ConformalElement.basis(i)).terms.items()),
        support_bound=element_support_bound(x),
    )


def check_leibniz(alg, D, i, j, report=None):
    """D_l([L_i _m L_j]) = [(D_l L_i) _{l+m} L_j] + [L_i _m (D_l L_j)]."""
    report = report or CheckReport(name="leibniz")
    a, b = ConformalElement.basis(i), ConformalElement.basis(j)

    inside = ConformalElement(bracket(alg, a, b, "m").terms)
    lhs = D.apply(inside, "l")

    shift = var("l") + var("m")
    first = LambdaValue()
    for k, g in D.on_basis(i).terms.items():
        first = first + bracket_shifted(alg, ConformalElement.basis(k, g), b, shift)
    second = LambdaValue()
    for k, g in D.on_basis(j).terms.items():
        second = second + bracket(alg, a, ConformalElement.basis(k, g), "m")

    report.record((i, j), lhs, first + second)
    return report


def check_leibniz_window(alg, D, window):
    """Leibniz on every pair of the window that D can evaluate."""
    report = CheckReport(name="leibniz")
    skipped = 0
    for i, j in product(window, window):
        try:
            check_leibniz(alg, D, i, j, report)
        except WindowExceeded:
            skipped += 1
    report.details["coverage"] = {"checked": report.checked, "skipped": skipped}
    return report


def degree_components(D, window):
    """Split D by output offset c = k - i over the window, ordered by c."""
    grouped = {}
    for i in window:
        for k, poly in D.on_basis(i).terms.items():
            grouped.setdefault(k - i, {})[i] = poly
    return [DegreeComponent(c, grouped[c], window) for c in sorted(grouped)]


def extract_inner(alg, Dc, window, deg_bound):
    """g(d) L_c with Dc = ad_{g(d) L_c} on the window."""
    if 0 not in window:
        raise VerificationFailed("Reading g needs f_0, but 0 is outside the window")
    for i in window:
        if degree_in(Dc.f(i), "l") > deg_bound:
            raise VerificationFailed(f"f_{i} exceeds the degree bound {deg_bound}")

    lam = var("l")
    f0 = Dc.f(0)
    divisibility, divisible = None, False
    for label, mapping in INNER_READINGS:
        try:
            g = exact_divide(substitute_many(f0, mapping(lam)), lam)
        except NotDivisible as exc:
            divisibility = divisibility or exc
            continue
        divisible = True
        candidate = ConformalElement.basis(Dc.offset, substitute_many(g, {"l": var("d")}))
        ad = inner(alg, candidate)
        if all(ad.on_basis(i) == LambdaValue({i + Dc.offset: Dc.f(i)}) for i in window):
            logger.debug("Component D^%d is inner via g = %s", Dc.offset, label)
            return candidate
        logger.debug("Reading %s did not reproduce D^%d", label, Dc.offset)
    if not divisible:
        raise divisibility
    raise VerificationFailed(f"No inner derivation reproduces D^{Dc.offset} on the window")


def random_element(rng, support=3, deg_bound=5, max_terms=3):
    """Nonzero sum of g_c(d) L_c with |c| <= support and deg g_c <= deg_bound."""
    indices = rng.sample(range(-support, support + 1), rng.randint(1, min(max_terms, 2 * support + 1)))
    terms = {}
    for c in indices:
        g = MultiPoly.zero()
        while g.is_zero():
            g = random_poly(rng, ["d"], deg_bound)
        terms[c] = g
    return ConformalElement(terms)


def random_non_inner(rng, support=3, deg_bound=5):
    """Degree-c family f_i = r + i*s with s != 0; f_i depends on i, so it is not inner."""
    c = rng.randint(-support, support)
    r = random_poly(rng, ["d", "l"], deg_bound)
    s = MultiPoly.zero()
    while s.is_zero():
        s = random_poly(rng, ["d", "l"], deg_bound)
    return ConformalDerivation(
        name=f"non-inner[{c}]",
        action=lambda i: [(i + c, r + MultiPoly.const(i) * s)],
        support_bound=abs(c),
    )


def verify_der_equals_inn(alg, window, deg_bound, trials, rng, support=3):
    """Random inner derivations round-trip; random non-inner families fail Leibniz."""
    report = CheckReport(name="der-equals-inn")
    counts = {"trials": trials, "inner_round_trips": 0, "non_inner_failures": 0}
    report.details["counts"] = counts
    if window.is_empty():
        report.details["vacuous"] = True
        return report

    for trial in range(trials):
        x = random_element(rng, support, deg_bound)
        D = inner(alg, x)
        report.checked += 1
        leibniz = check_leibniz_window(alg, D, window)
        if not leibniz.passed:
            report.fail([trial], f"inner derivation of {x} fails Leibniz", witnesses=leibniz.failures[:1])
            continue
        rebuilt = ConformalElement()
        for component in degree_components(D, window):
            rebuilt = rebuilt + extract_inner(alg, component, window, deg_bound + 1)
        if rebuilt != x:
            report.fail([trial], f"round trip of {x} gave {rebuilt}")
            continue
        counts["inner_round_trips"] += 1

    for trial in range(trials):
        D = random_non_inner(rng, support, deg_bound)
        report.checked += 1
        if check_leibniz_window(alg, D, window).passed:
            report.fail([trial], f"{D.name} passes Leibniz")
            continue
        counts["non_inner_failures"] += 1

    logger.info("Derivation campaign: %d/%d inner round trips, %d/%d non-inner rejections",
                counts["inner_round_trips"], trials, counts["non_inner_failures"], trials)
    return report
