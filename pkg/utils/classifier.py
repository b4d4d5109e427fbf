"""
Classification of rank-one and Z-graded free intermediate series modules over
the loop Virasoro conformal algebra.

Every step of the argument is replayed as a bounded-degree computation: the
functional equations become linear systems over polynomial coefficients, the
degree comparisons become assertions on degree_in, and every step fails loudly
with the name of the step it was replaying.
"""
import logging
from fractions import Fraction

from sympy import Poly, expand, factor, solve, symbols

from models.module import GRADED_SEQUENCE, GRADED_UNIFORM, RANK_ONE, TRIVIAL, GradedConformalModule, ModuleDescriptor
from models.poly import (
    MultiPoly, coefficient_of, degree_in, exact_divide, formal_derivative, inverse,
    substitute_many, total_degree, var,
)
from models.report import CheckReport, ClassificationOutcome, IndexWindow, PairForm, SolverResult
from utils.axioms import make_CW
from utils.errors import (
    CocycleViolated, DichotomyViolated, LoopConfError, NoSolution, NotDivisible,
    PipelineStepFailed, ShapeMismatch, UsageError,
)
from utils.linear import solve_linear_family, vandermonde_reduce
from utils.modules import as_scalar, change_basis, check_module, descriptor_for, instantiate, make_V_abc, same_table

logger = logging.getLogger(__name__)

# Step labels carried by PipelineStepFailed
AFFINE_SHAPE = "affine-shape"
MULTIPLICATIVE = "multiplicative-equation"
D_EQUATION = "linear-part-equation"
DIVISIBILITY = "divisibility"
SHIFT_INVARIANCE = "shift-invariance"
CONSTANCY = "constancy"
MULTIPLICATIVITY = "multiplicativity"
ZERO_PROPAGATION = "zero-propagation"
COMMON_B = "common-b"
PAIR_FORM = "pair-form"
COCYCLE = "cocycle-normalization"
ROUND_TRIP = "round-trip"

CASE_CONSTRAINTS = {
    1: "a_k = a_jk",
    2: "(a_k, a_jk) = (0, -1)",
    3: "(a_k, a_jk) = (-1, 0)",
}
# exponent 1 + a_jk - a_k -> case
EXPONENT_CASES = {1: 1, 0: 2, 2: 3}


def _d():
    return var("d")


def _l():
    return var("l")


def _m():
    return var("m")


# Rank-one equations

def solve_multiplicative(deg_bound):
    """Polynomial solutions of c(l + m) = -c(l) c(m) with deg c <= deg_bound."""
    if deg_bound < 0:
        raise ValueError("deg_bound must be nonnegative")
    lam, mu = symbols("l m")
    coeffs = symbols(f"c0:{deg_bound + 1}")

    def c(x):
        return sum(coeffs[t] * x ** t for t in range(deg_bound + 1))

    residual = expand(c(lam + mu) + c(lam) * c(mu))
    certificate = [{
        "step": "m = 0",
        "identity": f"{factor(expand(residual.subs(mu, 0)))} = 0",
        "note": "c = 0 or c(0) = -1",
    }]

    # The top coefficient of c(l) c(m) sits at l^t m^t, out of reach of c(l + m)
    poly = Poly(residual, lam, mu)
    forced = {}
    for t in range(deg_bound, 0, -1):
        equation = poly.coeff_monomial(lam ** t * mu ** t).subs(forced)
        roots = solve(equation, coeffs[t])
        if roots != [0]:
            raise PipelineStepFailed(MULTIPLICATIVE, f"coefficient c_{t} is not forced to zero: {equation} = 0")
        forced[coeffs[t]] = 0
        certificate.append({"step": f"l^{t} m^{t}", "identity": f"{equation} = 0", "note": f"c_{t} = 0"})

    scalar = expand(residual.subs(forced))
    values = sorted(solve(scalar, coeffs[0]), reverse=True)
    solutions = []
    for value in values:
        if expand(scalar.subs(coeffs[0], value)) != 0:
            raise PipelineStepFailed(MULTIPLICATIVE, f"c = {value} leaves a nonzero residual")
        solutions.append(MultiPoly.const(Fraction(int(value.p), int(value.q))))
    certificate.append({"step": "constant", "identity": f"{scalar} = 0",
                        "note": ", ".join(f"c = {p}" for p in solutions)})
    logger.debug("Multiplicative equation up to degree %d: %s", deg_bound, [str(p) for p in solutions])
    return SolverResult(solutions, len(solutions), certificate)


def _linear_part_residual(c_value):
    """(m - l) d(l + m) - c (l d(l) - m d(m)) for a constant c."""
    lam, mu = _l(), _m()
    c = MultiPoly.const(c_value)

    def residual(p):
        shifted = substitute_many(p, {"l": lam + mu})
        at_mu = substitute_many(p, {"l": mu})
        return (mu - lam) * shifted - (c * p * lam - c * at_mu * mu)
    return residual


def solve_d_equation(deg_bound):
    """Polynomials d(l) of degree <= deg_bound with m d(m) - l d(l) = (m - l) d(l + m)."""
    if deg_bound < 1:
        raise ValueError("deg_bound must be at least 1")
    residual = _linear_part_residual(-1)
    basis = [_l() ** t for t in range(deg_bound + 1)]
    solutions = solve_linear_family(basis, residual, ["l", "m"])
    certificate = [{"solution": str(p), "residual": str(residual(p))} for p in solutions]
    if deg_bound >= 2:
        certificate.append({"excluded": "l^2", "residual": str(residual(_l() ** 2))})
    return SolverResult(solutions, len(solutions), certificate)


def solve_ode_poly(e, b="b", deg_bound=6):
    """Polynomials p with e * p = (d - b) p' and deg p <= deg_bound."""
    if e < 0 or int(e) != e:
        raise ValueError("e must be a nonnegative integer")
    e = int(e)
    b = as_scalar(b)
    d = _d()
    # Solve in x = d - b, then shift back
    basis = [d ** t for t in range(deg_bound + 1)]
    solutions = solve_linear_family(basis, lambda p: MultiPoly.const(e) * p - d * formal_derivative(p, "d"), ["d"])
    shifted = [substitute_many(p, {"d": d - b}) for p in solutions]
    certificate = []
    for p in shifted:
        residual = MultiPoly.const(e) * p - (d - b) * formal_derivative(p, "d")
        if not residual.is_zero():
            raise NoSolution(f"{p} does not solve the ODE")
        certificate.append({"solution": str(p), "residual": "0"})
    return SolverResult(shifted, len(shifted), certificate)


def affine_degree_shapes(deg_bound):
    """d-degrees p for which d^p l^q balances the l-degrees of both sides of the f_0 equation."""
    d, lam, mu = _d(), _l(), _m()
    admissible = set()
    for p in range(deg_bound + 1):
        balanced = True
        for q in range(deg_bound + 1):
            f0 = d ** p * lam ** q
            lhs = (mu - lam) * substitute_many(f0, {"l": lam + mu})
            rhs = (substitute_many(f0, {"d": d + lam, "l": mu}) * f0
                   - substitute_many(f0, {"d": d + mu}) * substitute_many(f0, {"l": mu}))
            if degree_in(lhs, "l") != degree_in(rhs, "l"):
                balanced = False
                break
        if balanced:
            admissible.add(p)
    return admissible


def _constancy_residual(b):
    d, mu = _d(), _m()

    def residual(g):
        at_zero = substitute_many(g, {"l": 0})
        return mu * substitute_many(g, {"l": mu}) - (b - d) * at_zero + (b - d - mu) * at_zero
    return residual


def divide_by_f0(f0, deg_bound):
    """Quotients g = f_i / f_0 for the f_i allowed by the lambda = 0 identity.

    m f_i(d, m) = (h(d) - h(d + m)) f_0(d, m) with h = f_i(d, 0). f_0 is linear
    in d and must not divide m, so it divides f_i; each f_i read off the
    identity for h = d^t is divided by f_0 exactly.
    """
    d, lam, mu = _d(), _l(), _m()
    f0_mu = substitute_many(f0, {"l": mu})
    try:
        exact_divide(mu, f0_mu)
    except NotDivisible:
        pass
    else:
        raise PipelineStepFailed(DIVISIBILITY, f"{f0_mu} divides m, so it need not divide f_i")

    quotients = []
    for t in range(1, deg_bound + 1):
        h = d ** t
        rhs = (h - substitute_many(h, {"d": d + mu})) * f0_mu
        try:
            f_i = substitute_many(exact_divide(rhs, mu), {"m": lam})
            quotients.append(exact_divide(f_i, f0))
        except NotDivisible as exc:
            raise PipelineStepFailed(DIVISIBILITY, f"h = {h}: {exc}") from exc
    return quotients


def solve_rank_one(deg_bound=6, check_window=None):
    """Rank-one modules up to deg_bound: the trivial module and V_{a,b,c}."""
    if deg_bound < 2:
        raise ValueError("deg_bound must be at least 2")
    d, lam, mu = _d(), _l(), _m()
    certificates = []

    admissible = affine_degree_shapes(deg_bound)
    if admissible != {1}:
        raise PipelineStepFailed(AFFINE_SHAPE, f"admissible d-degrees of f_0 are {sorted(admissible)}, expected [1]")
    certificates.append({"step": AFFINE_SHAPE, "admissible_d_degrees": sorted(admissible)})

    multiplicative = solve_multiplicative(deg_bound)
    values = sorted(p.constant_value() for p in multiplicative.solution_basis)
    if values != [-1, 0]:
        raise PipelineStepFailed(MULTIPLICATIVE, f"expected c in {{0, -1}}, got {values}")
    certificates.append({"step": MULTIPLICATIVE, **multiplicative.to_dict()})

    descriptors = []
    trivial_branch = solve_linear_family([lam ** t for t in range(deg_bound + 1)], _linear_part_residual(0), ["l", "m"])
    if trivial_branch:
        raise PipelineStepFailed(D_EQUATION, "c = 0 admits a nonzero linear part")
    descriptors.append(ModuleDescriptor(TRIVIAL))
    certificates.append({"step": D_EQUATION, "branch": "c = 0", "dimension": 0})

    linear = solve_d_equation(deg_bound)
    if [str(p) for p in linear.solution_basis] != ["1", "l"]:
        raise PipelineStepFailed(D_EQUATION, f"expected basis [1, l], got {[str(p) for p in linear.solution_basis]}")
    certificates.append({"step": D_EQUATION, "branch": "c = -1", **linear.to_dict()})

    a, b = var("a"), var("b")
    f0 = a * lam + b - d

    g_basis = divide_by_f0(f0, deg_bound)
    certificates.append({"step": DIVISIBILITY, "quotients": [str(g) for g in g_basis]})

    invariant = solve_linear_family(g_basis, lambda g: substitute_many(g, {"d": d + lam}) - g, ["d", "l"])
    reduced = []
    for g in invariant:
        try:
            reduced.append(vandermonde_reduce(g, deg_bound))
        except LoopConfError as exc:
            raise PipelineStepFailed(SHIFT_INVARIANCE, str(exc)) from exc
    certificates.append({"step": SHIFT_INVARIANCE, "dimension": len(invariant),
                         "reduced": [str(g) for g in reduced]})

    constants = solve_linear_family([lam ** t for t in range(deg_bound + 1)], _constancy_residual(b), ["d", "l", "m"])
    if [str(p) for p in constants] != ["1"] or not all(g.is_constant() for g in reduced):
        raise PipelineStepFailed(CONSTANCY, "g_i is not forced to be a constant")
    certificates.append({"step": CONSTANCY, "solutions": [str(p) for p in constants]})

    # With f_i = c_i f_0 both sides of the module identity share the factor (m - l) f_0(d, l + m)
    core = (mu - lam) * substitute_many(f0, {"l": lam + mu})
    product = (substitute_many(f0, {"d": d + lam, "l": mu}) * f0
               - substitute_many(f0, {"d": d + mu}) * substitute_many(f0, {"l": mu}))
    try:
        ratio = exact_divide(product, core)
    except NotDivisible as exc:
        raise PipelineStepFailed(MULTIPLICATIVITY, str(exc)) from exc
    if ratio != 1:
        raise PipelineStepFailed(MULTIPLICATIVITY, f"c_i c_j / c_(i+j) = {ratio}, expected 1")
    certificates.append({"step": MULTIPLICATIVITY, "ratio": str(ratio), "note": "c_i = c^i"})

    family = descriptor_for(RANK_ONE, a="a", b="b", c="c")
    window = check_window or IndexWindow.symmetric(2)
    confirm = check_module(make_CW(), make_V_abc("a", "b", "c"), window)
    if not confirm.passed:
        raise PipelineStepFailed(MULTIPLICATIVITY, "V_{a,b,c} fails the module axiom")
    certificates.append({"step": "module-axiom", "window": window.as_list(), "checked": confirm.checked})
    descriptors.append(family)

    return ClassificationOutcome(
        descriptors=descriptors,
        notes={"deg_bound": deg_bound, "complete_up_to_degree": deg_bound},
        certificates=certificates,
    )


def identify_rank_one(mod, window):
    """Descriptor of a rank-one table: f_i = c^i (a l + b - d) on the window."""
    if not mod.rank_one:
        raise UsageError("identify_rank_one needs a rank-one table")
    if all(mod.f(i, 0).is_zero() for i in window):
        return ModuleDescriptor(TRIVIAL)
    b, A, _ = extract_b(mod)
    f0 = mod.f(0, 0)
    if 1 not in window:
        raise UsageError("Reading c needs f_1 on the window")
    try:
        c = exact_divide(mod.f(1, 0), f0)
    except NotDivisible as exc:
        raise PipelineStepFailed(MULTIPLICATIVITY, str(exc)) from exc
    if not c.is_scalar() or c.is_zero():
        raise PipelineStepFailed(MULTIPLICATIVITY, f"f_1 / f_0 = {c} is not a nonzero scalar")
    for i in window:
        if mod.f(i, 0) != c ** i * f0:
            raise PipelineStepFailed(MULTIPLICATIVITY, f"f_{i} is not c^{i} f_0")
    return descriptor_for(RANK_ONE, a=A[0], b=b, c=c)


# Graded pipeline

def _pair_residual(form, a_k, a_jk, b):
    """Residual of the j,k identity with i = 0 for f_{0,k} = a_k l + b - d."""
    d, lam, mu = _d(), _l(), _m()
    left = (mu - lam) * substitute_many(form, {"l": lam + mu})
    right = (substitute_many(form, {"d": d + lam, "l": mu}) * (a_jk * lam + b - d)
             - (a_k * lam + b - d - mu) * substitute_many(form, {"l": mu}))
    return left - right


def _pair_candidate(a_k, a_jk, e, b):
    """c = 1 form a_k x^e - a_jk (x + l)^e + x ((x + l)^e - x^e) / l with x = d - b."""
    x = _d() - b
    y = x + _l()
    difference = exact_divide(y ** e - x ** e, _l())
    return as_scalar(a_k) * x ** e - as_scalar(a_jk) * y ** e + x * difference


def _specialization(a_k, a_jk, e, N):
    """Both sides of the l = m identity at d - b = N l, divided by the common power of l."""
    lhs = (N + 2) ** e * (N + 1 - a_jk) * (a_jk - N)
    rhs = (a_k - 1 - N) * (a_k - N) * N ** e + 2 * (a_k - 1 - N) * (N - a_jk) * (N + 1) ** e
    return Fraction(lhs), Fraction(rhs)


def _exponent(a_k, a_jk):
    e = 1 + a_jk - a_k
    if e.denominator != 1 or e < 0:
        return None
    return int(e)


def solve_pair_form(a_k, a_jk, b="b"):
    """Surviving shapes of f_{j,k} given f_{0,k} = a_k l + b - d and f_{0,j+k} = a_jk l + b - d."""
    a_k, a_jk, b = as_scalar(a_k), as_scalar(a_jk), as_scalar(b)

    if not (a_k.is_constant() and a_jk.is_constant()):
        # Symbolic values need a rational difference to fix the exponent
        difference = a_jk - a_k
        if not difference.is_constant():
            raise NoSolution(f"1 + a_jk - a_k = 1 + {difference} is not a fixed nonnegative integer")
        shift = difference.constant_value()
        e = _exponent(Fraction(0), shift)
        if e not in EXPONENT_CASES:
            raise NoSolution(f"1 + a_jk - a_k = {1 + shift} has no surviving shape")
        case = EXPONENT_CASES[e]
        forms = {}
        reverse = _exponent(shift, Fraction(0))
        for first, second, exponent, label in ((a_k, a_jk, e, "pair"), (a_jk, a_k, reverse, "reverse pair")):
            if exponent not in EXPONENT_CASES:
                raise NoSolution(f"{label} ({first}, {second}) has no surviving shape")
            forms[label] = _pair_candidate(first, second, exponent, b)
            if not _pair_residual(forms[label], first, second, b).is_zero():
                raise NoSolution(f"{label} ({first}, {second}) leaves a nonzero residual unless {CASE_CONSTRAINTS[case]}")
        return [PairForm(case, forms["pair"], CASE_CONSTRAINTS[case], {"exponent": str(e)})]

    x, y = a_k.constant_value(), a_jk.constant_value()
    e = _exponent(x, y)
    if e is None:
        raise NoSolution(f"1 + a_jk - a_k = {1 + y - x} is not a nonnegative integer")

    certificate = {"exponent": e, "specializations": []}
    for first, second, exponent, label in ((x, y, e, "pair"), (y, x, _exponent(y, x), "reverse pair")):
        if exponent is None:
            raise NoSolution(f"{label} ({first}, {second}) has exponent {1 + second - first}, not in N")
        for N in (-1, 0):
            lhs, rhs = _specialization(first, second, exponent, N)
            certificate["specializations"].append({"pair": label, "N": N, "lhs": str(lhs), "rhs": str(rhs)})
            if lhs != rhs:
                note = " (half-integer branch)" if first + second + 1 == 0 and N == 0 else ""
                raise NoSolution(f"{label} ({first}, {second}) fails the d - b = {N} l specialization: "
                                 f"{lhs} != {rhs}{note}")

    form = _pair_candidate(x, y, e, b)
    if form.is_zero() or not _pair_residual(form, a_k, a_jk, b).is_zero():
        raise NoSolution(f"({x}, {y}) leaves a nonzero residual")
    case = EXPONENT_CASES[e]
    return [PairForm(case, form, CASE_CONSTRAINTS[case], certificate)]


def propagate_zero(mod, window=None):
    """Zero/nonzero dichotomy of the structure coefficients via the two propagation rules."""
    pairs = mod.pairs(window)
    zeros = {pair for pair in pairs if mod.f(*pair).is_zero()}
    closure = set(zeros)
    queue = list(zeros)
    while queue:
        j, k = queue.pop()
        # f_{j,k} = 0 forces every f_{i+j,k}; f_{0,t} = 0 forces every f with target t
        implied = {(p, q) for p, q in pairs if q == k}
        if j == 0:
            implied |= {(p, q) for p, q in pairs if mod.target(p, q) == mod.target(j, k)}
        for pair in implied - closure:
            closure.add(pair)
            queue.append(pair)

    report = CheckReport(name="zero-propagation", checked=len(pairs))
    if not zeros:
        report.details["verdict"] = "nowhere-zero"
    elif zeros == set(pairs):
        report.details["verdict"] = "trivial"
    else:
        witnesses = sorted(closure - zeros)
        raise DichotomyViolated(
            f"{len(zeros)} of {len(pairs)} coefficients vanish; the zero set is not closed",
            witnesses=[list(w) for w in witnesses[:5]],
        )
    return report


def extract_b(mod, window=None):
    """b and the sequence a_k from f_{0,k} = a_k l + b - d."""
    indices = [0] if mod.rank_one else list(window or mod.window)
    d, lam = _d(), _l()
    report = CheckReport(name="affine-shape")
    A, bs = {}, {}
    for k in indices:
        f = mod.f(0, k)
        shifted = f + d
        a_k = coefficient_of(shifted, "l", 1)
        b_k = coefficient_of(shifted, "l", 0)
        report.checked += 1
        if not (a_k.is_scalar() and b_k.is_scalar()) or shifted != a_k * lam + b_k:
            raise ShapeMismatch(f"f_(0,{k}) = {f} is not of the form a*l + b - d")
        A[k], bs[k] = a_k, b_k
    values = set(bs.values())
    if len(values) > 1:
        raise ShapeMismatch(f"b_k is not constant: {sorted(str(v) for v in values)}")
    b = bs[indices[0]]
    report.details = {"b": str(b), "A": {str(k): str(v) for k, v in A.items()}}
    return b, A, report


def normalize_cocycle(c_table, window):
    """Gauge d with -c_{j,k} = d_{j+k} / d_k, fixed by d at the base index equal to 1."""
    table = {pair: as_scalar(value) for pair, value in c_table.items()}
    for pair, value in table.items():
        if value.is_zero():
            raise CocycleViolated(f"c_{pair} is zero", witness=list(pair))

    for (j, k), c_jk in table.items():
        for (i, t), c_it in table.items():
            if t != j + k or (i + j, k) not in table:
                continue
            if -table[(i + j, k)] != c_jk * c_it:
                raise CocycleViolated(
                    f"-c_({i + j},{k}) != c_({j},{k}) c_({i},{j + k})", witness=[i, j, k])

    base = 0 if 0 in window else window.lo
    d = {base: MultiPoly.one()}
    for t in window:
        if t == base:
            continue
        if (t - base, base) not in table:
            raise CocycleViolated(f"c_({t - base},{base}) is missing", witness=[t - base, base])
        d[t] = -table[(t - base, base)]
    for (j, k), value in table.items():
        if -value * d[k] != d[j + k]:
            raise CocycleViolated(f"-c_({j},{k}) != d_{j + k} / d_{k}", witness=[j, k])
    return d


def _restrict(mod, window):
    if window is None or window == mod.window:
        return mod
    if window.lo < mod.window.lo or window.hi > mod.window.hi:
        raise UsageError(f"Window {window.as_list()} exceeds the table {mod.window.as_list()}")
    return GradedConformalModule(name=mod.name, window=window, action=mod.action)


def classify_graded(mod, window=None, deg_bound=6):
    """V_{a,b} or V_{A,b} (or trivial) for a graded table passing the module axiom."""
    if mod.rank_one:
        raise UsageError("classify_graded needs a graded table; use identify_rank_one")
    mod = _restrict(mod, window)
    certificates = []
    notes = {"window": mod.window.as_list(), "deg_bound": deg_bound, "pairs": len(mod.pairs())}

    try:
        zero = propagate_zero(mod)
    except DichotomyViolated as exc:
        raise PipelineStepFailed(ZERO_PROPAGATION, str(exc)) from exc
    certificates.append({"step": ZERO_PROPAGATION, "verdict": zero.details["verdict"]})
    if zero.details["verdict"] == "trivial":
        return ClassificationOutcome([ModuleDescriptor(TRIVIAL)], notes=notes, certificates=certificates)

    try:
        b, A, _ = extract_b(mod)
    except ShapeMismatch as exc:
        raise PipelineStepFailed(COMMON_B, str(exc)) from exc
    certificates.append({"step": COMMON_B, "b": str(b), "A": {str(k): str(v) for k, v in sorted(A.items())}})

    c_table, cases = {}, {}
    for j, k in mod.pairs():
        f = mod.f(j, k)
        if total_degree(f) > deg_bound:
            raise PipelineStepFailed(PAIR_FORM, f"f_({j},{k}) exceeds the degree bound {deg_bound}")
        try:
            pair = solve_pair_form(A[k], A[j + k], b)[0]
            c = exact_divide(f, pair.form)
        except (NoSolution, NotDivisible) as exc:
            raise PipelineStepFailed(PAIR_FORM, f"f_({j},{k}): {exc}") from exc
        if c.is_zero() or not c.is_scalar():
            raise PipelineStepFailed(PAIR_FORM, f"f_({j},{k}) / {pair.form} = {c} is not a nonzero scalar")
        c_table[(j, k)] = c
        cases[pair.case] = cases.get(pair.case, 0) + 1
    certificates.append({"step": PAIR_FORM, "cases": {str(k): v for k, v in sorted(cases.items())}})

    try:
        d = normalize_cocycle(c_table, mod.window)
    except CocycleViolated as exc:
        raise PipelineStepFailed(COCYCLE, str(exc)) from exc

    if len(set(A.values())) == 1:
        descriptor = descriptor_for(GRADED_UNIFORM, a=A[mod.window.lo], b=b)
    else:
        descriptor = descriptor_for(GRADED_SEQUENCE, A=A, b=b)

    try:
        rebuilt = change_basis(instantiate(descriptor, mod.window), {k: inverse(v) for k, v in d.items()})
        matches = same_table(rebuilt, mod)
    except LoopConfError as exc:
        raise PipelineStepFailed(ROUND_TRIP, str(exc)) from exc
    if not matches:
        raise PipelineStepFailed(ROUND_TRIP, f"{descriptor.label()} does not reproduce the input table")
    certificates.append({"step": ROUND_TRIP, "descriptor": descriptor.label()})
    logger.debug("Classified %s as %s", mod.name, descriptor.label())

    return ClassificationOutcome(
        descriptors=[descriptor],
        normalization=d,
        notes=notes,
        certificates=certificates,
    )
