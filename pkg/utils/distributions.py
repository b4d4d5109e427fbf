"""
Formal distribution calculus: delta distributions, locality, the expansion of a
local distribution in derivatives of delta, and the formal Fourier transform that
turns [L_i(z), L_j(w)] into the lambda-bracket of L_i and L_j.
"""
import logging

from sympy import Matrix, Rational, binomial, factorial, ff

from models.algebra import LambdaValue
from models.distribution import ZERO, Distribution1, Distribution2, LoopElement
from models.poly import MultiPoly, var
from models.report import CheckReport, IndexWindow
from utils.errors import NotLocal, RegionExhausted, VerificationFailed

logger = logging.getLogger(__name__)

# L_i(z) = sum_alpha L_{alpha,i} z^{-alpha-2}
L_WEIGHT_SHIFT = 2


def make_L_distribution(i, alpha_band, shift=L_WEIGHT_SHIFT):
    """L_i(w) truncated to alpha in alpha_band; shift is the family's exponent shift."""
    if alpha_band.is_empty():
        raise ValueError("alpha band must be nonempty")
    coeffs = {-alpha - shift: LoopElement.basis(alpha, i) for alpha in alpha_band}
    exponents = IndexWindow(-alpha_band.hi - shift, -alpha_band.lo - shift)
    return Distribution1(coeffs, exponents, exponents)


def make_delta(band):
    """delta(z, w) = sum_i z^i w^{-i-1} for i in band."""
    return delta_derivative(0, band)


def delta_derivative(j, band):
    """d_w^j delta(z, w) / j! = sum_i binom(-i-1, j) z^i w^{-i-1-j}."""
    coeffs = {}
    for i in band:
        q = int(binomial(-i - 1, j))
        coeffs[(i, -i - 1 - j)] = LoopElement.scalar(q)
    ws = IndexWindow(-band.hi - 1 - j, -band.lo - 1 - j)
    return Distribution2(coeffs, (band, ws), (band, ws))


def derivative_w(a):
    """d_w of a one-variable distribution: coefficient of w^n is (n+1) a_{n+1}."""
    coeffs = {n - 1: a.coefficient(n).scale(n) for n in a.coeffs}
    validity = IndexWindow(a.validity.lo, a.validity.hi - 1)
    band = IndexWindow(a.band.lo - 1, a.band.hi - 1)
    return Distribution1(coeffs, band, validity)


def scale_distribution(a, q):
    return Distribution1({n: c.scale(q) for n, c in a.coeffs.items()}, a.band, a.validity)


def bracket_distributions(a, b):
    """[a(z), b(w)] coefficient-wise with the loop Virasoro bracket."""
    coeffs = {}
    for m, x in a.coeffs.items():
        for n, y in b.coeffs.items():
            value = x.bracket(y)
            if not value.is_zero():
                coeffs[(m, n)] = value
    return Distribution2(coeffs, (a.band, b.band), (a.validity, b.validity))


def multiply_by_z_minus_w_power(a, N):
    """(z - w)^N a(z, w); the validity region shrinks by N in both directions."""
    terms = [(s, binomial(N, s) * (-1) ** (N - s)) for s in range(N + 1)]
    coeffs = {}
    for (m, n), c in a.coeffs.items():
        for s, q in terms:
            key = (m + s, n + N - s)
            coeffs[key] = coeffs.get(key, ZERO) + c.scale(q)
    zs, ws = a.validity
    validity = (IndexWindow(zs.lo + N, zs.hi), IndexWindow(ws.lo + N, ws.hi))
    bz, bw = a.band
    band = (IndexWindow(bz.lo, bz.hi + N), IndexWindow(bw.lo, bw.hi + N))
    return Distribution2(coeffs, band, validity, dict(a.meta))


def is_local(a, N):
    """True iff (z - w)^N a vanishes on the shrunk validity region."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    product = multiply_by_z_minus_w_power(a, N)
    if product.region_is_empty():
        raise RegionExhausted(f"No coefficients left to check after multiplying by (z-w)^{N}")
    return all(product.coefficient(m, n).is_zero() for m, n in product.valid_points())


def locality_order(a, max_order):
    """Smallest N <= max_order with (z - w)^N a = 0, or None."""
    for N in range(max_order + 1):
        if is_local(a, N):
            return N
    return None


def residue_z(a, j):
    """c^j(w) = Res_z (z - w)^j a(z, w), the z^{-1} coefficient after binomial expansion."""
    zs, ws = a.validity
    if not (zs.lo <= -1 - j and -1 <= zs.hi):
        raise RegionExhausted(f"Residue of order {j} needs z-exponents {-1 - j}..-1 in the validity region")
    validity = IndexWindow(ws.lo + j, ws.hi)
    if validity.is_empty():
        raise RegionExhausted(f"Residue of order {j} leaves no valid w-exponents")
    coeffs = {}
    for n in validity:
        total = ZERO
        for s in range(j + 1):
            q = binomial(j, s) * (-1) ** (j - s)
            total = total + a.coefficient(-1 - s, n - (j - s)).scale(q)
        if not total.is_zero():
            coeffs[n] = total
    return Distribution1(coeffs, validity, validity)


def reconstruct(components, a):
    """Compare sum_j c^j(w) d_w^j delta / j! with a wherever every c^j is exact.

    Returns the number of coefficients compared; raises NotLocal on mismatch.
    """
    zs, ws = a.validity
    compared = 0
    for m in zs:
        for n in ws:
            indices = [m + n + 1 + j for j in range(len(components))]
            if not all(idx in c.validity for idx, c in zip(indices, components)):
                continue
            total = ZERO
            for j, (idx, c) in enumerate(zip(indices, components)):
                q = int(binomial(-m - 1, j))
                if q:
                    total = total + c.coefficient(idx).scale(q)
            compared += 1
            if total != a.coefficient(m, n):
                raise NotLocal(f"Delta expansion disagrees with the distribution at z^{m} w^{n}")
    if not compared:
        raise RegionExhausted("Reconstruction region is empty")
    return compared


def decompose_local(a, max_order):
    """[c^0(w), ..., c^max_order(w)] with a = sum_j c^j(w) d_w^j delta / j!."""
    components = [residue_z(a, j) for j in range(max_order + 1)]
    compared = reconstruct(components, a)
    logger.debug("Delta expansion up to order %d verified on %d coefficients", max_order, compared)
    return components


def fourier_lambda(a, max_order):
    """F^lambda a = sum_j lambda^j / j! * Res_z (z - w)^j a, as {j: Distribution1}."""
    components = decompose_local(a, max_order)
    return {j: scale_distribution(c, Rational(1, factorial(j)))
            for j, c in enumerate(components) if not c.is_zero()}


def _solve_field_polynomial(dist, k, max_degree, shift):
    """h_t with dist = sum_t h_t d_w^t L_k(w) on the validity region of dist."""
    unknowns = max_degree + 1
    rows, rhs = [], []
    for n in dist.validity:
        coeff = dist.coefficient(n).component(k)
        expected = set()
        for t in range(unknowns):
            alpha = -n - shift - t
            expected.add((alpha, k))
            row = [0] * unknowns
            row[t] = ff(n + t, t) if t else 1
            rows.append(row)
            q = coeff.terms.get((alpha, k), Rational(0))
            rhs.append(q)
        stray = set(coeff.terms) - expected
        if stray:
            raise VerificationFailed(f"w^{n} coefficient is not in the span of d_w^t L_{k}(w)")
    if not rows:
        raise RegionExhausted("Empty validity region")
    solution, params = Matrix(rows).gauss_jordan_solve(Matrix(rhs))
    if params.shape[0]:
        raise VerificationFailed(f"Derivatives of L_{k}(w) are not determined on this region")
    return list(solution)


def as_lambda_value(transform, max_degree=3, shift=L_WEIGHT_SHIFT):
    """Identify {j: Distribution1} with a LambdaValue under d <-> d_w."""
    terms = {}
    lam, d = var("l"), var("d")
    for j, dist in transform.items():
        for k in sorted(dist.loop_degrees()):
            try:
                h = _solve_field_polynomial(dist, k, max_degree, shift)
            except ValueError as exc:
                raise VerificationFailed(f"lambda^{j} part is not a polynomial in d_w applied to L_{k}(w)") from exc
            poly = MultiPoly.zero()
            for t, q in enumerate(h):
                poly = poly + MultiPoly.const(q) * d ** t
            terms[k] = terms.get(k, MultiPoly.zero()) + poly * lam ** j
    return LambdaValue(terms)


def as_scalar_polynomial(transform):
    """lambda-polynomial of a scalar-valued transform whose components are constants."""
    result = MultiPoly.zero()
    for j, dist in transform.items():
        values = {n: c for n, c in dist.coeffs.items()}
        if set(values) - {0} or not all(c.is_scalar() for c in values.values()):
            raise VerificationFailed(f"lambda^{j} part is not a constant distribution")
        q = values[0].terms.get("1", 0) if values else 0
        result = result + MultiPoly.const(q) * var("l") ** j
    return result


def derive_bracket(i, j, alpha_band, max_order=2):
    """The lambda-bracket [L_i _l L_j] re-derived from the loop algebra."""
    band = IndexWindow.symmetric(alpha_band) if isinstance(alpha_band, int) else alpha_band
    a = bracket_distributions(make_L_distribution(i, band), make_L_distribution(j, band))
    return as_lambda_value(fourier_lambda(a, max_order))


def check_pairwise_local(indices, alpha_band, N=2):
    """Every pair L_i(z), L_j(w) of the family is local of order N."""
    report = CheckReport(name="pairwise-locality")
    band = IndexWindow.symmetric(alpha_band) if isinstance(alpha_band, int) else alpha_band
    for i in indices:
        for j in indices:
            a = bracket_distributions(make_L_distribution(i, band), make_L_distribution(j, band))
            report.checked += 1
            if not is_local(a, N):
                report.passed = False
                report.failures.append({"indices": [i, j], "note": f"not local of order {N}"})
    return report
