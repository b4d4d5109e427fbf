"""
Exact linear algebra over the rationals for the bounded-degree solvers.
"""
from sympy import Matrix, cancel, eye

from models.poly import MultiPoly, degree_in, monomial_coefficients, substitute_many, var
from utils.errors import NotShiftInvariant, VerificationFailed


def solve_linear_family(basis, residual, names):
    """Basis of the p in span(basis) with residual(p) = 0.

    residual must be linear; its coefficients are compared monomial by
    monomial in the given names, so other indeterminates act as constants.
    """
    columns = [monomial_coefficients(residual(p), names) for p in basis]
    keys = sorted(set().union(*[set(c) for c in columns])) if columns else []
    if not keys:
        vectors = [eye(len(basis)).col(t) for t in range(len(basis))]
    else:
        matrix = Matrix([[c.get(key, MultiPoly.zero()).to_sympy() for c in columns] for key in keys])
        vectors = matrix.nullspace(simplify=True)
    solutions = []
    for vector in vectors:
        combination = MultiPoly.zero()
        for entry, p in zip(vector, basis):
            if entry != 0:
                combination = combination + _from_entry(entry) * p
        solutions.append(combination)
    for p in solutions:
        if not residual(p).is_zero():
            raise VerificationFailed(f"Nullspace vector {p} leaves a nonzero residual")
    return solutions


def _from_entry(entry):
    try:
        return MultiPoly.from_sympy(cancel(entry))
    except Exception as exc:
        raise VerificationFailed(f"Solution entry {entry} is not polynomial in the parameters") from exc


def vandermonde_inverse(n):
    """Inverse of the (n+1)x(n+1) matrix [k^j] on the nodes k = 0..n."""
    return Matrix(n + 1, n + 1, lambda k, j: k ** j).inv()


def vandermonde_reduce(g, n):
    """a_0(l) for a shift-invariant g(d, l) = sum_j a_j(l) d^j.

    Evaluates g at d = k*l for k = 0..n, solves for the a_j(l) l^j and checks
    that every j >= 1 term vanishes.
    """
    d, lam = var("d"), var("l")
    if substitute_many(g, {"d": d + lam}) != g:
        raise NotShiftInvariant(f"{g} changes under d -> d + l")
    if not g.is_zero() and degree_in(g, "d") > n:
        raise ValueError(f"n = {n} is below the d-degree of {g}")
    values = [substitute_many(g, {"d": MultiPoly.const(k) * lam}) for k in range(n + 1)]
    inverse = vandermonde_inverse(n)
    unknowns = []
    for j in range(n + 1):
        total = MultiPoly.zero()
        for k in range(n + 1):
            q = inverse[j, k]
            if q != 0:
                total = total + MultiPoly.from_sympy(q) * values[k]
        unknowns.append(total)
    for j, u in enumerate(unknowns[1:], start=1):
        if not u.is_zero():
            raise VerificationFailed(f"a_{j}(l) l^{j} = {u} does not vanish")
    return unknowns[0]
