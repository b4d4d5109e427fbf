"""
Conformal derivations given by their action on basis elements.
"""
from dataclasses import dataclass, field
from typing import Callable

from models.algebra import LambdaValue
from models.poly import MultiPoly, substitute_many, var
from models.report import IndexWindow
from utils.errors import WindowExceeded


@dataclass(frozen=True)
class ConformalDerivation:
    """D_l(L_i) = sum_k g(d, l) L_k as produced by action(i); |k - i| <= support_bound."""
    name: str
    action: Callable[[int], list]
    support_bound: int
    domain: IndexWindow = None

    def on_basis(self, i, lam="l"):
        if self.domain is not None and i not in self.domain:
            raise WindowExceeded(f"{self.name} is only tabulated on {self.domain.as_list()}")
        terms = {}
        for k, poly in self.action(i):
            if abs(k - i) > self.support_bound:
                raise ValueError(f"{self.name} emits L_{k} from L_{i} beyond its support bound")
            if lam != "l":
                poly = substitute_many(poly, {"l": var(lam)})
            terms[k] = terms.get(k, MultiPoly.zero()) + poly
        return LambdaValue(terms)

    def apply(self, x, lam="l"):
        """D_lam(sum f_i(d) L_i) = sum f_i(d + lam) D_lam(L_i)."""
        shift = var("d") + var(lam)
        result = LambdaValue()
        for i, f in x.terms.items():
            factor = substitute_many(f, {"d": shift})
            result = result + self.on_basis(i, lam).scale(factor)
        return result


@dataclass
class DegreeComponent:
    """D^c with D^c_l(L_i) = f_i(d, l) L_{i+c} for i in window."""
    offset: int
    coefficients: dict = field(default_factory=dict)
    window: IndexWindow = None

    def f(self, i):
        if self.window is not None and i not in self.window:
            raise WindowExceeded(f"Component D^{self.offset} is only known on {self.window.as_list()}")
        return self.coefficients.get(i, MultiPoly.zero())

    def is_zero(self):
        return all(p.is_zero() for p in self.coefficients.values())

    def as_derivation(self):
        return ConformalDerivation(
            name=f"D^{self.offset}",
            action=lambda i: [(i + self.offset, self.f(i))],
            support_bound=abs(self.offset),
            domain=self.window,
        )


def zero_derivation():
    return ConformalDerivation(name="0", action=lambda i: [], support_bound=0)


def element_support_bound(x):
    return max((abs(i) for i in x.support()), default=0)
