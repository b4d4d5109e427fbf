"""
Result values shared by the checkers, solvers and classifiers.
"""
from dataclasses import dataclass, field


@dataclass(frozen=True)
class IndexWindow:
    """Closed integer interval [lo, hi]; empty when lo > hi."""
    lo: int
    hi: int

    @classmethod
    def symmetric(cls, n):
        if n < 0:
            return cls(0, -1)
        return cls(-n, n)

    @classmethod
    def empty(cls):
        return cls(0, -1)

    def __contains__(self, index):
        return self.lo <= index <= self.hi

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def __len__(self):
        return max(0, self.hi - self.lo + 1)

    def is_empty(self):
        return self.lo > self.hi

    def as_list(self):
        return [self.lo, self.hi]


def _witness(value):
    """Polynomial string, or {basis index: polynomial string} for a combination."""
    terms = getattr(value, "terms", None)
    if isinstance(terms, dict):
        return {str(index): str(coeff) for index, coeff in terms.items()}
    return str(value)


@dataclass
class CheckReport:
    """Outcome of an identity check; failures carry witnesses, never exceptions."""
    name: str
    passed: bool = True
    checked: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def record(self, indices, lhs, rhs, note=None):
        """Count one instance; store a witness when lhs != rhs."""
        self.checked += 1
        if lhs != rhs:
            self.passed = False
            witness = {"indices": list(indices), "lhs": _witness(lhs), "rhs": _witness(rhs)}
            basis = getattr(lhs, "symbol", None) or getattr(rhs, "symbol", None)
            if basis:
                witness["basis"] = basis
            if note:
                witness["note"] = note
            self.failures.append(witness)
            return False
        return True

    def fail(self, indices, note, **extra):
        self.checked += 1
        self.passed = False
        self.failures.append({"indices": list(indices), "note": note, **extra})

    def merge(self, other):
        self.checked += other.checked
        self.passed = self.passed and other.passed
        self.failures.extend(other.failures)
        return self

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            "details": self.details,
        }


@dataclass
class SolverResult:
    """Solutions of a bounded-degree functional equation plus residual certificate."""
    solution_basis: list
    dimension: int
    certificate: list = field(default_factory=list)

    def to_dict(self):
        return {
            "solution_basis": [str(p) for p in self.solution_basis],
            "dimension": self.dimension,
            "certificate": self.certificate,
        }


@dataclass
class ClassificationOutcome:
    descriptors: list
    normalization: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)
    certificates: list = field(default_factory=list)

    def to_dict(self):
        return {
            "descriptors": [d.to_dict() for d in self.descriptors],
            "normalization": {str(k): str(v) for k, v in sorted(self.normalization.items())},
            "notes": self.notes,
            "certificates": self.certificates,
        }


@dataclass
class PairForm:
    """One surviving case of the pair analysis: f_{j,k} = c * form under constraint."""
    case: int
    form: object
    constraint: str
    certificate: dict = field(default_factory=dict)

    def to_dict(self):
        return {"case": self.case, "form": str(self.form), "constraint": self.constraint,
                "certificate": self.certificate}
