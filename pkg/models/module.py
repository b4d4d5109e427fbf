"""
Conformal modules presented by structure coefficients, and the descriptors the
classifiers emit.
"""
from dataclasses import dataclass, field
from typing import Callable

from models.algebra import Combination
from models.poly import MultiPoly
from models.report import IndexWindow
from utils.errors import WindowExceeded

TRIVIAL = "trivial"
RANK_ONE = "rank_one"
GRADED_UNIFORM = "graded_uniform"
GRADED_SEQUENCE = "graded_sequence"

KINDS = (TRIVIAL, RANK_ONE, GRADED_UNIFORM, GRADED_SEQUENCE)


class ModuleElement(Combination):
    """Element sum_j h_j(d) v_j of a module."""

    symbol = "v"


@dataclass(frozen=True)
class GradedConformalModule:
    """L_i _l v_j = f(i, j)(d, l) v_{i+j}; rank-one modules have window {0} and target v."""
    name: str
    window: IndexWindow
    action: Callable[[int, int], MultiPoly]
    rank_one: bool = False
    # Algebra indices a rank-one table covers; None means every integer
    algebra_window: IndexWindow = None

    def target(self, i, j):
        return j if self.rank_one else i + j

    def f(self, i, j):
        """Structure coefficient f_{i,j}; WindowExceeded outside the table."""
        if j not in self.window:
            raise WindowExceeded(f"{self.name}: v_{j} is outside the window {self.window.as_list()}")
        if self.rank_one:
            if self.algebra_window is not None and i not in self.algebra_window:
                raise WindowExceeded(f"{self.name}: L_{i} is outside the tabulated range")
        elif i + j not in self.window:
            raise WindowExceeded(f"{self.name}: v_{i + j} is outside the window {self.window.as_list()}")
        return self.action(i, j)

    def pairs(self, algebra_window=None):
        """In-window (i, j) pairs; rank-one modules pair every algebra index with 0."""
        if self.rank_one:
            indices = algebra_window or self.algebra_window
            if indices is None:
                raise WindowExceeded(f"{self.name}: an algebra window is required for a rank-one table")
            return [(i, 0) for i in indices]
        return [(t - j, j) for j in self.window for t in self.window]


@dataclass
class ModuleDescriptor:
    """Normal form of a classified module; parameters are scalar MultiPolys."""
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"Unknown module kind: {self.kind}")

    def label(self):
        if self.kind == TRIVIAL:
            return "Trivial"
        if self.kind == RANK_ONE:
            return "RankOne({a}, {b}, {c})".format(**{k: str(v) for k, v in self.params.items()})
        if self.kind == GRADED_UNIFORM:
            return "GradedUniform({a}, {b})".format(**{k: str(v) for k, v in self.params.items()})
        sequence = ", ".join(f"{k}: {v}" for k, v in sorted(self.params["A"].items()))
        return f"GradedSequence({{{sequence}}}, {self.params['b']})"

    def __eq__(self, other):
        if not isinstance(other, ModuleDescriptor):
            return NotImplemented
        return self.kind == other.kind and self.to_dict() == other.to_dict()

    def to_dict(self):
        params = {}
        for key, value in self.params.items():
            if isinstance(value, dict):
                params[key] = {str(k): str(v) for k, v in sorted(value.items())}
            else:
                params[key] = str(value)
        return {"kind": self.kind, "label": self.label(), "params": params}
