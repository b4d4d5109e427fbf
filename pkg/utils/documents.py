"""
JSON documents describing algebras, modules and derivations.

A document is an object with exactly one of the sections "algebra", "module"
or "derivation". Entries map comma-separated index tuples to polynomial
strings; "*" matches any index and exact keys take precedence.
"""
import json
import logging
from pathlib import Path

from models.algebra import GradedConformalAlgebra
from models.derivation import ConformalDerivation
from models.module import GradedConformalModule
from models.poly import OPERATOR_VARIABLES, MultiPoly, declare_parameters, parse
from models.report import IndexWindow
from utils.errors import ParseError, PolySyntaxError, ValidationError, WindowExceeded

logger = logging.getLogger(__name__)

SECTIONS = ("algebra", "module", "derivation")
WILDCARD = "*"


def _read(source):
    if isinstance(source, dict):
        return source
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"Cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"Invalid JSON: {exc.msg}", position=exc.pos) from exc


def _window(body, entry="window"):
    value = body.get("window")
    if not (isinstance(value, list) and len(value) == 2 and all(isinstance(v, int) for v in value)):
        raise ValidationError("window must be a [lo, hi] pair of integers", entry=entry)
    window = IndexWindow(*value)
    if window.is_empty():
        raise ValidationError("window is empty", entry=entry)
    return window


def _key(text, arity):
    parts = [part.strip() for part in str(text).split(",")]
    if len(parts) != arity:
        raise ValidationError(f"Entry key {text!r} needs {arity} comma-separated indices", entry=text)
    key = []
    for part in parts:
        if part == WILDCARD:
            key.append(WILDCARD)
            continue
        try:
            key.append(int(part))
        except ValueError:
            raise ValidationError(f"Entry key {text!r} has a non-integer index {part!r}", entry=text) from None
    return tuple(key)


def _poly(text, entry):
    if not isinstance(text, str):
        raise ValidationError("Polynomial entries must be strings", entry=entry)
    try:
        return parse(text)
    except PolySyntaxError as exc:
        raise ParseError(str(exc), position=exc.position, entry=entry) from exc


def _entries(body, arity, convert):
    raw = body.get("entries")
    if not isinstance(raw, dict) or not raw:
        raise ValidationError("entries must be a nonempty object", entry="entries")
    return {_key(key, arity): convert(value, key) for key, value in raw.items()}


class _Table:
    """Lookup with exact keys first, then keys with fewer wildcards."""

    def __init__(self, entries):
        self.entries = entries

    def resolve(self, key):
        if key in self.entries:
            return self.entries[key]
        best = None
        for pattern, value in self.entries.items():
            if all(p == WILDCARD or p == k for p, k in zip(pattern, key)):
                stars = pattern.count(WILDCARD)
                if best is None or stars < best[0]:
                    best = (stars, value)
        return None if best is None else best[1]

    def has_full_wildcard(self):
        return any(all(p == WILDCARD for p in pattern) for pattern in self.entries)


def _declare(body):
    names = body.get("parameters", [])
    if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
        raise ValidationError("parameters must be a list of names", entry="parameters")
    clash = [n for n in names if n in OPERATOR_VARIABLES]
    if clash:
        raise ValidationError(f"{clash[0]!r} is reserved for an operator variable", entry="parameters")
    if names:
        declare_parameters(*names)


def _load_algebra(body):
    window = _window(body)
    offsets = frozenset(body.get("grading_offsets", [0]))

    def convert(value, key):
        if isinstance(value, str):
            return _poly(value, key)
        if not isinstance(value, list):
            raise ValidationError("Algebra entries are strings or lists of [k, polynomial]", entry=key)
        emitted = []
        for item in value:
            if not (isinstance(item, list) and len(item) == 2 and isinstance(item[0], int)):
                raise ValidationError("List entries must be [k, polynomial] pairs", entry=key)
            emitted.append((item[0], _poly(item[1], key)))
        return emitted

    table = _Table(_entries(body, 2, convert))
    for key, value in table.entries.items():
        if WILDCARD in key and not isinstance(value, MultiPoly):
            raise ValidationError("Wildcard entries must be single polynomials", entry=",".join(map(str, key)))

    def rule(i, j):
        value = table.resolve((i, j))
        if value is None:
            raise WindowExceeded(f"No bracket tabulated for ({i}, {j})")
        if isinstance(value, list):
            return value
        return [(i + j, value)]

    if not table.has_full_wildcard():
        for i in window:
            for j in window:
                if table.resolve((i, j)) is None:
                    raise ValidationError(f"Window gap: no entry for ({i}, {j})", entry=f"{i},{j}")
    return GradedConformalAlgebra(name=body.get("name", "document"), bracket_rule=rule, grading_offsets=offsets)


def _load_module(body):
    table_window = _window(body)
    rank_one = bool(body.get("rank_one", False))
    table = _Table(_entries(body, 2, _poly))

    if rank_one:
        window = IndexWindow(0, 0)
        required = [(i, 0) for i in table_window]
        # v has the single index 0, so a wildcard algebra index covers every L_i
        algebra_window = None if any(key[0] == WILDCARD for key in table.entries) else table_window
    else:
        window = table_window
        required = [(t - j, j) for j in window for t in window]
        algebra_window = None

    for key in table.entries:
        i, j = key
        if j != WILDCARD and j not in window:
            raise ValidationError(f"Entry ({i}, {j}) acts on v_{j} outside the window", entry=f"{i},{j}")
        if not rank_one and WILDCARD not in key and i + j not in window:
            raise ValidationError(f"Entry ({i}, {j}) lands outside the window", entry=f"{i},{j}")
    for i, j in required:
        if table.resolve((i, j)) is None:
            raise ValidationError(f"Window gap: no entry for ({i}, {j})", entry=f"{i},{j}")

    def action(i, j):
        value = table.resolve((i, j))
        if value is None:
            raise WindowExceeded(f"No coefficient tabulated for ({i}, {j})")
        return value

    return GradedConformalModule(
        name=body.get("name", "document"),
        window=window,
        action=action,
        rank_one=rank_one,
        algebra_window=algebra_window,
    )


def _load_derivation(body):
    window = _window(body)

    def convert(value, key):
        if not isinstance(value, list):
            raise ValidationError("Derivation entries are lists of [offset, polynomial]", entry=key)
        emitted = []
        for item in value:
            if not (isinstance(item, list) and len(item) == 2 and isinstance(item[0], int)):
                raise ValidationError("Derivation entries must be [offset, polynomial] pairs", entry=key)
            emitted.append((item[0], _poly(item[1], key)))
        return emitted

    table = _Table(_entries(body, 1, convert))
    domain = None if table.has_full_wildcard() else window
    if domain is not None:
        for i in window:
            if table.resolve((i,)) is None:
                raise ValidationError(f"Window gap: no entry for {i}", entry=str(i))
    bound = max((abs(offset) for value in table.entries.values() for offset, _ in value), default=0)

    def action(i):
        value = table.resolve((i,)) or []
        return [(i + offset, poly) for offset, poly in value]

    return ConformalDerivation(
        name=body.get("name", "document"),
        action=action,
        support_bound=bound,
        domain=domain,
    )


LOADERS = {"algebra": _load_algebra, "module": _load_module, "derivation": _load_derivation}


def load_document(source):
    """(section, value) for a document path or an already decoded object."""
    data = _read(source)
    if not isinstance(data, dict):
        raise ValidationError("A document must be a JSON object")
    present = [section for section in SECTIONS if section in data]
    if len(present) != 1:
        raise ValidationError(f"A document needs exactly one of {', '.join(SECTIONS)}")
    section = present[0]
    body = data[section]
    if not isinstance(body, dict):
        raise ValidationError(f"{section} must be an object", entry=section)
    _declare(body)
    value = LOADERS[section](body)
    logger.debug("Loaded %s document %r", section, body.get("name"))
    return section, value


def _parameters(polys):
    names = set()
    for p in polys:
        names |= p.variables()
    return sorted(n for n in names if n not in OPERATOR_VARIABLES)


def dump_algebra(alg, window):
    entries = {}
    polys = []
    for i in window:
        for j in window:
            emitted = alg.bracket_rule(i, j)
            entries[f"{i},{j}"] = [[k, str(p)] for k, p in emitted]
            polys.extend(p for _, p in emitted)
    return {"algebra": {
        "name": alg.name,
        "window": window.as_list(),
        "grading_offsets": sorted(alg.grading_offsets),
        "parameters": _parameters(polys),
        "entries": entries,
    }}


def dump_module(mod, window=None):
    """Exhaustive table; window bounds the algebra indices of a rank-one module."""
    pairs = mod.pairs(window)
    entries = {f"{i},{j}": str(mod.f(i, j)) for i, j in pairs}
    if mod.rank_one:
        indices = [i for i, _ in pairs]
        table_window = [min(indices), max(indices)]
    else:
        table_window = mod.window.as_list()
    return {"module": {
        "name": mod.name,
        "window": table_window,
        "rank_one": mod.rank_one,
        "parameters": _parameters(mod.f(i, j) for i, j in pairs),
        "entries": entries,
    }}


def dump_derivation(D, window):
    entries = {}
    polys = []
    for i in window:
        terms = D.on_basis(i).terms
        entries[str(i)] = [[k - i, str(p)] for k, p in terms.items()]
        polys.extend(terms.values())
    return {"derivation": {
        "name": D.name,
        "window": window.as_list(),
        "parameters": _parameters(polys),
        "entries": entries,
    }}
