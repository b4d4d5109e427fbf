"""
Command dispatch shared by the CLI and the report service.

run() turns a RunConfig into a Report; nothing here prints or exits, so the
same code backs `cli.py` and `POST /api/run`.
"""
import logging
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from config import Config
from models.algebra import ConformalElement, bracket
from models.module import GRADED_SEQUENCE, GRADED_UNIFORM
from models.poly import parse
from models.report import CheckReport, IndexWindow
from utils.axioms import (
    check_algebra, check_bracket_sesquilinearity, detects_mutant, make_CW,
    make_offset_mutant, make_parity_mutant, structure_mutants,
)
from utils.classifier import classify_graded, identify_rank_one, solve_rank_one
from utils.derivations import check_leibniz_window, degree_components, extract_inner, verify_der_equals_inn
from utils.distributions import bracket_distributions, derive_bracket, locality_order, make_L_distribution
from utils.documents import load_document
from utils.errors import (
    DocumentError, LoopConfError, NotDivisible, UndetectedMutant, UsageError, VerificationFailed,
)
from utils.modules import (
    change_basis, check_module, descriptor_for, make_V_ab, make_V_abc, make_V_Ab, with_entry,
)

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

COMMANDS = (
    "check-algebra", "check-module", "classify-rank1", "classify-graded",
    "check-derivation", "fourier", "mutate-test",
)
FORMATS = ("text", "json")
BUILTINS = ("cw",)

# Commands that draw random inputs when no document is given
RANDOMIZED = ("classify-graded", "check-derivation")

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

# Module mutants are swept on a small window; every mutant breaks a triple near 0
MUTANT_MIN_WINDOW = 1
MUTANT_MODULE_WINDOW = 2


@dataclass
class RunConfig:
    command: str
    window: int = Config.WINDOW
    deg_bound: int = Config.DEG_BOUND
    format: str = Config.FORMAT
    input_path: str = None
    seed: int = Config.SEED
    alpha_band: int = Config.ALPHA_BAND
    i: int = 1
    j: int = 2
    builtin: str = "cw"
    trials: int = Config.TRIALS
    document: dict = None

    FIELDS = ("command", "window", "deg_bound", "format", "input_path", "seed",
              "alpha_band", "i", "j", "builtin", "trials", "document")

    @classmethod
    def from_dict(cls, data):
        """Build from a JSON body; unknown keys are a usage error."""
        if not isinstance(data, dict):
            raise UsageError("Request body must be a JSON object")
        unknown = sorted(set(data) - set(cls.FIELDS))
        if unknown:
            raise UsageError(f"Unknown field(s): {', '.join(unknown)}")
        if "command" not in data:
            raise UsageError("command is required")
        values = dict(data)
        for name in ("window", "deg_bound", "seed", "alpha_band", "i", "j", "trials"):
            value = values.get(name)
            if value is not None and (isinstance(value, bool) or not isinstance(value, int)):
                raise UsageError(f"{name} must be an integer")
        return cls(**values)

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"Unknown command {self.command!r}; expected one of {', '.join(COMMANDS)}")
        if self.format not in FORMATS:
            raise UsageError(f"format must be one of {', '.join(FORMATS)}")
        if self.builtin not in BUILTINS:
            raise UsageError(f"Unknown builtin {self.builtin!r}")
        if self.window < 0 or self.deg_bound < 0:
            raise UsageError("window and deg_bound must be nonnegative")
        if self.alpha_band < 0 or self.trials < 0:
            raise UsageError("alpha_band and trials must be nonnegative")
        if self.input_path and self.document is not None:
            raise UsageError("Give either an input path or an inline document, not both")
        if self.format == "json" and self.seed is None and self.command in RANDOMIZED and not self.has_input():
            raise UsageError(f"{self.command} draws random inputs; json output needs --seed")

    def has_input(self):
        return bool(self.input_path) or self.document is not None

    def index_window(self):
        return IndexWindow.symmetric(self.window)

    def echo(self):
        echoed = {name: value for name, value in asdict(self).items() if name != "document"}
        echoed["document"] = self.document is not None
        return echoed


@dataclass
class Report:
    config: RunConfig
    checks: list = field(default_factory=list)
    results: dict = field(default_factory=dict)
    exit_status: int = EXIT_OK
    seconds: float = 0.0
    error: dict = None

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    def coverage(self):
        return {check.name: check.details["coverage"] for check in self.checks if "coverage" in check.details}

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.config.echo(),
            "checks": [check.to_dict() for check in self.checks],
            "results": self.results,
            "coverage": self.coverage(),
            "timing": {"seconds": round(self.seconds, 6)},
            "exit_status": self.exit_status,
            "error": self.error,
        }


def _load(config, expected):
    section, value = load_document(config.document if config.document is not None else config.input_path)
    if section != expected:
        raise UsageError(f"{config.command} needs a {expected} document, got {section}")
    return value


def _rng(config, results):
    seed = config.seed
    if seed is None:
        seed = random.SystemRandom().randrange(2 ** 32)
    results["seed"] = seed
    return random.Random(seed)


def _check_algebra(config, report):
    alg = _load(config, "algebra") if config.has_input() else make_CW()
    window = config.index_window()
    report.checks.extend(check_algebra(alg, window))
    x = ConformalElement.basis(window.lo, parse("d + 1"))
    y = ConformalElement.basis(window.hi, parse("d^2"))
    try:
        report.checks.append(check_bracket_sesquilinearity(alg, x, y))
    except LoopConfError as exc:
        logger.debug("Sesquilinearity sample skipped: %s", exc)
    report.results["algebra"] = alg.name


def _check_module(config, report):
    alg = make_CW()
    window = config.index_window()
    if config.has_input():
        modules = [_load(config, "module")]
    else:
        modules = [make_V_ab("a", "b", window), make_V_abc("a", "b", "c")]
    for mod in modules:
        check = check_module(alg, mod, window)
        check.name = f"module-axiom[{mod.name}]"
        report.checks.append(check)


def _classify_rank1(config, report):
    if config.has_input():
        mod = _load(config, "module")
        if not mod.rank_one:
            raise UsageError("classify-rank1 needs a rank-one module document")
        window = mod.algebra_window or config.index_window()
        check = check_module(make_CW(), mod, window)
        report.checks.append(check)
        if check.passed:
            report.results["descriptor"] = identify_rank_one(mod, window).to_dict()
        return
    outcome = solve_rank_one(config.deg_bound)
    report.results.update(outcome.to_dict())


def _random_scales(rng, window):
    return {k: Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3)) for k in window}


def _random_rational(rng):
    return Fraction(rng.randint(-9, 9), rng.randint(1, 4))


def _classify_graded(config, report):
    if config.has_input():
        mod = _load(config, "module")
        if mod.rank_one:
            raise UsageError("classify-graded needs a graded module document")
        check = check_module(make_CW(), mod, mod.window)
        report.checks.append(check)
        if check.passed:
            report.results.update(classify_graded(mod, deg_bound=config.deg_bound).to_dict())
        return

    rng = _rng(config, report.results)
    window = config.index_window()
    campaign = CheckReport(name="graded-classification")
    for trial in range(config.trials):
        b = _random_rational(rng)
        if trial % 2 == 0:
            A = {k: rng.choice([0, -1]) for k in window}
            mod = make_V_Ab(A, b, window)
            if len(set(A.values())) == 1:
                expected = descriptor_for(GRADED_UNIFORM, a=A[window.lo], b=b)
            else:
                expected = descriptor_for(GRADED_SEQUENCE, A=A, b=b)
        else:
            a = _random_rational(rng)
            mod = make_V_ab(a, b, window)
            expected = descriptor_for(GRADED_UNIFORM, a=a, b=b)
        scaled = change_basis(mod, _random_scales(rng, window))
        try:
            found = classify_graded(scaled, deg_bound=config.deg_bound).descriptors
        except LoopConfError as exc:
            campaign.fail([trial], f"{expected.label()}: {exc}")
            continue
        if found == [expected]:
            campaign.checked += 1
        else:
            labels = ", ".join(d.label() for d in found) or "nothing"
            campaign.fail([trial], f"found {labels}, expected {expected.label()}")
    report.checks.append(campaign)


def _check_derivation(config, report):
    alg = make_CW()
    if not config.has_input():
        rng = _rng(config, report.results)
        report.checks.append(
            verify_der_equals_inn(alg, config.index_window(), config.deg_bound, config.trials, rng))
        return

    D = _load(config, "derivation")
    window = D.domain or config.index_window()
    report.checks.append(check_leibniz_window(alg, D, window))
    inner_check = CheckReport(name="inner")
    found = ConformalElement()
    for component in degree_components(D, window):
        inner_check.checked += 1
        try:
            found = found + extract_inner(alg, component, window, config.deg_bound)
        except (NotDivisible, VerificationFailed) as exc:
            inner_check.fail([component.offset], str(exc))
    report.checks.append(inner_check)
    if inner_check.passed:
        report.results["inner_element"] = str(found)


def _fourier(config, report):
    band = IndexWindow.symmetric(config.alpha_band)
    i, j = config.i, config.j
    derived = derive_bracket(i, j, band)
    expected = bracket(make_CW(), ConformalElement.basis(i), ConformalElement.basis(j))
    check = CheckReport(name="fourier-round-trip")
    check.record((i, j), derived, expected)
    report.checks.append(check)
    a = bracket_distributions(make_L_distribution(i, band), make_L_distribution(j, band))
    report.results["bracket"] = str(derived)
    report.results["locality_order"] = locality_order(a, 3)


def mutate_test(config):
    """Each mutation of cw and of the built-in module tables must be caught by some checker."""
    # Window 0 holds no triple with a nonzero index, so the sweep starts at [-1, 1]
    reach = max(config.window, MUTANT_MIN_WINDOW)
    window = IndexWindow.symmetric(reach)
    algebra = CheckReport(name="algebra-mutants", details={"window": window.as_list()})
    if detects_mutant(make_CW(), window):
        algebra.fail(["control"], "unmodified cw is flagged")
    mutants = structure_mutants() + [
        ("parity", make_parity_mutant()),
        ("offset", make_offset_mutant()),
    ]
    undetected = []
    for label, alg in mutants:
        if detects_mutant(alg, window):
            algebra.checked += 1
        else:
            algebra.fail([label], UndetectedMutant.__name__)
            undetected.append(label)

    alg = make_CW()
    small = IndexWindow.symmetric(min(reach, MUTANT_MODULE_WINDOW))
    modules = CheckReport(name="module-mutants", details={"window": small.as_list()})
    alternating = {k: 0 if k % 2 == 0 else -1 for k in small}
    for mod in (make_V_ab("a", "b", small), make_V_abc("a", "b", "c"), make_V_Ab(alternating, "b", small)):
        if not check_module(alg, mod, small).passed:
            modules.fail([mod.name, "control"], "unmodified table is flagged")
        mutant = with_entry(mod, 0, 0, mod.f(0, 0) + 1)
        if check_module(alg, mutant, small).passed:
            modules.fail([mutant.name], UndetectedMutant.__name__)
            undetected.append(mutant.name)
        else:
            modules.checked += 1
    return [algebra, modules], undetected


def _mutate_test(config, report):
    checks, undetected = mutate_test(config)
    report.checks.extend(checks)
    report.results["undetected"] = undetected
    if undetected:
        raise UndetectedMutant(undetected)


HANDLERS = {
    "check-algebra": _check_algebra,
    "check-module": _check_module,
    "classify-rank1": _classify_rank1,
    "classify-graded": _classify_graded,
    "check-derivation": _check_derivation,
    "fourier": _fourier,
    "mutate-test": _mutate_test,
}


def run(config):
    """Report for one command; exit_status 0 pass, 1 failure, 2 usage, 3 internal."""
    report = Report(config=config)
    started = time.perf_counter()
    try:
        config.validate()
        HANDLERS[config.command](config, report)
        report.exit_status = EXIT_OK if report.passed else EXIT_FAILED
    except (UsageError, DocumentError) as exc:
        report.exit_status = EXIT_USAGE
        report.error = _error(exc)
    except LoopConfError as exc:
        report.exit_status = EXIT_FAILED
        report.error = _error(exc)
    except Exception as exc:
        logger.error("Internal error in %s: %s", config.command, exc, exc_info=True)
        report.exit_status = EXIT_INTERNAL
        report.error = _error(exc)
    report.seconds = time.perf_counter() - started
    report.checks.sort(key=lambda check: check.name)
    logger.info("%s finished with status %d in %.3fs", config.command, report.exit_status, report.seconds)
    return report


def _error(exc):
    error = {"type": type(exc).__name__, "message": str(exc)}
    for name in ("position", "entry", "lemma", "witness", "witnesses"):
        value = getattr(exc, name, None)
        if value is not None:
            error[name] = value
    return error


def _witness_lines(witness):
    """One line per basis component, so each side is a bare polynomial."""
    indices = witness.get("indices")
    if "lhs" not in witness:
        return [f"      at {indices}: {witness.get('note', '')}"]
    lhs, rhs = witness["lhs"], witness["rhs"]
    if not isinstance(lhs, dict):
        return [f"      at {indices}: {lhs}  !=  {rhs}"]
    basis = witness.get("basis", "X")
    lines = []
    for key in sorted(set(lhs) | set(rhs), key=int):
        left, right = lhs.get(key, "0"), rhs.get(key, "0")
        if left != right:
            lines.append(f"      at {indices} {basis}_{key}: {left}  !=  {right}")
    return lines


def render_text(report):
    """Human-readable report; witnesses are printed in the polynomial grammar."""
    config = report.config
    lines = [f"{config.command} (window {config.index_window().as_list()}, deg-bound {config.deg_bound})"]
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        line = f"  [{status}] {check.name}: {check.checked} checked"
        coverage = check.details.get("coverage")
        if coverage and coverage.get("skipped"):
            line += f", {coverage['skipped']} outside the window"
        lines.append(line)
        for witness in check.failures[:5]:
            lines.extend(_witness_lines(witness))
    for key, value in report.results.items():
        if key == "descriptors":
            lines.append("  descriptors: " + ", ".join(d["label"] for d in value))
        elif key == "descriptor":
            lines.append(f"  descriptor: {value['label']}")
        elif key == "certificates":
            for certificate in value:
                lines.append(f"    {certificate.get('step')}: ok")
        elif key == "bracket":
            lines.append(f"  [L_{config.i} _l L_{config.j}] = {value}")
        else:
            lines.append(f"  {key}: {value}")
    if report.error:
        lines.append(f"  error ({report.error['type']}): {report.error['message']}")
    lines.append(f"  status {report.exit_status} in {report.seconds:.3f}s")
    return "\n".join(lines)
