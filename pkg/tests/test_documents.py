"""
Tests for loading and serializing JSON documents
"""
import json

import pytest

from models.algebra import ConformalElement
from models.poly import var
from models.report import IndexWindow
from utils.axioms import check_algebra, make_CW
from utils.derivations import check_leibniz_window, degree_components, extract_inner
from utils.documents import dump_algebra, dump_derivation, dump_module, load_document
from utils.errors import ParseError, ValidationError, WindowExceeded
from utils.modules import check_module, make_V_ab, make_V_abc, same_table


def test_rank_one_module_round_trip():
    window = IndexWindow.symmetric(2)
    original = make_V_abc(1, 0, 1)
    document = dump_module(original, window)
    section, loaded = load_document(document)
    assert section == "module"
    assert loaded.rank_one
    assert same_table(loaded, original, window)
    assert dump_module(loaded) == document


def test_graded_module_round_trip(tmp_path, cw):
    window = IndexWindow.symmetric(1)
    path = tmp_path / "module.json"
    path.write_text(json.dumps(dump_module(make_V_ab("a", "b", window))))
    _, loaded = load_document(str(path))
    assert same_table(loaded, make_V_ab("a", "b", window))
    assert check_module(cw, loaded, window).passed


def test_malformed_polynomial_reports_position():
    document = {"module": {"window": [0, 0], "rank_one": True, "entries": {"0,0": "d + * l"}}}
    with pytest.raises(ParseError) as exc:
        load_document(document)
    assert exc.value.position == 4
    assert exc.value.entry == "0,0"


def test_invalid_json_reports_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"module": ')
    with pytest.raises(ParseError) as exc:
        load_document(str(path))
    assert exc.value.position is not None


def test_window_gap_is_rejected():
    document = {"module": {"window": [-1, 1], "entries": {"0,0": "-d", "0,1": "-d"}}}
    with pytest.raises(ValidationError) as exc:
        load_document(document)
    assert "gap" in str(exc.value)


def test_structural_errors():
    with pytest.raises(ValidationError):
        load_document({"module": {}, "algebra": {}})
    with pytest.raises(ValidationError):
        load_document({"signals": {}})
    with pytest.raises(ValidationError):
        load_document({"module": {"window": [1, 0], "entries": {"0,0": "d"}}})
    with pytest.raises(ValidationError):
        load_document({"module": {"window": [0, 0], "entries": {"0": "d"}}})
    with pytest.raises(ValidationError):
        load_document({"module": {"window": [0, 0], "entries": {"0,x": "d"}}})
    with pytest.raises(ValidationError):
        load_document({"module": {"window": [0, 0], "parameters": ["d"], "entries": {"0,0": "d"}}})


def test_wildcard_algebra_matches_cw():
    _, alg = load_document({"algebra": {"name": "cw-doc", "window": [-2, 2], "entries": {"*,*": "-d - 2*l"}}})
    window = IndexWindow.symmetric(2)
    assert all(r.passed for r in check_algebra(alg, window))
    assert alg.basis_bracket(7, -3) == make_CW().basis_bracket(7, -3)


def test_tabulated_algebra_skips_unknown_brackets():
    window = IndexWindow.symmetric(1)
    _, alg = load_document(dump_algebra(make_CW(), window))
    skew, jacobi, graded = check_algebra(alg, window)
    assert skew.passed and jacobi.passed and graded.passed
    assert jacobi.details["coverage"]["skipped"] > 0
    with pytest.raises(WindowExceeded):
        alg.bracket_rule(2, 2)


def test_exact_keys_take_precedence():
    document = {"algebra": {"window": [0, 1], "entries": {"*,*": "-d - 2*l", "1,1": [[2, "0"]]}}}
    _, alg = load_document(document)
    assert alg.basis_bracket(1, 1).is_zero()
    assert not alg.basis_bracket(0, 1).is_zero()


def test_declared_parameters():
    document = {"module": {"window": [0, 0], "rank_one": True, "parameters": ["e"],
                           "entries": {"*,0": "e*l - d"}}}
    _, mod = load_document(document)
    assert mod.f(5, 0) == var("e") * var("l") - var("d")


def test_derivation_document(cw):
    document = {"derivation": {"window": [-2, 2], "entries": {"*": [[1, "d*l + 2*l^2"]]}}}
    _, D = load_document(document)
    window = IndexWindow.symmetric(2)
    assert check_leibniz_window(cw, D, window).passed
    (component,) = degree_components(D, window)
    assert extract_inner(cw, component, window, 3) == ConformalElement.basis(1, var("d"))
    assert dump_derivation(D, window)["derivation"]["entries"]["0"] == [[1, "d*l + 2*l^2"]]
