import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homleib import catalog
from homleib.document import AlgebraDocument, DocumentError, dumps, from_json, loads, to_json
from homleib.exactla import GF, QQ
from homleib.homalg import HomAlgebra

BASE = {
    "schema": 1,
    "field": "Q",
    "dim": 2,
    "basis": ["e1", "e2"],
    "brackets": [{"left": "e2", "right": "e2", "value": {"e1": "1"}}],
    "alpha": [["1", "0"], ["0", "1"]],
}


def doc(**changes):
    d = json.loads(json.dumps(BASE))
    d.update(changes)
    return d


def test_parse_basic_document():
    D = from_json(BASE)
    assert D.algebra == catalog.instantiate("L_2^1")
    assert D.params == {}


@pytest.mark.parametrize("id_", catalog.IDS)
def test_roundtrip_catalog(id_):
    params = catalog.default_params(id_) or {}
    A = catalog.instantiate(id_, "listed", params)
    text = dumps(A, params)
    again = loads(text)
    assert again.algebra == A
    assert dumps(again) == text


def test_roundtrip_graded_and_finite_field():
    A = catalog.superalgebra_example(2, 3, 5, "1/2")
    assert loads(dumps(A)).algebra == A
    B = catalog.instantiate("L_1^7", field=GF(5))
    data = to_json(B)
    assert data["field"] == {"Fp": 5}
    assert loads(dumps(B)).algebra == B


def test_serialization_is_deterministic():
    A = catalog.instantiate("L_1^6", params={"y1": 2, "z1": 3})
    assert dumps(A) == dumps(A)
    assert list(json.loads(dumps(A))) == sorted(json.loads(dumps(A)))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=7), min_size=12, max_size=12))
def test_roundtrip_arbitrary_constants(vals):
    sc = tuple(tuple(tuple(QQ(vals[(i * 2 + j) * 2 + k]) for k in range(2)) for j in range(2)) for i in range(2))
    A = HomAlgebra.from_brackets(QQ, 2, {}, [[vals[8], vals[9]], [vals[10], vals[11]]])
    A = HomAlgebra(QQ, sc, A.alpha)
    assert loads(dumps(AlgebraDocument(A))).algebra == A


@pytest.mark.parametrize(
    "change, location",
    [
        ({"field": "R"}, "$.field"),
        ({"field": {"Fp": 2}}, "$.field"),
        ({"dim": 0}, "$.dim"),
        ({"basis": ["e1"]}, "$.basis"),
        ({"basis": ["e1", "e1"]}, "$.basis"),
        ({"schema": 2}, "$.schema"),
        ({"alpha": [["1", "0"]]}, "$.alpha"),
        ({"alpha": [["1", "0.5"], ["0", "1"]]}, "$.alpha[0][1]"),
        ({"parity": [0, 2]}, "$.parity"),
        ({"brackets": [{"left": "e3", "right": "e1", "value": {}}]}, "$.brackets[0]"),
        ({"brackets": [{"left": "e1", "right": "e1", "value": {"e7": "1"}}]}, "$.brackets[0].value.e7"),
        ({"brackets": [{"left": "e1", "right": "e1", "value": {"e1": 0.5}}]}, "$.brackets[0].value.e1"),
        ({"extra": 1}, "$"),
    ],
)
def test_errors_carry_location(change, location):
    with pytest.raises(DocumentError) as err:
        from_json(doc(**change))
    assert err.value.location == location


def test_duplicate_bracket_rejected():
    entry = {"left": "e1", "right": "e2", "value": {"e1": "1"}}
    with pytest.raises(DocumentError) as err:
        from_json(doc(brackets=[entry, entry]))
    assert err.value.location == "$.brackets[1]"


def test_invalid_grading_reported():
    # [e2, e2] = e1 is fine for e2 odd, but not for e2 even and e1 odd
    assert from_json(doc(parity=[0, 1])).algebra.graded
    with pytest.raises(DocumentError, match="not even"):
        from_json(doc(parity=[1, 0]))


def test_json_syntax_error_location():
    with pytest.raises(DocumentError) as err:
        loads('{"field": "Q",\n "dim": }')
    assert err.value.location.startswith("line 2 column")


def test_params_survive_roundtrip():
    text = dumps(catalog.instantiate("L_1^4", params={"a": 2}), {"a": "2"})
    assert loads(text).params == {"a": "2"}
