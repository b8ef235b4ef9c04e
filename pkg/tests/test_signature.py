"""Signatures: declarations, identifier rules, lookup."""

import pytest

from eqlogic import OpDecl, arity, validate_signature
from eqlogic.errors import (
    DuplicateOperator,
    DuplicateSort,
    InvalidIdentifier,
    UndeclaredSort,
    UnknownOperator,
)


def test_accepts_valid_signature():
    sig = validate_signature(
        ["M"], [("plus", ["M", "M"], "M"), ("e", [], "M")]
    )
    assert sig.sorts == frozenset({"M"})
    assert sig.op("plus") == OpDecl("plus", ("M", "M"), "M")
    assert sig.op("e") == OpDecl("e", (), "M")
    assert arity(sig, "plus") == ("M", "M")
    assert arity(sig, "e") == ()


def test_opdecl_and_tuple_forms_agree():
    a = validate_signature(["M"], [OpDecl("f", ("M",), "M")])
    b = validate_signature(["M"], [("f", ["M"], "M")])
    assert a == b


def test_sorted_accessors():
    sig = validate_signature(
        ["B", "A"], [("g", [], "B"), ("f", ["B"], "A")]
    )
    assert sig.sorted_sorts() == ["A", "B"]
    assert [d.name for d in sig.sorted_ops()] == ["f", "g"]


def test_duplicate_sort_rejected():
    with pytest.raises(DuplicateSort):
        validate_signature(["M", "M"], [])


def test_duplicate_operator_rejected():
    with pytest.raises(DuplicateOperator):
        validate_signature(["M"], [("f", [], "M"), ("f", ["M"], "M")])


def test_undeclared_argument_sort_rejected():
    with pytest.raises(UndeclaredSort):
        validate_signature(["M"], [("f", ["N"], "M")])


def test_undeclared_result_sort_rejected():
    with pytest.raises(UndeclaredSort):
        validate_signature(["M"], [("f", ["M"], "N")])


@pytest.mark.parametrize("bad", ["", "2bad", "a b", "-x", "a.b", "é"])
def test_invalid_sort_name_rejected(bad):
    with pytest.raises(InvalidIdentifier):
        validate_signature([bad], [])


@pytest.mark.parametrize("bad", ["", "1f", "f g", "(f)"])
def test_invalid_operator_name_rejected(bad):
    with pytest.raises(InvalidIdentifier):
        validate_signature(["M"], [(bad, [], "M")])


@pytest.mark.parametrize("good", ["x", "X9", "_tmp", "x'", "my-op", "a'b-c"])
def test_permissive_identifier_forms_accepted(good):
    sig = validate_signature([good], [])
    assert good in sig.sorts


def test_unknown_operator_lookup():
    sig = validate_signature(["M"], [])
    with pytest.raises(UnknownOperator):
        sig.op("plus")
    with pytest.raises(UnknownOperator):
        arity(sig, "plus")


def test_error_kind_matches_class_name():
    try:
        validate_signature(["M", "M"], [])
    except DuplicateSort as err:
        assert err.kind == "DuplicateSort"
        assert err.line is None and err.column is None
        err.at(3, 7)
        assert (err.line, err.column) == (3, 7)
        # First position sticks.
        err.at(9, 9)
        assert (err.line, err.column) == (3, 7)
