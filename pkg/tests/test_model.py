"""Finite models: validation, evaluation, satisfaction, countermodels."""

import pytest

from eqlogic import (
    App,
    Model,
    Var,
    environments,
    equal_in_model,
    eval_env,
    eval_term,
    make_equation,
    make_substitution,
    make_theory,
    satisfies_theory,
    search_countermodel,
    validate_model,
    validate_signature,
)
from eqlogic.errors import (
    ArityMismatch,
    BudgetExceeded,
    DuplicateElement,
    EmptyCarrier,
    EquationSortMismatch,
    NonCongruentOp,
    NonIdempotentRepr,
    PartialTable,
    PreconditionFailed,
    UnboundVariable,
    UndeclaredSort,
    UnknownElement,
    UnknownOperator,
)


def plus(s, t):
    return App("plus", (s, t))


E = App("e")
X, Y, Z = Var("x"), Var("y"), Var("z")


# --- validation ----------------------------------------------------------

def test_z2_validates(z2):
    assert z2.carriers == {"M": ("0", "1")}
    assert z2.reprs == {"M": {"0": "0", "1": "1"}}
    assert z2.tables["e"][()] == "0"


def test_empty_carrier(monoid):
    with pytest.raises(EmptyCarrier):
        validate_model(monoid.signature, {}, {})
    with pytest.raises(EmptyCarrier):
        validate_model(monoid.signature, {"M": []}, {})


def test_duplicate_element(monoid):
    with pytest.raises(DuplicateElement):
        validate_model(monoid.signature, {"M": ["0", "0"]}, {})


def test_undeclared_carrier_sort(monoid):
    with pytest.raises(UndeclaredSort):
        validate_model(
            monoid.signature,
            {"M": ["0"], "N": ["0"]},
            {"plus": {("0", "0"): "0"}, "e": {(): "0"}},
        )


def test_unknown_table_operator(monoid):
    with pytest.raises(UnknownOperator):
        validate_model(
            monoid.signature,
            {"M": ["0"]},
            {"plus": {("0", "0"): "0"}, "e": {(): "0"}, "bogus": {}},
        )


def test_repr_unknown_element(monoid):
    with pytest.raises(UnknownElement):
        validate_model(
            monoid.signature,
            {"M": ["0"]},
            {"plus": {("0", "0"): "0"}, "e": {(): "0"}},
            {"M": {"7": "0"}},
        )


def test_repr_must_be_idempotent(monoid):
    with pytest.raises(NonIdempotentRepr) as exc:
        validate_model(
            monoid.signature,
            {"M": ["0", "1"]},
            {
                "plus": {(a, b): "0" for a in "01" for b in "01"},
                "e": {(): "0"},
            },
            {"M": {"0": "1", "1": "0"}},
        )
    assert exc.value.sort == "M"


def test_partial_table(monoid):
    with pytest.raises(PartialTable):
        validate_model(
            monoid.signature,
            {"M": ["0", "1"]},
            {"plus": {("0", "0"): "0"}, "e": {(): "0"}},
        )


def test_missing_table(monoid):
    with pytest.raises(PartialTable):
        validate_model(monoid.signature, {"M": ["0"]}, {"e": {(): "0"}})


def test_table_arity_checked(monoid):
    with pytest.raises(ArityMismatch):
        validate_model(
            monoid.signature,
            {"M": ["0"]},
            {"plus": {("0",): "0"}, "e": {(): "0"}},
        )


def test_table_value_must_be_an_element(monoid):
    with pytest.raises(UnknownElement):
        validate_model(
            monoid.signature,
            {"M": ["0"]},
            {"plus": {("0", "0"): "9"}, "e": {(): "0"}},
        )


def test_non_congruent_operation_rejected():
    # a and b are identified by the representative map, but f tells them
    # apart: f(a)=a while f(b)=c, and a and c are in different classes.
    sig = validate_signature(["C"], [("f", ["C"], "C")])
    with pytest.raises(NonCongruentOp) as exc:
        validate_model(
            sig,
            {"C": ["a", "b", "c"]},
            {"f": {("a",): "a", ("b",): "c", ("c",): "c"}},
            {"C": {"b": "a"}},
        )
    err = exc.value
    assert err.op == "f"
    assert {err.args, err.alt_args} == {("a",), ("b",)}


def test_congruent_quotient_accepted():
    # Same shape, but f respects the identification.
    sig = validate_signature(["C"], [("f", ["C"], "C")])
    m = validate_model(
        sig,
        {"C": ["a", "b", "c"]},
        {"f": {("a",): "c", ("b",): "c", ("c",): "a"}},
        {"C": {"b": "a"}},
    )
    assert m.same("C", "a", "b")
    assert not m.same("C", "a", "c")
    assert m.repr_of("C", "b") == "a"


# --- evaluation ----------------------------------------------------------

def test_eval_term_golden(z2):
    assert eval_term(z2, plus(X, Y), {"x": "1", "y": "1"}) == "0"
    assert eval_term(z2, E, {}) == "0"
    assert eval_term(z2, plus(plus(X, Y), X), {"x": "1", "y": "0"}) == "0"


def test_eval_term_unbound_variable(z2):
    with pytest.raises(UnboundVariable):
        eval_term(z2, X, {})


def test_eval_env_pushes_environments_back(monoid, z2):
    s = make_substitution(
        monoid.signature, {"x": plus(Y, Y)}, {"x": "M"}, {"y": "M"}
    )
    assert eval_env(z2, s, {"y": "1"}) == {"x": "0"}


def test_environment_enumeration_order(z2):
    # Variables sorted by name; the last one cycles fastest.
    envs = list(environments(z2, {"y": "M", "x": "M"}))
    assert envs == [
        {"x": "0", "y": "0"},
        {"x": "0", "y": "1"},
        {"x": "1", "y": "0"},
        {"x": "1", "y": "1"},
    ]
    assert list(environments(z2, {})) == [{}]


# --- equation and theory satisfaction -------------------------------------

def test_equation_holds_in_model(monoid, z2):
    eq = make_equation(monoid.signature, {"x": "M"}, plus(X, X), E)
    res = equal_in_model(z2, eq)
    assert res.holds and res.witness is None


def test_equation_failure_reports_first_witness(monoid, z2):
    eq = make_equation(monoid.signature, {"x": "M"}, X, E)
    res = equal_in_model(z2, eq)
    assert not res.holds
    assert res.witness == {"x": "1"}


def test_equality_respects_representatives():
    # One sort with 0 identified to 1; x = e holds although the labels differ.
    sig = validate_signature(["M"], [("e", [], "M")])
    m = validate_model(
        sig, {"M": ["0", "1"]}, {"e": {(): "0"}}, {"M": {"1": "0"}}
    )
    theory = make_theory(sig, {})
    eq = make_equation(sig, {"x": "M"}, X, App("e"))
    assert equal_in_model(m, eq).holds
    assert satisfies_theory(m, theory).holds


def test_bundled_models_satisfy_their_theories(monoid, semilattice, z2, z3, meet2):
    assert satisfies_theory(z2, monoid).holds
    assert satisfies_theory(z3, monoid).holds
    assert satisfies_theory(meet2, semilattice).holds


def test_satisfies_reports_first_failing_equation(monoid):
    # Constant plus: assoc still holds, so unitL is the first failure.
    broken = validate_model(
        monoid.signature,
        {"M": ["0", "1"]},
        {"plus": {(a, b): "0" for a in "01" for b in "01"}, "e": {(): "0"}},
    )
    res = satisfies_theory(broken, monoid)
    assert not res.holds
    assert res.failed == "unitL"
    assert res.witness == {"x": "1"}


def test_make_equation_requires_matching_sorts():
    sig = validate_signature(["A", "B"], [("a", [], "A"), ("b", [], "B")])
    with pytest.raises(EquationSortMismatch):
        make_equation(sig, {}, App("a"), App("b"))


def test_make_theory_validates_names_and_equations(monoid):
    from eqlogic.errors import DuplicateEquation, InvalidIdentifier

    eq = monoid.equations["unitL"]
    with pytest.raises(InvalidIdentifier):
        make_theory(monoid.signature, {"9bad": eq})
    # Pair form allows (and rejects) repeated names.
    with pytest.raises(DuplicateEquation):
        make_theory(monoid.signature, [("q", eq), ("q", eq)])
    rebuilt = make_theory(monoid.signature, dict(monoid.equations))
    assert rebuilt == monoid
    assert make_theory(monoid.signature, list(monoid.equations.items())) == monoid


# --- substitution lemma, small deterministic instance ----------------------

def test_substitution_lemma_instance(monoid, z2):
    sig = monoid.signature
    source = {"x": "M", "y": "M"}
    target = {"u": "M", "v": "M"}
    s = make_substitution(
        sig,
        {"x": App("plus", (Var("u"), Var("v"))), "y": App("e")},
        source,
        target,
    )
    t = plus(X, plus(Y, X))
    from eqlogic import subst_apply

    for env in environments(z2, target):
        direct = eval_term(z2, subst_apply(sig, t, s), env)
        via_env = eval_term(z2, t, eval_env(z2, s, env))
        assert z2.same("M", direct, via_env)


# --- countermodel search ---------------------------------------------------

def test_search_finds_nothing_for_derivable_equation(monoid):
    eq = make_equation(monoid.signature, {"x": "M"}, plus(E, X), X)
    assert search_countermodel(monoid, eq, 2) is None


def test_search_finds_first_refuting_model(monoid, z2):
    # x = e is not derivable; the first refuting monoid in enumeration
    # order is exactly the mod-2 table.
    eq = make_equation(monoid.signature, {"x": "M"}, X, E)
    found = search_countermodel(monoid, eq, 2)
    assert found is not None
    m, witness = found
    assert witness == {"x": "1"}
    assert m.tables == z2.tables
    assert m.carriers == z2.carriers
    # Determinism: a second run returns the same model.
    again = search_countermodel(monoid, eq, 2)
    assert again is not None and again[0] == m and again[1] == witness


def test_search_budget_is_enforced(monoid):
    comm = make_equation(
        monoid.signature, {"x": "M", "y": "M"}, plus(X, Y), plus(Y, X)
    )
    with pytest.raises(BudgetExceeded):
        search_countermodel(monoid, comm, 2, budget=3)


def test_search_precondition_failures(monoid):
    eq = make_equation(monoid.signature, {"x": "M"}, X, E)
    with pytest.raises(PreconditionFailed):
        search_countermodel(monoid, eq, 0)
    with pytest.raises(PreconditionFailed):
        search_countermodel(monoid, eq, 2, budget=0)
