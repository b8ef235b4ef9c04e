"""The term model and the constructive content of completeness.

Terms over a fixed context, quotiented by derivable equality, form a
model of the theory.  This module does not re-package that quotient as a
finite Model (it is not finite); it exposes the constructions that make
it a model, each returning a checkable derivation:

  identity_derivation   t[id] is derivably equal to t
  evaluation_derivation evaluating t in the term model along a
                        substitution agrees with substitution into t
  satisfies_derivation  every axiom instance is derivable, which is the
                        statement that the term model satisfies the theory
  completeness          from evidence that an equation holds in the term
                        model under the identity substitution, produce a
                        derivation of the equation itself

The derivation builders are deliberately structural (Base at variables,
App at applications, Refl only where evaluation meets a variable) rather
than collapsed into a single Refl node, so the output mirrors the
inductive argument and exercises the checker.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import term as tm
from .calculus import (
    App,
    Base,
    Derivation,
    Hyp,
    Judgment,
    Refl,
    Sub,
    Sym,
    Trans,
    check_derivation,
    format_judgment,
)
from .errors import ContextMismatch, EvidenceMismatch, MissingBinding, UnknownHypothesis
from .model import Equation, Theory, make_equation
from .term import (
    Context,
    Substitution,
    format_context,
    make_context,
    make_substitution,
    sort_of,
)


@dataclass(frozen=True)
class TermModelHandle:
    """The term model of a theory at a context, as data to evaluate against."""

    theory: Theory
    context: Context


def term_model(theory: Theory, ctx: Context) -> TermModelHandle:
    return TermModelHandle(theory, make_context(theory.signature, ctx))


def identity_subst(ctx: Context) -> Substitution:
    """Each variable of ctx maps to itself."""
    return Substitution({x: tm.Var(x) for x in ctx}, dict(ctx), dict(ctx))


def identity_derivation(theory: Theory, ctx: Context, t: tm.Term) -> Derivation:
    """Derivation of t[id] equal to t: Base at variables, App at applications."""
    sort_of(theory.signature, ctx, t)
    return _identity(t)


def _identity(t: tm.Term) -> Derivation:
    match t:
        case tm.Var(name):
            return Base(name)
        case tm.App(op, args):
            return App(op, tuple(_identity(a) for a in args))
    raise TypeError(f"not a term: {t!r}")


def tm_eval(handle: TermModelHandle, t: tm.Term, subst: Substitution) -> tm.Term:
    """Evaluate t in the term model along subst.

    Substitutions into the handle's context are the environments of the
    term model.  The recursion reads off the model structure: variables
    are looked up, operators build applications.  The result coincides
    with subst_apply, which is the evaluation lemma below.
    """
    if subst.target != handle.context:
        raise ContextMismatch(
            "term model evaluation",
            format_context(handle.context),
            format_context(subst.target),
        )
    return _tm_eval(t, subst)


def _tm_eval(t: tm.Term, subst: Substitution) -> tm.Term:
    match t:
        case tm.Var(name):
            try:
                return subst.mapping[name]
            except KeyError:
                raise MissingBinding(name) from None
        case tm.App(op, args):
            return tm.App(op, tuple(_tm_eval(a, subst) for a in args))
    raise TypeError(f"not a term: {t!r}")


def evaluation_derivation(theory: Theory, t: tm.Term, subst: Substitution) -> Derivation:
    """Derivation that evaluation along subst equals substitution into t.

    Refl at the image of each variable, App at applications; checked
    under the substitution's target context it concludes
    tm_eval(t, subst) equal to subst_apply(t, subst).
    """
    sort_of(theory.signature, subst.source, t)
    return _evaluation(t, subst)


def _evaluation(t: tm.Term, subst: Substitution) -> Derivation:
    match t:
        case tm.Var(name):
            try:
                return Refl(subst.mapping[name])
            except KeyError:
                raise MissingBinding(name) from None
        case tm.App(op, args):
            return App(op, tuple(_evaluation(a, subst) for a in args))
    raise TypeError(f"not a term: {t!r}")


def satisfies_derivation(theory: Theory, eq_name: str, subst: Substitution) -> Derivation:
    """Derivation that the subst instance of a named axiom is derivable.

    subst's source must be the equation's own context.  The result
    concludes tm_eval(lhs, subst) equal to tm_eval(rhs, subst) under
    subst's target: evaluate the left side, cross the axiom instance,
    then evaluate the right side backwards.
    """
    eq = theory.equations.get(eq_name)
    if eq is None:
        raise UnknownHypothesis(eq_name)
    if subst.source != eq.cxt:
        raise ContextMismatch(
            "satisfies", format_context(eq.cxt), format_context(subst.source)
        )
    return Trans(
        evaluation_derivation(theory, eq.lhs, subst),
        Trans(
            Sub(Hyp(eq_name), subst),
            Sym(evaluation_derivation(theory, eq.rhs, subst)),
        ),
    )


def completeness(theory: Theory, goal: Equation, evidence: Derivation) -> Derivation:
    """Turn term-model evidence for goal into a derivation of goal.

    evidence must check under goal's context and conclude
    tm_eval(lhs, id) equal to tm_eval(rhs, id), the statement that goal
    holds in the term model under the identity environment.  The result
    is the five-step Trans chain walking lhs to its identity instance,
    across the evidence, and back up to rhs; it checks with conclusion
    goal itself.
    """
    goal = make_equation(theory.signature, goal.cxt, goal.lhs, goal.rhs)
    handle = term_model(theory, goal.cxt)
    sigma0 = identity_subst(goal.cxt)
    required = Judgment(
        goal.cxt,
        goal.srt,
        tm_eval(handle, goal.lhs, sigma0),
        tm_eval(handle, goal.rhs, sigma0),
    )
    found = check_derivation(theory, evidence, goal.cxt)
    if found != required:
        raise EvidenceMismatch(format_judgment(required), format_judgment(found))
    return Trans(
        Sym(identity_derivation(theory, goal.cxt, goal.lhs)),
        Trans(
            Sym(evaluation_derivation(theory, goal.lhs, sigma0)),
            Trans(
                evidence,
                Trans(
                    evaluation_derivation(theory, goal.rhs, sigma0),
                    identity_derivation(theory, goal.cxt, goal.rhs),
                ),
            ),
        ),
    )
