"""The equational calculus: derivation trees and their checker.

A derivation proves a judgment "under context Gamma, lhs and rhs are
derivably equal at some sort" from a theory's equations.  Seven node
kinds: Hyp cites a named equation (and pins the conclusion context to
that equation's own context), Base is reflexivity at a variable, App is
congruence at an operator, Sub pushes a derivation through a
substitution, and Refl/Sym/Trans are the equivalence closure.

check_derivation is syntax-directed: the expected context flows top-down,
each node either confirms it or (for Sub) switches the premise to the
substitution's source context, and the conclusion judgment flows back up.
Errors surface in left-to-right order, so a failing check is
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import term as tm
from .errors import (
    ArityMismatch,
    ContextMismatch,
    MiddleTermMismatch,
    PreconditionFailed,
    SortMismatch,
    UnboundVariable,
    UnknownHypothesis,
)
from .model import Equation, Model, Theory, equal_in_model, satisfies_theory
from .term import Context, Substitution, format_context, format_term, sort_of, subst_apply


@dataclass(frozen=True)
class Hyp:
    name: str


@dataclass(frozen=True)
class Base:
    var: str


@dataclass(frozen=True)
class App:
    op: str
    premises: tuple["Derivation", ...] = ()


@dataclass(frozen=True)
class Sub:
    premise: "Derivation"
    subst: Substitution


@dataclass(frozen=True)
class Refl:
    term: tm.Term


@dataclass(frozen=True)
class Sym:
    premise: "Derivation"


@dataclass(frozen=True)
class Trans:
    left: "Derivation"
    right: "Derivation"


Derivation = Hyp | Base | App | Sub | Refl | Sym | Trans


@dataclass(frozen=True)
class Judgment:
    context: Context
    sort: str
    lhs: tm.Term
    rhs: tm.Term


def as_equation(j: Judgment) -> Equation:
    return Equation(j.context, j.sort, j.lhs, j.rhs)


def format_judgment(j: Judgment) -> str:
    return (
        f"{format_context(j.context)} ⊢ {format_term(j.lhs)} "
        f"≡ {format_term(j.rhs)} : {j.sort}"
    )


def check_derivation(theory: Theory, d: Derivation, expected_ctx: Context) -> Judgment:
    """Check d against theory under expected_ctx and return its conclusion."""
    sig = theory.signature
    match d:
        case Hyp(name):
            eq = theory.equations.get(name)
            if eq is None:
                raise UnknownHypothesis(name)
            if expected_ctx != eq.cxt:
                raise ContextMismatch(
                    "hyp", format_context(eq.cxt), format_context(expected_ctx)
                )
            return Judgment(eq.cxt, eq.srt, eq.lhs, eq.rhs)
        case Base(var):
            sort = expected_ctx.get(var)
            if sort is None:
                raise UnboundVariable(var)
            v = tm.Var(var)
            return Judgment(expected_ctx, sort, v, v)
        case App(op, premises):
            decl = sig.op(op)
            if len(premises) != len(decl.arg_sorts):
                raise ArityMismatch(op, len(decl.arg_sorts), len(premises))
            lhs_args: list[tm.Term] = []
            rhs_args: list[tm.Term] = []
            for i, (p, want) in enumerate(zip(premises, decl.arg_sorts)):
                j = check_derivation(theory, p, expected_ctx)
                if j.sort != want:
                    raise SortMismatch(op, i, want, j.sort)
                lhs_args.append(j.lhs)
                rhs_args.append(j.rhs)
            return Judgment(
                expected_ctx,
                decl.result_sort,
                tm.App(op, tuple(lhs_args)),
                tm.App(op, tuple(rhs_args)),
            )
        case Sub(premise, subst):
            if subst.target != expected_ctx:
                raise ContextMismatch(
                    "sub", format_context(expected_ctx), format_context(subst.target)
                )
            j = check_derivation(theory, premise, subst.source)
            return Judgment(
                expected_ctx,
                j.sort,
                subst_apply(sig, j.lhs, subst),
                subst_apply(sig, j.rhs, subst),
            )
        case Refl(t):
            sort = sort_of(sig, expected_ctx, t)
            return Judgment(expected_ctx, sort, t, t)
        case Sym(premise):
            j = check_derivation(theory, premise, expected_ctx)
            return Judgment(j.context, j.sort, j.rhs, j.lhs)
        case Trans(left, right):
            jl = check_derivation(theory, left, expected_ctx)
            jr = check_derivation(theory, right, expected_ctx)
            # Structural equality of the shared middle term, not semantic.
            if jl.rhs != jr.lhs:
                raise MiddleTermMismatch(format_term(jl.rhs), format_term(jr.lhs))
            return Judgment(expected_ctx, jl.sort, jl.lhs, jr.rhs)
    raise TypeError(f"not a derivation node: {d!r}")


def sound_check(theory: Theory, m: Model, d: Derivation, ctx: Context) -> bool:
    """Check d, then test its conclusion semantically in m.

    m must satisfy the theory (PreconditionFailed otherwise).  For a
    correct checker the answer is always True; a False return signals an
    implementation bug, which is exactly what the harness is for.
    """
    sat = satisfies_theory(m, theory)
    if not sat.holds:
        raise PreconditionFailed(
            f"model does not satisfy the theory (equation {sat.failed} fails)"
        )
    j = check_derivation(theory, d, ctx)
    return equal_in_model(m, as_equation(j)).holds


def derivation_size(d: Derivation) -> int:
    """Number of nodes in the tree."""
    match d:
        case Hyp(_) | Base(_) | Refl(_):
            return 1
        case App(_, premises):
            return 1 + sum(derivation_size(p) for p in premises)
        case Sub(premise, _):
            return 1 + derivation_size(premise)
        case Sym(premise):
            return 1 + derivation_size(premise)
        case Trans(left, right):
            return 1 + derivation_size(left) + derivation_size(right)
    raise TypeError(f"not a derivation node: {d!r}")
