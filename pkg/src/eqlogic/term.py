"""Sorted terms over a context, and parallel substitution.

A term is either a variable or an operator applied to exactly as many
arguments as its declaration lists.  Contexts assign sorts to the finitely
many variables a term may use.  Substitutions are total, sort-preserving
maps from the variables of a source context to terms over a target
context; applying one is the bind of the term algebra.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

from .errors import (
    ArityMismatch,
    MissingBinding,
    SortMismatch,
    UnboundVariable,
    UndeclaredSort,
)
from .signature import Signature, check_identifier

# Variable name -> sort name.  Equality of contexts is map equality.
Context = dict[str, str]


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class App:
    op: str
    args: tuple["Term", ...] = ()


Term = Var | App


def make_context(sig: Signature, bindings: Mapping[str, str]) -> Context:
    """Validate variable names and sorts against sig."""
    ctx: Context = {}
    for name, sort in bindings.items():
        check_identifier(name, "context variable")
        if sort not in sig.sorts:
            raise UndeclaredSort(sort, f"context variable {name}")
        ctx[name] = sort
    return ctx


def sort_of(sig: Signature, ctx: Context, t: Term) -> str:
    """Sort of t, or the first sorting error in left-to-right order."""
    match t:
        case Var(name):
            try:
                return ctx[name]
            except KeyError:
                raise UnboundVariable(name) from None
        case App(op, args):
            decl = sig.op(op)
            if len(args) != len(decl.arg_sorts):
                raise ArityMismatch(op, len(decl.arg_sorts), len(args))
            for i, (arg, want) in enumerate(zip(args, decl.arg_sorts)):
                got = sort_of(sig, ctx, arg)
                if got != want:
                    raise SortMismatch(op, i, want, got)
            return decl.result_sort
    raise TypeError(f"not a term: {t!r}")


def free_vars(t: Term) -> set[str]:
    match t:
        case Var(name):
            return {name}
        case App(_, args):
            out: set[str] = set()
            for a in args:
                out |= free_vars(a)
            return out
    raise TypeError(f"not a term: {t!r}")


@dataclass(frozen=True)
class Substitution:
    """Total map from source-context variables to terms over target.

    Invariants are enforced by make_substitution: mapping covers exactly
    the variables of source, and each image is well-sorted over target at
    the variable's declared sort.
    """

    mapping: dict[str, Term]
    source: Context
    target: Context


def make_substitution(
    sig: Signature,
    mapping: Mapping[str, Term],
    source: Context,
    target: Context,
) -> Substitution:
    for x in source:
        if x not in mapping:
            raise MissingBinding(x)
    for x in mapping:
        if x not in source:
            raise UnboundVariable(x)
    for x, t in mapping.items():
        got = sort_of(sig, target, t)
        if got != source[x]:
            raise SortMismatch(f"binding for {x}", None, source[x], got)
    return Substitution(dict(mapping), dict(source), dict(target))


def subst_apply(sig: Signature, t: Term, subst: Substitution) -> Term:
    """Apply subst to t: variables are looked up, applications commute."""
    match t:
        case Var(name):
            try:
                return subst.mapping[name]
            except KeyError:
                raise MissingBinding(name) from None
        case App(op, args):
            return App(op, tuple(subst_apply(sig, a, subst) for a in args))
    raise TypeError(f"not a term: {t!r}")


def format_term(t: Term) -> str:
    """Concrete syntax; constants always print with parentheses."""
    match t:
        case Var(name):
            return name
        case App(op, args):
            return f"{op}({','.join(format_term(a) for a in args)})"
    raise TypeError(f"not a term: {t!r}")


def format_context(ctx: Context) -> str:
    """Report form, variables sorted by name: {x:M, y:M}."""
    return "{" + ", ".join(f"{x}:{s}" for x, s in sorted(ctx.items())) + "}"
