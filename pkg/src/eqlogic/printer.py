"""Canonical text forms for theories, models, and proof scripts.

Printing is deterministic: names sort lexicographically, table rows run
in odometer order, terms print without spaces, constants keep their
parentheses.  Re-parsing any printed form yields a structurally equal
value.
"""

from __future__ import annotations

import itertools

from . import calculus as ca
from .calculus import Derivation, Judgment
from .model import Model, Theory
from .term import Context, format_term


def format_context_brackets(ctx: Context) -> str:
    """File form, variables sorted by name: [x:M, y:M]."""
    return "[" + ", ".join(f"{x}:{s}" for x, s in sorted(ctx.items())) + "]"


def print_theory(theory: Theory) -> str:
    lines: list[str] = []
    for sort in theory.signature.sorted_sorts():
        lines.append(f"sort {sort}")
    for decl in theory.signature.sorted_ops():
        args = " ".join(decl.arg_sorts)
        sep = " " if args else ""
        lines.append(f"op {decl.name} : {args}{sep}-> {decl.result_sort}")
    for name in sorted(theory.equations):
        eq = theory.equations[name]
        lines.append(
            f"eq {name} {format_context_brackets(eq.cxt)} : "
            f"{format_term(eq.lhs)} = {format_term(eq.rhs)}"
        )
    return "\n".join(lines) + "\n"


def print_model(m: Model) -> str:
    lines: list[str] = []
    for sort in m.signature.sorted_sorts():
        lines.append(f"carrier {sort} = " + ", ".join(m.carriers[sort]))
    for sort in m.signature.sorted_sorts():
        for elem in m.carriers[sort]:
            rep = m.reprs[sort][elem]
            if rep != elem:
                lines.append(f"repr {sort}: {elem} -> {rep}")
    for decl in m.signature.sorted_ops():
        table = m.tables[decl.name]
        for args in itertools.product(*(m.carriers[s] for s in decl.arg_sorts)):
            lines.append(f"table {decl.name}({','.join(args)}) = {table[args]}")
    return "\n".join(lines) + "\n"


# A derivation prints on one line when it fits within this width.
FLAT_WIDTH = 72


def format_derivation(d: Derivation, indent: int = 0) -> str:
    flat = _flat(d)
    if indent + len(flat) <= FLAT_WIDTH:
        return flat
    pad = " " * (indent + 2)
    match d:
        case ca.Sym(premise):
            return f"(sym\n{pad}{format_derivation(premise, indent + 2)})"
        case ca.Trans(left, right):
            return (
                f"(trans\n{pad}{format_derivation(left, indent + 2)}"
                f"\n{pad}{format_derivation(right, indent + 2)})"
            )
        case ca.App(op, premises):
            parts = "".join(
                f"\n{pad}{format_derivation(p, indent + 2)}" for p in premises
            )
            return f"(app {op}{parts})"
        case ca.Sub(premise, _):
            return (
                f"(sub\n{pad}{format_derivation(premise, indent + 2)}"
                f"\n{pad}{_flat_bindings(d)})"
            )
        case _:
            return flat


def _flat(d: Derivation) -> str:
    match d:
        case ca.Hyp(name):
            return f"(hyp {name})"
        case ca.Base(var):
            return f"(base {var})"
        case ca.Refl(t):
            return f"(refl {format_term(t)})"
        case ca.Sym(premise):
            return f"(sym {_flat(premise)})"
        case ca.Trans(left, right):
            return f"(trans {_flat(left)} {_flat(right)})"
        case ca.App(op, premises):
            parts = "".join(" " + _flat(p) for p in premises)
            return f"(app {op}{parts})"
        case ca.Sub(_, _):
            return f"(sub {_flat(d.premise)} {_flat_bindings(d)})"
    raise TypeError(f"not a derivation node: {d!r}")


def _flat_bindings(d) -> str:
    items = sorted(d.subst.mapping.items())
    return "(" + " ".join(f"({x} := {format_term(t)})" for x, t in items) + ")"


def print_proof(d: Derivation, claim: Judgment, theory_name: str = "") -> str:
    """Proof script: optional theory header, the claimed judgment, the tree."""
    lines = []
    if theory_name:
        lines.append(f"theory {theory_name}")
    lines.append(
        f"prove {format_context_brackets(claim.context)} : "
        f"{format_term(claim.lhs)} = {format_term(claim.rhs)}"
    )
    lines.append(format_derivation(d))
    return "\n".join(lines) + "\n"
