"""Finite models, equations, theories, and countermodel search.

A model interprets each sort as a finite nonempty list of labelled
elements together with an idempotent representative map (two elements are
equal in the model when their representatives coincide), and each operator
as a total table.  Tables must be congruent: equivalent argument tuples
must produce equivalent results.  validate_model checks all of this
exhaustively, which is the point of staying finite.

An equation holds in a model when both sides evaluate to the same
representative under every environment for its context.  Environments are
enumerated odometer-style: variables sorted by name, elements in
carrier-list order, last variable cycling fastest.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass

from .errors import (
    ArityMismatch,
    BudgetExceeded,
    DuplicateElement,
    DuplicateEquation,
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
from .signature import Signature, check_identifier
from .term import App, Context, Substitution, Term, Var, free_vars, sort_of

# Variable name -> carrier element label.
Environment = dict[str, str]


@dataclass(frozen=True)
class Model:
    signature: Signature
    carriers: dict[str, tuple[str, ...]]
    reprs: dict[str, dict[str, str]]
    tables: dict[str, dict[tuple[str, ...], str]]

    def repr_of(self, sort: str, elem: str) -> str:
        return self.reprs[sort][elem]

    def same(self, sort: str, a: str, b: str) -> bool:
        return self.reprs[sort][a] == self.reprs[sort][b]


@dataclass(frozen=True)
class Equation:
    cxt: Context
    srt: str
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Theory:
    signature: Signature
    equations: dict[str, Equation]


def make_equation(sig: Signature, cxt: Context, lhs: Term, rhs: Term) -> Equation:
    """Sort both sides over cxt; they must agree."""
    for x, s in cxt.items():
        if s not in sig.sorts:
            raise UndeclaredSort(s, f"context variable {x}")
    ls = sort_of(sig, cxt, lhs)
    rs = sort_of(sig, cxt, rhs)
    if ls != rs:
        raise EquationSortMismatch(ls, rs)
    return Equation(dict(cxt), ls, lhs, rhs)


def make_theory(
    sig: Signature,
    equations: Mapping[str, Equation] | Iterable[tuple[str, Equation]],
) -> Theory:
    items = equations.items() if isinstance(equations, Mapping) else equations
    out: dict[str, Equation] = {}
    for name, eq in items:
        check_identifier(name, "equation name")
        if name in out:
            raise DuplicateEquation(name)
        out[name] = make_equation(sig, eq.cxt, eq.lhs, eq.rhs)
    return Theory(sig, out)


def validate_model(
    sig: Signature,
    carriers: Mapping[str, list[str] | tuple[str, ...]],
    tables: Mapping[str, Mapping[tuple[str, ...], str]],
    reprs: Mapping[str, Mapping[str, str]] | None = None,
) -> Model:
    """Check carriers, representative maps, totality, and congruence.

    Representative entries default to the identity; congruence is checked
    by exhausting every argument tuple and every single-position
    replacement by an equivalent element.
    """
    fixed_carriers: dict[str, tuple[str, ...]] = {}
    for sort in sig.sorted_sorts():
        elems = tuple(carriers.get(sort, ()))
        if not elems:
            raise EmptyCarrier(sort)
        seen: set[str] = set()
        for e in elems:
            if e in seen:
                raise DuplicateElement(sort, e)
            seen.add(e)
        fixed_carriers[sort] = elems
    for sort in carriers:
        if sort not in sig.sorts:
            raise UndeclaredSort(sort, "carrier declaration")

    raw_reprs = reprs or {}
    for sort in raw_reprs:
        if sort not in sig.sorts:
            raise UndeclaredSort(sort, "representative declaration")
    fixed_reprs: dict[str, dict[str, str]] = {}
    for sort in sig.sorted_sorts():
        elems = fixed_carriers[sort]
        table = {e: e for e in elems}
        for src, dst in (raw_reprs.get(sort) or {}).items():
            if src not in table:
                raise UnknownElement(f"repr {sort}", src)
            if dst not in table:
                raise UnknownElement(f"repr {sort}", dst)
            table[src] = dst
        for e in elems:
            if table[table[e]] != table[e]:
                raise NonIdempotentRepr(sort, e)
        fixed_reprs[sort] = table

    for op in tables:
        if op not in sig.ops:
            raise UnknownOperator(op)
    fixed_tables: dict[str, dict[tuple[str, ...], str]] = {}
    for decl in sig.sorted_ops():
        rows = tables.get(decl.name)
        if rows is None:
            raise PartialTable(decl.name, ())
        result_elems = set(fixed_carriers[decl.result_sort])
        table = {}
        for args, value in rows.items():
            args = tuple(args)
            if len(args) != len(decl.arg_sorts):
                raise ArityMismatch(decl.name, len(decl.arg_sorts), len(args))
            for a, s in zip(args, decl.arg_sorts):
                if a not in fixed_reprs[s]:
                    raise UnknownElement(f"table {decl.name}", a)
            if value not in result_elems:
                raise UnknownElement(f"table {decl.name}", value)
            table[args] = value
        for args in itertools.product(*(fixed_carriers[s] for s in decl.arg_sorts)):
            if args not in table:
                raise PartialTable(decl.name, args)
        fixed_tables[decl.name] = table

    m = Model(sig, fixed_carriers, fixed_reprs, fixed_tables)
    for decl in sig.sorted_ops():
        if all(_is_discrete(m, s) for s in decl.arg_sorts):
            continue
        table = fixed_tables[decl.name]
        res_repr = fixed_reprs[decl.result_sort]
        for args in itertools.product(*(fixed_carriers[s] for s in decl.arg_sorts)):
            for i, s in enumerate(decl.arg_sorts):
                srt_repr = fixed_reprs[s]
                for alt in fixed_carriers[s]:
                    if alt == args[i] or srt_repr[alt] != srt_repr[args[i]]:
                        continue
                    alt_args = args[:i] + (alt,) + args[i + 1 :]
                    if res_repr[table[args]] != res_repr[table[alt_args]]:
                        raise NonCongruentOp(decl.name, args, alt_args)
    return m


def _is_discrete(m: Model, sort: str) -> bool:
    return all(e == r for e, r in m.reprs[sort].items())


def eval_term(m: Model, t: Term, env: Environment) -> str:
    """Evaluate t under env: look up variables, apply op tables."""
    match t:
        case Var(name):
            try:
                return env[name]
            except KeyError:
                raise UnboundVariable(name) from None
        case App(op, args):
            table = m.tables.get(op)
            if table is None:
                raise UnknownOperator(op)
            values = tuple(eval_term(m, a, env) for a in args)
            try:
                return table[values]
            except KeyError:
                raise PartialTable(op, values) from None
    raise TypeError(f"not a term: {t!r}")


def eval_env(m: Model, subst: Substitution, env: Environment) -> Environment:
    """Push env for the target context back along subst to its source."""
    return {x: eval_term(m, t, env) for x, t in subst.mapping.items()}


def environments(m: Model, ctx: Context) -> Iterator[Environment]:
    """All environments for ctx, odometer-style.

    Variables are taken in lexicographic order and each ranges over its
    carrier in list order; the last variable cycles fastest.  An empty
    context yields the single empty environment.
    """
    names = sorted(ctx)
    pools = [m.carriers[ctx[x]] for x in names]
    for combo in itertools.product(*pools):
        yield dict(zip(names, combo))


@dataclass(frozen=True)
class EquationCheck:
    holds: bool
    witness: Environment | None


def equal_in_model(m: Model, eq: Equation) -> EquationCheck:
    """Does eq hold under every environment?  Witness = first failure."""
    for env in environments(m, eq.cxt):
        left = m.repr_of(eq.srt, eval_term(m, eq.lhs, env))
        right = m.repr_of(eq.srt, eval_term(m, eq.rhs, env))
        if left != right:
            return EquationCheck(False, env)
    return EquationCheck(True, None)


@dataclass(frozen=True)
class TheoryCheck:
    holds: bool
    failed: str | None
    witness: Environment | None


def satisfies_theory(m: Model, theory: Theory) -> TheoryCheck:
    """Check every equation, names in lexicographic order, stop at the first failure."""
    for name in sorted(theory.equations):
        res = equal_in_model(m, theory.equations[name])
        if not res.holds:
            return TheoryCheck(False, name, res.witness)
    return TheoryCheck(True, None, None)


def search_countermodel(
    theory: Theory,
    eq: Equation,
    max_size: int,
    budget: int = 10_000_000,
) -> tuple[Model, Environment] | None:
    """First finite model satisfying theory but refuting eq, if any.

    Enumerates discrete models (identity representatives) with carrier
    sizes from 1 to max_size per sort; size assignments, then op tables,
    run in odometer order.  Every candidate table counts against budget;
    BudgetExceeded is raised when the cap is hit before exhaustion.
    """
    if max_size < 1:
        raise PreconditionFailed("max_size must be at least 1")
    if budget < 1:
        raise PreconditionFailed("budget must be at least 1")
    sig = theory.signature
    sorts = sig.sorted_sorts()
    count = 0
    for sizes in itertools.product(range(1, max_size + 1), repeat=len(sorts)):
        carriers = {
            s: tuple(str(i) for i in range(n)) for s, n in zip(sorts, sizes)
        }
        reprs = {s: {e: e for e in carriers[s]} for s in sorts}
        cells: list[tuple[str, tuple[str, ...]]] = []
        pools: list[tuple[str, ...]] = []
        for decl in sig.sorted_ops():
            for args in itertools.product(*(carriers[s] for s in decl.arg_sorts)):
                cells.append((decl.name, args))
                pools.append(carriers[decl.result_sort])
        for values in itertools.product(*pools):
            count += 1
            if count > budget:
                raise BudgetExceeded(budget)
            tables: dict[str, dict[tuple[str, ...], str]] = {
                decl.name: {} for decl in sig.sorted_ops()
            }
            for (op, args), v in zip(cells, values):
                tables[op][args] = v
            m = Model(sig, carriers, reprs, tables)
            if not satisfies_theory(m, theory).holds:
                continue
            res = equal_in_model(m, eq)
            if not res.holds:
                assert res.witness is not None
                return m, res.witness
    return None
