"""Sorts and operator declarations.

A signature lists sort names and, for each operator, the sorts of its
arguments (in positional order) and the sort of its result.  Operator
names live in one flat namespace shared by all sorts.  Everything
downstream (terms, models, derivations) is indexed by a validated
Signature.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from .errors import (
    DuplicateOperator,
    DuplicateSort,
    InvalidIdentifier,
    UndeclaredSort,
    UnknownOperator,
)

# Identifiers name sorts, operators, variables, and equations.
IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_'-]*\Z")


def check_identifier(name: str, where: str) -> str:
    if not IDENTIFIER.match(name):
        raise InvalidIdentifier(name, where)
    return name


@dataclass(frozen=True)
class OpDecl:
    """One operator declaration; arg_sorts is empty for constants."""

    name: str
    arg_sorts: tuple[str, ...]
    result_sort: str


# What validate_signature accepts for a single operator.
RawOp = OpDecl | tuple[str, Sequence[str], str]


@dataclass(frozen=True)
class Signature:
    sorts: frozenset[str]
    ops: Mapping[str, OpDecl]

    def op(self, name: str) -> OpDecl:
        try:
            return self.ops[name]
        except KeyError:
            raise UnknownOperator(name) from None

    def sorted_sorts(self) -> list[str]:
        return sorted(self.sorts)

    def sorted_ops(self) -> list[OpDecl]:
        return [self.ops[name] for name in sorted(self.ops)]


def validate_signature(sorts: Iterable[str], ops: Iterable[RawOp]) -> Signature:
    """Build a Signature, rejecting duplicates and undeclared sorts.

    Validation is idempotent: feeding a valid signature's parts back in
    returns an equal Signature.
    """
    sort_set: set[str] = set()
    for name in sorts:
        check_identifier(name, "sort declaration")
        if name in sort_set:
            raise DuplicateSort(name)
        sort_set.add(name)

    decls: dict[str, OpDecl] = {}
    for raw in ops:
        decl = raw if isinstance(raw, OpDecl) else OpDecl(raw[0], tuple(raw[1]), raw[2])
        check_identifier(decl.name, "operator declaration")
        if decl.name in decls:
            raise DuplicateOperator(decl.name)
        for s in decl.arg_sorts:
            if s not in sort_set:
                raise UndeclaredSort(s, f"operator {decl.name}")
        if decl.result_sort not in sort_set:
            raise UndeclaredSort(decl.result_sort, f"operator {decl.name}")
        decls[decl.name] = decl

    return Signature(frozenset(sort_set), decls)


def arity(sig: Signature, op: str) -> tuple[str, ...]:
    """Argument sorts of op, in positional order."""
    return sig.op(op).arg_sorts
