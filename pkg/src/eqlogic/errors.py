"""Failure types shared across the workbench.

Every error this package raises on bad input derives from WorkbenchError.
Each class carries structured fields plus a stable machine-readable kind
(the class name), so frontends can match on kinds instead of messages.
Parsers attach source positions by setting .line and .column on an
already-constructed error.
"""

from __future__ import annotations


class WorkbenchError(Exception):
    """Base class for all input, validation, and proof errors."""

    line: int | None = None
    column: int | None = None

    @property
    def kind(self) -> str:
        return type(self).__name__

    def at(self, line: int | None, column: int | None = None) -> "WorkbenchError":
        # Keep the first position attached; re-raising wrappers call this
        # unconditionally and must not clobber a more precise location.
        if self.line is None and line is not None:
            self.line = line
            self.column = column
        return self


class InvalidIdentifier(WorkbenchError):
    def __init__(self, name: str, where: str):
        super().__init__(f"invalid identifier {name!r} in {where}")
        self.name = name
        self.where = where


class DuplicateSort(WorkbenchError):
    def __init__(self, name: str):
        super().__init__(f"sort {name} declared twice")
        self.name = name


class DuplicateOperator(WorkbenchError):
    def __init__(self, name: str):
        super().__init__(f"operator {name} declared twice")
        self.name = name


class UndeclaredSort(WorkbenchError):
    def __init__(self, sort: str, where: str):
        super().__init__(f"sort {sort} is not declared (in {where})")
        self.sort = sort
        self.where = where


class UnknownOperator(WorkbenchError):
    def __init__(self, op: str):
        super().__init__(f"unknown operator {op}")
        self.op = op


class UnboundVariable(WorkbenchError):
    def __init__(self, name: str):
        super().__init__(f"variable {name} is not bound in the context")
        self.name = name


class ArityMismatch(WorkbenchError):
    def __init__(self, op: str, expected: int, got: int):
        super().__init__(f"operator {op} expects {expected} argument(s), got {got}")
        self.op = op
        self.expected = expected
        self.got = got


class SortMismatch(WorkbenchError):
    def __init__(self, where: str, position: int | None, expected: str, got: str):
        pos = "" if position is None else f" at position {position}"
        super().__init__(f"sort mismatch in {where}{pos}: expected {expected}, got {got}")
        self.where = where
        self.position = position
        self.expected = expected
        self.got = got


class EquationSortMismatch(WorkbenchError):
    def __init__(self, lhs_sort: str, rhs_sort: str):
        super().__init__(f"equation sides have different sorts: {lhs_sort} vs {rhs_sort}")
        self.lhs_sort = lhs_sort
        self.rhs_sort = rhs_sort


class MissingBinding(WorkbenchError):
    def __init__(self, name: str):
        super().__init__(f"substitution has no binding for variable {name}")
        self.name = name


class DuplicateEquation(WorkbenchError):
    def __init__(self, name: str):
        super().__init__(f"equation {name} declared twice")
        self.name = name


class EmptyCarrier(WorkbenchError):
    def __init__(self, sort: str):
        super().__init__(f"carrier for sort {sort} is empty or missing")
        self.sort = sort


class DuplicateElement(WorkbenchError):
    def __init__(self, sort: str, elem: str):
        super().__init__(f"carrier for sort {sort} lists element {elem} twice")
        self.sort = sort
        self.elem = elem


class UnknownElement(WorkbenchError):
    def __init__(self, where: str, elem: str):
        super().__init__(f"element {elem} is not in the carrier (in {where})")
        self.where = where
        self.elem = elem


class NonIdempotentRepr(WorkbenchError):
    def __init__(self, sort: str, elem: str):
        super().__init__(f"representative map for sort {sort} is not idempotent at {elem}")
        self.sort = sort
        self.elem = elem


class PartialTable(WorkbenchError):
    def __init__(self, op: str, args: tuple[str, ...]):
        shown = ",".join(args)
        super().__init__(f"table for {op} has no row for ({shown})")
        self.op = op
        self.args = args


class NonCongruentOp(WorkbenchError):
    def __init__(self, op: str, args: tuple[str, ...], alt_args: tuple[str, ...]):
        super().__init__(
            f"operation {op} is not congruent: ({','.join(args)}) and "
            f"({','.join(alt_args)}) are equivalent argument tuples with "
            f"inequivalent results"
        )
        self.op = op
        self.args = args
        self.alt_args = alt_args


class UnknownHypothesis(WorkbenchError):
    def __init__(self, name: str):
        super().__init__(f"theory has no equation named {name}")
        self.name = name


class ContextMismatch(WorkbenchError):
    def __init__(self, node: str, expected: str, found: str):
        super().__init__(f"context mismatch at {node} node: expected {expected}, found {found}")
        self.node = node
        self.expected = expected
        self.found = found


class MiddleTermMismatch(WorkbenchError):
    def __init__(self, left_middle: str, right_middle: str):
        super().__init__(
            f"trans premises do not meet: left ends at {left_middle}, right starts at {right_middle}"
        )
        self.left_middle = left_middle
        self.right_middle = right_middle


class PreconditionFailed(WorkbenchError):
    pass


class EvidenceMismatch(WorkbenchError):
    def __init__(self, expected: str, found: str):
        super().__init__(f"evidence concludes {found}, required {expected}")
        self.expected = expected
        self.found = found


class ClaimMismatch(WorkbenchError):
    def __init__(self, claimed: str, found: str):
        super().__init__(f"proof concludes {found}, but the script claims {claimed}")
        self.claimed = claimed
        self.found = found


class BudgetExceeded(WorkbenchError):
    def __init__(self, budget: int):
        super().__init__(f"enumeration budget of {budget} candidate models exceeded")
        self.budget = budget


class AmbiguousSort(WorkbenchError):
    def __init__(self, name: str):
        super().__init__(
            f"cannot infer a sort for variable {name}; supply an explicit context"
        )
        self.name = name


class ParseError(WorkbenchError):
    def __init__(self, line: int, column: int, expected: str):
        super().__init__(f"parse error at line {line}, column {column}: expected {expected}")
        self.line = line
        self.column = column
        self.expected = expected
