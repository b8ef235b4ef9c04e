"""Parsers for theory files, model files, proof scripts, and fragments.

Formats are line-oriented except the proof tree, which is a single
s-expression after the header lines.  '#' starts a comment anywhere.
Declarations may be used before they appear (two-pass resolution), so
line order inside a file is free.  All failures are WorkbenchError
subclasses; parse errors carry line and column, and validation errors
raised while a file is being read get the offending position attached.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import term as tm
from .calculus import App, Base, Derivation, Hyp, Judgment, Refl, Sub, Sym, Trans
from .errors import (
    AmbiguousSort,
    ArityMismatch,
    InvalidIdentifier,
    ParseError,
    SortMismatch,
    UndeclaredSort,
    UnknownElement,
    UnknownOperator,
    WorkbenchError,
)
from .model import Equation, Model, Theory, make_equation, make_theory, validate_model
from .signature import IDENTIFIER, Signature, validate_signature
from .term import Context, make_substitution, sort_of

WORD = re.compile(r"[A-Za-z0-9_'][A-Za-z0-9_'-]*")
PUNCT = ("->", ":=", "(", ")", "[", "]", ",", ":", "=")


@dataclass(frozen=True)
class Token:
    kind: str  # "word", one of PUNCT, or "eof"
    text: str
    line: int
    column: int


def tokenize(text: str, start_line: int = 1) -> list[Token]:
    tokens: list[Token] = []
    line = start_line
    col = 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        m = WORD.match(text, i)
        if m:
            word = m.group(0)
            # An identifier may contain '-', but never swallows an arrow.
            if word.endswith("-") and m.end() < n and text[m.end()] == ">":
                word = word[:-1]
            tokens.append(Token("word", word, line, col))
            i += len(word)
            col += len(word)
            continue
        two = text[i : i + 2]
        if two in ("->", ":="):
            tokens.append(Token(two, two, line, col))
            i += 2
            col += 2
            continue
        if ch in "()[],:=":
            tokens.append(Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(line, col, f"a token (found {ch!r})")
    return tokens


class TokenStream:
    def __init__(self, tokens: list[Token], end_line: int = 1):
        if tokens:
            last = tokens[-1]
            end_line, end_col = last.line, last.column + len(last.text)
        else:
            end_col = 1
        self.tokens = tokens + [Token("eof", "", end_line, end_col)]
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, kind: str, what: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(tok.line, tok.column, what or f"{kind!r}")
        return self.next()

    def expect_word(self, what: str) -> Token:
        return self.expect("word", what)

    def expect_end(self) -> None:
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(tok.line, tok.column, "end of input")

    def fail(self, what: str):
        tok = self.peek()
        raise ParseError(tok.line, tok.column, what)


def _line_streams(text: str) -> list[TokenStream]:
    """One stream per nonempty line, comments stripped."""
    streams = []
    for no, raw in enumerate(text.splitlines(), start=1):
        toks = tokenize(raw, start_line=no)
        if toks:
            streams.append(TokenStream(toks, end_line=no))
    return streams


# Nesting bound for recursive-descent rules, so adversarial input raises
# ParseError instead of exhausting the interpreter stack.
MAX_DEPTH = 400


def parse_term(stream: TokenStream, sig: Signature, depth: int = 0) -> tm.Term:
    if depth > MAX_DEPTH:
        stream.fail("shallower nesting")
    head = stream.expect_word("a term")
    if stream.peek().kind == "(":
        if head.text not in sig.ops:
            raise UnknownOperator(head.text).at(head.line, head.column)
        stream.next()
        args: list[tm.Term] = []
        if stream.peek().kind != ")":
            args.append(parse_term(stream, sig, depth + 1))
            while stream.peek().kind == ",":
                stream.next()
                args.append(parse_term(stream, sig, depth + 1))
        stream.expect(")", "',' or ')'")
        return tm.App(head.text, tuple(args))
    if head.text in sig.ops:
        # A bare operator name is the constant form without parentheses.
        return tm.App(head.text, ())
    if not IDENTIFIER.match(head.text):
        raise ParseError(head.line, head.column, "a term")
    return tm.Var(head.text)


def parse_term_text(text: str, sig: Signature) -> tm.Term:
    stream = TokenStream(tokenize(text))
    t = parse_term(stream, sig)
    stream.expect_end()
    return t


def _parse_context_body(stream: TokenStream, sig: Signature) -> Context:
    """Inside brackets: groups like x:M or x,y:M separated by commas."""
    ctx: Context = {}
    stream.expect("[", "'['")
    if stream.peek().kind == "]":
        stream.next()
        return ctx
    pending: list[Token] = []
    while True:
        pending.append(stream.expect_word("a variable name"))
        tok = stream.peek()
        if tok.kind == ",":
            stream.next()
            continue
        if tok.kind != ":":
            stream.fail("':' or ','")
        stream.next()
        sort = stream.expect_word("a sort name")
        if sort.text not in sig.sorts:
            raise UndeclaredSort(sort.text, "context").at(sort.line, sort.column)
        for var in pending:
            if not IDENTIFIER.match(var.text):
                raise ParseError(var.line, var.column, "a variable name")
            if var.text in sig.ops:
                raise InvalidIdentifier(
                    var.text, "context (name collides with an operator)"
                ).at(var.line, var.column)
            if var.text in ctx:
                raise ParseError(var.line, var.column, f"a fresh variable ({var.text} is already bound)")
            ctx[var.text] = sort.text
        pending = []
        tok = stream.peek()
        if tok.kind == "]":
            stream.next()
            return ctx
        stream.expect(",", "',' or ']'")


def parse_theory(text: str) -> Theory:
    """Parse sort, op, and eq lines into a validated Theory."""
    sort_decls: list[tuple[str, Token]] = []
    op_decls: list[tuple[str, tuple[str, ...], str, Token]] = []
    eq_lines: list[TokenStream] = []
    for stream in _line_streams(text):
        head = stream.expect_word("sort, op, or eq")
        if head.text == "sort":
            name = stream.expect_word("a sort name")
            stream.expect_end()
            sort_decls.append((name.text, name))
        elif head.text == "op":
            name = stream.expect_word("an operator name")
            stream.expect(":", "':'")
            args: list[str] = []
            while stream.peek().kind == "word":
                args.append(stream.next().text)
            stream.expect("->", "'->'")
            result = stream.expect_word("a result sort")
            stream.expect_end()
            op_decls.append((name.text, tuple(args), result.text, name))
        elif head.text == "eq":
            eq_lines.append(stream)
        else:
            raise ParseError(head.line, head.column, "sort, op, or eq")

    positions: dict[tuple[str, str], Token] = {}
    for name, tok in sort_decls:
        positions.setdefault(("sort", name), tok)
    for name, _, _, tok in op_decls:
        positions.setdefault(("op", name), tok)
    try:
        sig = validate_signature(
            [name for name, _ in sort_decls],
            [(name, args, result) for name, args, result, _ in op_decls],
        )
    except WorkbenchError as err:
        _attach_decl_position(err, positions)
        raise

    equations: dict[str, Equation] = {}
    for stream in eq_lines:
        name = stream.expect_word("an equation name")
        if not IDENTIFIER.match(name.text):
            raise ParseError(name.line, name.column, "an equation name")
        if name.text in equations:
            raise ParseError(name.line, name.column, f"a fresh equation name ({name.text} is taken)")
        ctx = _parse_context_body(stream, sig)
        stream.expect(":", "':'")
        try:
            lhs = parse_term(stream, sig)
            stream.expect("=", "'='")
            rhs = parse_term(stream, sig)
            stream.expect_end()
            equations[name.text] = make_equation(sig, ctx, lhs, rhs)
        except WorkbenchError as err:
            raise err.at(name.line, name.column)
    return make_theory(sig, equations)


def _attach_decl_position(err: WorkbenchError, positions: dict[tuple[str, str], Token]) -> None:
    candidates = []
    for attr in ("name", "sort"):
        value = getattr(err, attr, None)
        if value is not None:
            candidates.append(value)
    where = getattr(err, "where", "") or ""
    if where.startswith("operator "):
        candidates.append(where.split(" ", 1)[1])
    for cand in candidates:
        for kind in ("sort", "op"):
            tok = positions.get((kind, cand))
            if tok is not None:
                err.at(tok.line, tok.column)
                return


def parse_model(text: str, sig: Signature) -> Model:
    """Parse carrier, repr, and table lines into a validated Model."""
    carriers: dict[str, list[str]] = {}
    reprs: dict[str, dict[str, str]] = {}
    tables: dict[str, dict[tuple[str, ...], str]] = {}
    # Source positions for errors detected only at whole-model validation.
    carrier_line: dict[str, Token] = {}
    elem_pos: dict[tuple[str, str, str], Token] = {}
    row_pos: dict[tuple[str, tuple[str, ...]], Token] = {}

    for stream in _line_streams(text):
        head = stream.expect_word("carrier, repr, or table")
        if head.text == "carrier":
            sort = stream.expect_word("a sort name")
            if sort.text not in sig.sorts:
                raise UndeclaredSort(sort.text, "carrier declaration").at(sort.line, sort.column)
            if sort.text in carriers:
                raise ParseError(sort.line, sort.column, f"one carrier line per sort ({sort.text} repeats)")
            stream.expect("=", "'='")
            elems = [stream.expect_word("an element")]
            while stream.peek().kind == ",":
                stream.next()
                elems.append(stream.expect_word("an element"))
            stream.expect_end()
            carriers[sort.text] = [e.text for e in elems]
            carrier_line[sort.text] = sort
            for e in elems:
                elem_pos.setdefault(("carrier", sort.text, e.text), e)
        elif head.text == "repr":
            sort = stream.expect_word("a sort name")
            if sort.text not in sig.sorts:
                raise UndeclaredSort(sort.text, "repr declaration").at(sort.line, sort.column)
            stream.expect(":", "':'")
            src = stream.expect_word("an element")
            stream.expect("->", "'->'")
            dst = stream.expect_word("an element")
            stream.expect_end()
            entries = reprs.setdefault(sort.text, {})
            if src.text in entries:
                raise ParseError(src.line, src.column, f"one repr entry per element ({src.text} repeats)")
            entries[src.text] = dst.text
            elem_pos.setdefault(("repr", sort.text, src.text), src)
            elem_pos.setdefault(("repr", sort.text, dst.text), dst)
        elif head.text == "table":
            op = stream.expect_word("an operator name")
            decl = sig.ops.get(op.text)
            if decl is None:
                raise UnknownOperator(op.text).at(op.line, op.column)
            stream.expect("(", "'('")
            args: list[Token] = []
            if stream.peek().kind != ")":
                args.append(stream.expect_word("an element"))
                while stream.peek().kind == ",":
                    stream.next()
                    args.append(stream.expect_word("an element"))
            stream.expect(")", "',' or ')'")
            if len(args) != len(decl.arg_sorts):
                raise ArityMismatch(op.text, len(decl.arg_sorts), len(args)).at(op.line, op.column)
            stream.expect("=", "'='")
            value = stream.expect_word("an element")
            stream.expect_end()
            key = tuple(a.text for a in args)
            rows = tables.setdefault(op.text, {})
            if key in rows:
                raise ParseError(op.line, op.column, f"one row per argument tuple ({','.join(key)} repeats)")
            rows[key] = value.text
            row_pos[(op.text, key)] = op
            for a, s in zip(args, decl.arg_sorts):
                elem_pos.setdefault(("table", s, a.text), a)
            elem_pos.setdefault(("table", decl.result_sort, value.text), value)
        else:
            raise ParseError(head.line, head.column, "carrier, repr, or table")

    try:
        return validate_model(sig, carriers, tables, reprs)
    except WorkbenchError as err:
        _attach_model_position(err, sig, carrier_line, elem_pos, row_pos)
        raise


def _attach_model_position(err, sig, carrier_line, elem_pos, row_pos) -> None:
    if err.line is not None:
        return
    tok = None
    sort = getattr(err, "sort", None)
    if sort is not None:
        elem = getattr(err, "elem", None)
        if elem is not None:
            tok = elem_pos.get(("repr", sort, elem)) or elem_pos.get(("carrier", sort, elem))
        tok = tok or carrier_line.get(sort)
    op = getattr(err, "op", None)
    if op is not None:
        args = getattr(err, "args", None)
        if args:
            tok = row_pos.get((op, tuple(args)))
        if tok is None:
            rows = [t for (o, _), t in row_pos.items() if o == op]
            tok = min(rows, key=lambda t: (t.line, t.column), default=None)
    where = getattr(err, "where", "")
    if tok is None and isinstance(err, UnknownElement):
        parts = where.split()
        if len(parts) == 2 and parts[0] in ("repr", "table"):
            kind = parts[0]
            for s in sorted(sig.sorts):
                hit = elem_pos.get((kind, s, err.elem))
                if hit is not None:
                    tok = hit
                    break
    if tok is not None:
        err.at(tok.line, tok.column)


# Raw proof-tree nodes: syntax only, contexts resolved in a second pass.
RawNode = tuple


def _parse_sexp(stream: TokenStream, sig: Signature, depth: int = 0) -> RawNode:
    if depth > MAX_DEPTH:
        stream.fail("shallower nesting")
    stream.expect("(", "'('")
    head = stream.expect_word("a proof rule (hyp, base, app, sub, refl, sym, trans)")
    kind = head.text
    if kind == "hyp":
        name = stream.expect_word("an equation name")
        stream.expect(")", "')'")
        return ("hyp", name.text)
    if kind == "base":
        var = stream.expect_word("a variable name")
        stream.expect(")", "')'")
        return ("base", var.text)
    if kind == "refl":
        t = parse_term(stream, sig)
        stream.expect(")", "')'")
        return ("refl", t)
    if kind == "sym":
        inner = _parse_sexp(stream, sig, depth + 1)
        stream.expect(")", "')'")
        return ("sym", inner)
    if kind == "trans":
        left = _parse_sexp(stream, sig, depth + 1)
        right = _parse_sexp(stream, sig, depth + 1)
        stream.expect(")", "')'")
        return ("trans", left, right)
    if kind == "app":
        op = stream.expect_word("an operator name")
        premises = []
        while stream.peek().kind == "(":
            premises.append(_parse_sexp(stream, sig, depth + 1))
        stream.expect(")", "a premise or ')'")
        return ("app", op.text, premises)
    if kind == "sub":
        premise = _parse_sexp(stream, sig, depth + 1)
        stream.expect("(", "a binding list")
        bindings: list[tuple[Token, tm.Term]] = []
        seen: set[str] = set()
        while stream.peek().kind == "(":
            stream.next()
            var = stream.expect_word("a variable name")
            if var.text in seen:
                raise ParseError(var.line, var.column, f"a fresh variable ({var.text} is already bound)")
            seen.add(var.text)
            stream.expect(":=", "':='")
            t = parse_term(stream, sig)
            stream.expect(")", "')'")
            bindings.append((var, t))
        stream.expect(")", "a binding or ')'")
        stream.expect(")", "')'")
        return ("sub", premise, bindings)
    raise ParseError(head.line, head.column, "a proof rule (hyp, base, app, sub, refl, sym, trans)")


def _resolve(raw: RawNode, theory: Theory, ctx: Context) -> Derivation:
    """Thread contexts top-down; a sub node's source is read off its bindings."""
    sig = theory.signature
    match raw[0]:
        case "hyp":
            return Hyp(raw[1])
        case "base":
            return Base(raw[1])
        case "refl":
            return Refl(raw[1])
        case "sym":
            return Sym(_resolve(raw[1], theory, ctx))
        case "trans":
            return Trans(_resolve(raw[1], theory, ctx), _resolve(raw[2], theory, ctx))
        case "app":
            return App(raw[1], tuple(_resolve(p, theory, ctx) for p in raw[2]))
        case "sub":
            _, premise_raw, bindings = raw
            mapping: dict[str, tm.Term] = {}
            source: Context = {}
            for var, t in bindings:
                try:
                    source[var.text] = sort_of(sig, ctx, t)
                except WorkbenchError as err:
                    raise err.at(var.line, var.column)
                mapping[var.text] = t
            subst = make_substitution(sig, mapping, source, ctx)
            return Sub(_resolve(premise_raw, theory, source), subst)
    raise ValueError(f"unknown raw node {raw[0]!r}")


def parse_proof(text: str, theory: Theory) -> tuple[Derivation, Judgment]:
    """Parse a proof script: optional theory header, prove line, one tree."""
    sig = theory.signature
    lines = text.splitlines()
    claim: Judgment | None = None
    body_start = 0
    for idx, raw in enumerate(lines):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        words = stripped.split(None, 1)
        if words[0] == "theory" and claim is None:
            # Header names the theory file; the caller already chose one,
            # and file names are not tokens, so take the rest of the line.
            if len(words) < 2:
                raise ParseError(idx + 1, len("theory") + 2, "a theory file name")
            continue
        if words[0] == "prove":
            stream = TokenStream(tokenize(raw, start_line=idx + 1), end_line=idx + 1)
            stream.next()
            ctx = _parse_context_body(stream, sig)
            stream.expect(":", "':'")
            try:
                lhs = parse_term(stream, sig)
                stream.expect("=", "'='")
                rhs = parse_term(stream, sig)
                stream.expect_end()
                eq = make_equation(sig, ctx, lhs, rhs)
            except WorkbenchError as err:
                raise err.at(idx + 1, 1)
            claim = Judgment(eq.cxt, eq.srt, eq.lhs, eq.rhs)
            body_start = idx + 1
            break
        column = raw.index(words[0]) + 1
        raise ParseError(idx + 1, column, "'theory' or 'prove'")
    if claim is None:
        last = len(lines) or 1
        raise ParseError(last, 1, "a prove line")

    body = "\n".join([""] * body_start + lines[body_start:])
    stream = TokenStream(tokenize(body))
    raw_tree = _parse_sexp(stream, sig)
    stream.expect_end()
    return _resolve(raw_tree, theory, claim.context), claim


def parse_context_text(text: str, sig: Signature) -> Context:
    """A context given on a command line; surrounding brackets optional."""
    body = text.strip()
    if not body.startswith("["):
        body = f"[{body}]"
    stream = TokenStream(tokenize(body))
    ctx = _parse_context_body(stream, sig)
    stream.expect_end()
    return ctx


def parse_inline_equation(text: str, sig: Signature) -> Equation:
    """Equation given on a command line: [x,y:M] lhs = rhs (colon optional)."""
    stream = TokenStream(tokenize(text))
    ctx = _parse_context_body(stream, sig)
    if stream.peek().kind == ":":
        stream.next()
    lhs = parse_term(stream, sig)
    stream.expect("=", "'='")
    rhs = parse_term(stream, sig)
    stream.expect_end()
    return make_equation(sig, ctx, lhs, rhs)


def parse_env_text(text: str) -> dict[str, str]:
    """Bindings like x=0,y=1 from a command-line option."""
    env: dict[str, str] = {}
    if not text.strip():
        return env
    for item in text.split(","):
        name, sep, value = item.partition("=")
        name = name.strip()
        value = value.strip()
        if not sep or not name or not value:
            raise ParseError(1, 1, "bindings of the form x=elem, separated by commas")
        if name in env:
            raise ParseError(1, 1, f"one binding per variable ({name} repeats)")
        env[name] = value
    return env


def infer_context(sig: Signature, t: tm.Term) -> Context:
    """Read variable sorts off operator argument positions.

    A variable at the root of the term has no surrounding operator, so
    its sort cannot be inferred; that raises AmbiguousSort and the caller
    should ask for an explicit context.
    """
    ctx: Context = {}

    def walk(node: tm.Term, expected: str | None) -> None:
        match node:
            case tm.Var(name):
                if expected is None:
                    raise AmbiguousSort(name)
                if name in ctx and ctx[name] != expected:
                    raise SortMismatch(f"variable {name}", None, ctx[name], expected)
                ctx[name] = expected
            case tm.App(op, args):
                decl = sig.op(op)
                if len(args) != len(decl.arg_sorts):
                    raise ArityMismatch(op, len(decl.arg_sorts), len(args))
                for arg, sort in zip(args, decl.arg_sorts):
                    walk(arg, sort)

    walk(t, None)
    return ctx
