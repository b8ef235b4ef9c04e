"""One implementation of the six workbench operations, shared by frontends.

Each run_* function takes raw file texts, does the work, and returns a
Report holding the status, the exit code a CLI should use, the human
text, and a JSON-ready payload.  Inputs are loaded in a first phase whose
failures are input errors (exit 2); failures while the operation itself
runs are proof errors (exit 1).  A budget overrun counts as an input
error: the request, not the proof, was too small for the search space.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import birkhoff, calculus, parser, printer
from .calculus import Judgment, as_equation, check_derivation, format_judgment, sound_check
from .errors import (
    BudgetExceeded,
    ClaimMismatch,
    UnboundVariable,
    UnknownElement,
    WorkbenchError,
)
from .model import Model, Theory, eval_term, satisfies_theory, search_countermodel
from .term import Context, free_vars, sort_of

OK = "ok"
PROOF_ERROR = "proof-error"
INPUT_ERROR = "input-error"

EXIT_FOR_STATUS = {OK: 0, PROOF_ERROR: 1, INPUT_ERROR: 2}


@dataclass
class Report:
    status: str
    exit_code: int
    text: str
    payload: dict


def _error_info(err: WorkbenchError) -> dict:
    return {
        "kind": err.kind,
        "message": str(err),
        "line": err.line,
        "column": err.column,
    }


def _error_text(err: WorkbenchError) -> str:
    pos = f"line {err.line}: " if err.line is not None else ""
    return f"error[{err.kind}]: {pos}{str(err)}"


def _error_report(status: str, err: WorkbenchError) -> Report:
    text = _error_text(err)
    return Report(status, EXIT_FOR_STATUS[status], text, {"status": status, "text": text, "error": _error_info(err)})


def _ok(text: str, exit_code: int = 0, **fields) -> Report:
    payload = {"status": OK, "text": text, **fields}
    return Report(OK, exit_code, text, payload)


def _judgment_info(j: Judgment) -> dict:
    return {
        "context": dict(sorted(j.context.items())),
        "sort": j.sort,
        "lhs": printer.format_term(j.lhs),
        "rhs": printer.format_term(j.rhs),
    }


def exit_code_for(op: str, payload: dict) -> int:
    """Exit code implied by a payload; lets a remote client agree with a local run."""
    status = payload.get("status", INPUT_ERROR)
    if status != OK:
        return EXIT_FOR_STATUS.get(status, 2)
    if op == "satisfies" and not payload.get("holds", False):
        return 1
    if op == "sound" and not payload.get("sound", False):
        return 1
    return 0


def run_check(theory_text: str, proof_text: str) -> Report:
    try:
        theory = parser.parse_theory(theory_text)
        derivation, claim = parser.parse_proof(proof_text, theory)
    except WorkbenchError as err:
        return _error_report(INPUT_ERROR, err)
    try:
        found = check_derivation(theory, derivation, claim.context)
        if found != claim:
            raise ClaimMismatch(format_judgment(claim), format_judgment(found))
    except WorkbenchError as err:
        return _error_report(PROOF_ERROR, err)
    return _ok(format_judgment(found), judgment=_judgment_info(found))


def _load_model(theory: Theory, model_text: str) -> Model:
    return parser.parse_model(model_text, theory.signature)


def run_eval(theory_text: str, model_text: str, term_text: str, env_text: str = "", ctx_text: str | None = None) -> Report:
    try:
        theory = parser.parse_theory(theory_text)
        m = _load_model(theory, model_text)
        t = parser.parse_term_text(term_text, theory.signature)
        if ctx_text is not None:
            ctx = parser.parse_context_text(ctx_text, theory.signature)
        else:
            ctx = parser.infer_context(theory.signature, t)
        sort_of(theory.signature, ctx, t)
        env = parser.parse_env_text(env_text)
        _check_env(m, ctx, env, must_cover=free_vars(t))
    except WorkbenchError as err:
        return _error_report(INPUT_ERROR, err)
    try:
        value = eval_term(m, t, env)
    except WorkbenchError as err:
        return _error_report(PROOF_ERROR, err)
    return _ok(value, value=value)


def _check_env(m: Model, ctx: Context, env: dict, must_cover: set[str]) -> None:
    for name, elem in env.items():
        if name not in ctx:
            raise UnboundVariable(name)
        if elem not in m.reprs[ctx[name]]:
            raise UnknownElement(f"environment binding for {name}", elem)
    for name in sorted(must_cover):
        if name not in env:
            raise UnboundVariable(name)


def run_satisfies(theory_text: str, model_text: str) -> Report:
    try:
        theory = parser.parse_theory(theory_text)
        m = _load_model(theory, model_text)
    except WorkbenchError as err:
        return _error_report(INPUT_ERROR, err)
    res = satisfies_theory(m, theory)
    lines = []
    results: dict[str, str] = {}
    for name in sorted(theory.equations):
        if res.holds or name < (res.failed or ""):
            lines.append(f"{name}: ok")
            results[name] = "ok"
    if res.holds:
        lines.append("satisfies: yes")
        return _ok("\n".join(lines), holds=True, results=results)
    witness = dict(sorted((res.witness or {}).items()))
    shown = ",".join(f"{x}={v}" for x, v in witness.items())
    lines.append(f"{res.failed}: FAIL under {{{shown}}}")
    results[res.failed] = "fail"
    lines.append("satisfies: no")
    return Report(
        OK,
        1,
        "\n".join(lines),
        {
            "status": OK,
            "text": "\n".join(lines),
            "holds": False,
            "results": results,
            "failed": res.failed,
            "witness": witness,
        },
    )


def run_sound(theory_text: str, model_text: str, proof_text: str) -> Report:
    try:
        theory = parser.parse_theory(theory_text)
        m = _load_model(theory, model_text)
        derivation, claim = parser.parse_proof(proof_text, theory)
    except WorkbenchError as err:
        return _error_report(INPUT_ERROR, err)
    try:
        found = check_derivation(theory, derivation, claim.context)
        if found != claim:
            raise ClaimMismatch(format_judgment(claim), format_judgment(found))
        sound = sound_check(theory, m, derivation, claim.context)
    except WorkbenchError as err:
        return _error_report(PROOF_ERROR, err)
    text = f"sound: {'yes' if sound else 'no'}"
    return Report(OK, 0 if sound else 1, text, {"status": OK, "text": text, "sound": sound, "judgment": _judgment_info(found)})


def run_complete(theory_text: str, proof_text: str) -> Report:
    try:
        theory = parser.parse_theory(theory_text)
        evidence, claim = parser.parse_proof(proof_text, theory)
    except WorkbenchError as err:
        return _error_report(INPUT_ERROR, err)
    try:
        goal = as_equation(claim)
        result = birkhoff.completeness(theory, goal, evidence)
        conclusion = check_derivation(theory, result, goal.cxt)
        if conclusion != claim:
            raise ClaimMismatch(format_judgment(claim), format_judgment(conclusion))
    except WorkbenchError as err:
        return _error_report(PROOF_ERROR, err)
    script = printer.print_proof(result, conclusion)
    return _ok(
        script.rstrip("\n"),
        judgment=_judgment_info(conclusion),
        proof=script,
        size=calculus.derivation_size(result),
    )


def run_countermodel(theory_text: str, eq_text: str, max_size: int, budget: int = 10_000_000) -> Report:
    try:
        theory = parser.parse_theory(theory_text)
        eq = parser.parse_inline_equation(eq_text, theory.signature)
    except WorkbenchError as err:
        return _error_report(INPUT_ERROR, err)
    try:
        found = search_countermodel(theory, eq, max_size, budget)
    except WorkbenchError as err:
        # BudgetExceeded included: the request needs a bigger budget.
        status = INPUT_ERROR if isinstance(err, BudgetExceeded) else PROOF_ERROR
        return _error_report(status, err)
    if found is None:
        text = f"none up to {max_size}"
        return _ok(text, found=False, max_size=max_size)
    m, witness = found
    witness = dict(sorted(witness.items()))
    sizes = {s: len(m.carriers[s]) for s in m.signature.sorted_sorts()}
    shown = ",".join(f"{x}={v}" for x, v in witness.items())
    model_text = printer.print_model(m)
    text = model_text + f"witness: {shown}"
    return _ok(
        text,
        found=True,
        sizes=sizes,
        model=model_text,
        witness=witness,
        max_size=max_size,
    )
