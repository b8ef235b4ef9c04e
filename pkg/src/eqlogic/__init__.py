"""Workbench for multi-sorted equational logic.

Signatures declare sorts and operators; terms, finite setoid models, and
an equational proof calculus build on them.  The calculus comes with an
executable soundness harness and with the constructive completeness
construction over the term model.  The frontend adds file formats, a CLI,
and an HTTP service.
"""

from . import birkhoff, calculus, parser, printer, reports
from .birkhoff import (
    TermModelHandle,
    completeness,
    evaluation_derivation,
    identity_derivation,
    identity_subst,
    satisfies_derivation,
    term_model,
    tm_eval,
)
from .calculus import (
    Derivation,
    Judgment,
    as_equation,
    check_derivation,
    derivation_size,
    format_judgment,
    sound_check,
)
from .errors import WorkbenchError
from .parser import (
    infer_context,
    parse_context_text,
    parse_env_text,
    parse_inline_equation,
    parse_model,
    parse_proof,
    parse_term_text,
    parse_theory,
)
from .printer import format_derivation, print_model, print_proof, print_theory
from .model import (
    Environment,
    Equation,
    EquationCheck,
    Model,
    Theory,
    TheoryCheck,
    environments,
    equal_in_model,
    eval_env,
    eval_term,
    make_equation,
    make_theory,
    satisfies_theory,
    search_countermodel,
    validate_model,
)
from .signature import OpDecl, Signature, arity, validate_signature
from .term import (
    App,
    Context,
    Substitution,
    Term,
    Var,
    format_context,
    format_term,
    free_vars,
    make_context,
    make_substitution,
    sort_of,
    subst_apply,
)

__version__ = "0.1.0"
