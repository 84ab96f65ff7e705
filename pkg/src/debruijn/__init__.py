"""Signature-generic abstract syntax with nameless (De Bruijn) binding.

Terms over a binding signature, canonical finite assignments with
structural substitution, model/law fuzzing against a named-term oracle,
equational theories via oriented rewriting, and a simply typed
extension.
"""

from .signature import (
    BindingArity,
    BindingSignature,
    OpSchema,
    TypeExpr,
    TypeGrammar,
    TypedArity,
    TypedSignatureSchema,
    arity,
    arrow,
    base,
    first_order_arity,
    instantiate_schema,
    lambda_signature,
    make_signature,
    stlc_schema,
    validate_signature,
)
from .term import Term, Var, Op, fold, map_free_vars, max_free_var, support, wellformed
from .subst import (
    IDENTITY,
    IDENTITY_RENAMING,
    SHIFT,
    Assignment,
    Renaming,
    apply_assignment,
    apply_renaming,
    compose,
    drop,
    lift,
    lift_n,
    lift_n_renaming,
    lift_renaming,
    rename,
    renaming_assignment,
    shift_renaming,
    subst,
    subst1,
)
from .model import (
    MODEL_IDENTITY,
    DBAlgebra,
    DeBruijnMonad,
    LawResult,
    ModelAssignment,
    NOp,
    NVar,
    NamedTerm,
    Report,
    alpha_eq,
    check_binding_conditions,
    check_monad_laws,
    check_morphism,
    free_names,
    from_named,
    initial_fold,
    model_compose,
    model_lift,
    model_lift_n,
    named_model,
    named_subst,
    nat_monad,
    term_model,
    to_named,
)
from .equational import (
    EquationalTheory,
    ExplicitSubst,
    MetaAssignment,
    MetaVar,
    NormalizeResult,
    Rule,
    beta_eta_theory,
    beta_theory,
    check_theory,
    equiv,
    eval_metaterm,
    match_pattern,
    normalize,
    rewrite_step,
    validate_theory,
)
from .typed import (
    TYPED_IDENTITY,
    TNOp,
    TNVar,
    TOp,
    TVar,
    TypecheckError,
    TypedAlgebra,
    TypedAssignment,
    TypedNamedTerm,
    TypedTerm,
    bt_conclusion,
    bt_context,
    bt_enumerate,
    BTLeaf,
    BTNode,
    degenerate_schema,
    from_degenerate,
    t_initial_fold,
    tcompose,
    tlift,
    tlift_gamma,
    tn_alpha_eq,
    to_degenerate,
    tsubst,
    tsubst1,
    typecheck,
    typed_named_model,
    typed_term_model,
    typed_to_named,
    values_arity,
)
from .surface import (
    Diagnostic,
    ParseError,
    parse_assignment,
    parse_renaming,
    parse_signature_file,
    parse_term,
    parse_theory_file,
    parse_type,
    print_assignment,
    print_renaming,
    print_signature,
    print_term,
    term_from_json,
    term_to_json,
)

__version__ = "0.1.0"
