"""Equational theories over a binding signature, realised as oriented
rewriting with normalization-based equivalence.

A rule's two sides are metaterms: metavariables (standing for the
arguments of the rule), object variables, signature operations, and
explicit substitution nodes.  Each side denotes an operation in every
model; rewriting orients left-to-right in the term model, leftmost-
outermost.  Equivalence by joint normalization is a semi-decision: the
answer is three-valued, and "no" is only guaranteed for confluent
orientations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Optional

from .signature import BindingArity, BindingSignature, lambda_signature
from .model import (
    DBAlgebra,
    ModelAssignment,
    Report,
    _run_law,
    model_lift_n,
    named_model,
    term_model,
)
from .term import Term, Var, Op


@dataclass(frozen=True)
class MetaVar:
    """Reference to the i-th argument of the rule."""

    index: int


@dataclass(frozen=True)
class MetaAssignment:
    prefix: tuple = ()
    tail_shift: int = 0


@dataclass(frozen=True)
class ExplicitSubst:
    body: object
    assign: MetaAssignment


# a metaterm is a MetaVar, a Var, an Op whose args are metaterms, or an
# ExplicitSubst
MetaTerm = object


@dataclass(frozen=True)
class Rule:
    name: str
    arity: BindingArity
    left: MetaTerm
    right: MetaTerm


@dataclass(frozen=True)
class EquationalTheory:
    signature: BindingSignature
    rules: tuple[Rule, ...]

    def meta_signature(self) -> BindingSignature:
        return BindingSignature({r.name: r.arity for r in self.rules})


def metavar_count(mt: MetaTerm) -> int:
    match mt:
        case MetaVar(index):
            return index + 1
        case Var(_):
            return 0
        case Op(_, args):
            return max((metavar_count(a) for a in args), default=0)
        case ExplicitSubst(body, assign):
            return max(
                metavar_count(body),
                max((metavar_count(p) for p in assign.prefix), default=0),
            )
    raise TypeError(mt)


def validate_theory(theory: EquationalTheory) -> list[str]:
    """Well-formedness plus the pattern restrictions that keep left-hand
    sides first-order matchable (linear metavariables; explicit
    substitution only as a pure shift directly around a metavariable)."""
    errs: list[str] = []
    sig = theory.signature
    seen = set()
    for rule in theory.rules:
        if rule.name in seen:
            errs.append(f"duplicate rule name '{rule.name}'")
        seen.add(rule.name)
        p = len(rule.arity.binders)
        for side, mt in (("left", rule.left), ("right", rule.right)):
            errs.extend(
                f"rule '{rule.name}' {side}: {e}" for e in _check_metaterm(mt, sig, p)
            )
        used: list[int] = []

        def pattern_ok(mt) -> Optional[str]:
            match mt:
                case MetaVar(index):
                    if index in used:
                        return f"metavariable ?{index} used twice"
                    used.append(index)
                    return None
                case Var(_):
                    return None
                case Op(_, args):
                    for a in args:
                        msg = pattern_ok(a)
                        if msg:
                            return msg
                    return None
                case ExplicitSubst(MetaVar(index), MetaAssignment((), _)):
                    if index in used:
                        return f"metavariable ?{index} used twice"
                    used.append(index)
                    return None
                case ExplicitSubst(_, _):
                    return "explicit substitution in a pattern must be a shift of a metavariable"
            return f"bad pattern node {mt!r}"

        msg = pattern_ok(rule.left)
        if msg:
            errs.append(f"rule '{rule.name}' left: {msg}")
    return errs


def _check_metaterm(mt: MetaTerm, sig: BindingSignature, metavars: int) -> list[str]:
    match mt:
        case MetaVar(index):
            if not 0 <= index < metavars:
                return [f"metavariable ?{index} out of range (< {metavars})"]
            return []
        case Var(index):
            return [] if index >= 0 else [f"negative variable index {index}"]
        case Op(name, args):
            if name not in sig.ops:
                return [f"unknown operation '{name}'"]
            want = len(sig.ops[name].binders)
            if len(args) != want:
                return [f"operation '{name}' expects {want} arguments, got {len(args)}"]
            out = []
            for a in args:
                out.extend(_check_metaterm(a, sig, metavars))
            return out
        case ExplicitSubst(body, assign):
            out = _check_metaterm(body, sig, metavars)
            for p in assign.prefix:
                out.extend(_check_metaterm(p, sig, metavars))
            return out
    return [f"not a metaterm: {mt!r}"]


def eval_metaterm(algebra: DBAlgebra, env: list, mt: MetaTerm):
    """Evaluate a metaterm in a model under an environment for its
    metavariables."""
    match mt:
        case MetaVar(index):
            return env[index]
        case Var(index):
            return algebra.variables(index)
        case Op(name, args):
            return algebra.interpretations[name](
                [eval_metaterm(algebra, env, a) for a in args]
            )
        case ExplicitSubst(body, assign):
            a = ModelAssignment(
                tuple(eval_metaterm(algebra, env, p) for p in assign.prefix),
                assign.tail_shift,
            )
            return algebra.substitution(eval_metaterm(algebra, env, body), a)
    raise TypeError(mt)


# --- matching and rewriting ---------------------------------------------


def _min_free_index(t: Term, sig: BindingSignature) -> Optional[int]:
    best: Optional[int] = None
    stack = [(t, 0)]
    while stack:
        node, depth = stack.pop()
        match node:
            case Var(index):
                if index >= depth:
                    free = index - depth
                    if best is None or free < best:
                        best = free
            case Op(name, args):
                for a, n in zip(args, sig.ops[name].binders):
                    stack.append((a, depth + n))
    return best


def _unshift(t: Term, k: int, sig: BindingSignature) -> Term:
    from .term import map_free_vars

    return map_free_vars(t, sig, lambda d, n: Var(n - k))


def match_pattern(pat: MetaTerm, t: Term, sig: BindingSignature) -> Optional[dict[int, Term]]:
    env: dict[int, Term] = {}

    def go(pat, t) -> bool:
        match pat:
            case MetaVar(index):
                env[index] = t
                return True
            case ExplicitSubst(MetaVar(index), MetaAssignment((), k)):
                # t must be a k-shift of some term: no free index below k
                low = _min_free_index(t, sig)
                if low is not None and low < k:
                    return False
                env[index] = _unshift(t, k, sig)
                return True
            case Var(index):
                return t == Var(index)
            case Op(name, args):
                return (
                    isinstance(t, Op)
                    and t.name == name
                    and len(t.args) == len(args)
                    and all(go(p, a) for p, a in zip(args, t.args))
                )
        return False

    return env if go(pat, t) else None


def _redexes(theory: EquationalTheory, t: Term) -> Iterator[Term]:
    """One-step rewrites, positions enumerated leftmost-outermost."""
    sig = theory.signature
    tm = term_model(sig)

    def go(node: Term, rebuild) -> Iterator[Term]:
        for rule in theory.rules:
            env = match_pattern(rule.left, node, sig)
            if env is not None:
                p = len(rule.arity.binders)
                args = [env.get(i, Var(0)) for i in range(p)]
                yield rebuild(eval_metaterm(tm, args, rule.right))
        if isinstance(node, Op):
            for i, a in enumerate(node.args):
                def wrap(u, node=node, i=i, rebuild=rebuild):
                    return rebuild(
                        Op(node.name, node.args[:i] + (u,) + node.args[i + 1 :])
                    )

                yield from go(a, wrap)

    return go(t, lambda u: u)


def rewrite_step(theory: EquationalTheory, t: Term) -> list[Term]:
    return list(_redexes(theory, t))


@dataclass(frozen=True)
class NormalizeResult:
    term: Term
    exhausted: bool


def normalize(theory: EquationalTheory, t: Term, fuel: int) -> NormalizeResult:
    """Repeatedly contract the leftmost-outermost redex until none is
    left or fuel runs out."""
    for _ in range(fuel):
        step = next(_redexes(theory, t), None)
        if step is None:
            return NormalizeResult(t, exhausted=False)
        t = step
    if next(_redexes(theory, t), None) is None:
        return NormalizeResult(t, exhausted=False)
    return NormalizeResult(t, exhausted=True)


def equiv(theory: EquationalTheory, t1: Term, t2: Term, fuel: int = 1000) -> str:
    """'yes', 'no', or 'unknown'.  'yes' by joinability is always sound;
    'no' assumes the oriented system is confluent."""
    r1 = normalize(theory, t1, fuel)
    r2 = normalize(theory, t2, fuel)
    if r1.term == r2.term:
        return "yes"
    if not r1.exhausted and not r2.exhausted:
        return "no"
    return "unknown"


# --- half-equation checking ---------------------------------------------


def check_half_equation(
    sig: BindingSignature,
    arity: BindingArity,
    side: MetaTerm,
    cases: int = 200,
    seed: int = 0,
) -> Report:
    """Fuzz the induced operation in the term model: the binding condition
    for the declared arity, and naturality along nameless-to-named
    conversion."""
    from .gen import random_assignment, random_term
    from .model import to_named

    tm = term_model(sig)
    nm = named_model(sig)
    binders = arity.binders
    report = Report()

    def samples():
        rng = random.Random(seed)
        for _ in range(cases):
            yield (
                [random_term(sig, rng, max_depth=4) for _ in binders],
                random_assignment(sig, rng),
            )

    def binding_ok(s) -> bool:
        args, sigma = s
        ma = ModelAssignment(sigma.prefix, sigma.tail_shift)
        lhs = tm.substitution(eval_metaterm(tm, args, side), ma)
        rhs = eval_metaterm(
            tm,
            [
                tm.substitution(x, model_lift_n(tm, ma, n))
                for x, n in zip(args, binders)
            ],
            side,
        )
        return lhs == rhs

    def natural_ok(s) -> bool:
        args, _ = s
        lhs = to_named(sig, eval_metaterm(tm, args, side))
        rhs = eval_metaterm(nm, [to_named(sig, x) for x in args], side)
        return nm.equal(lhs, rhs)

    _run_law(report, "half-equation:binding", seed, samples(), binding_ok)
    _run_law(report, "half-equation:naturality", seed, samples(), natural_ok)
    return report


def check_theory(theory: EquationalTheory, cases: int = 200, seed: int = 0) -> Report:
    report = Report()
    for rule in theory.rules:
        for side_name, side in (("L", rule.left), ("R", rule.right)):
            sub = check_half_equation(theory.signature, rule.arity, side, cases, seed)
            for res in sub.results:
                res.law = f"{rule.name}:{side_name}:{res.law}"
                report.results.append(res)
    return report


# --- builtin theories ---------------------------------------------------


def beta_theory() -> EquationalTheory:
    """app(lam(e1), e2) = e1[e2 . id] over the lambda signature."""
    sig = lambda_signature()
    beta = Rule(
        "beta",
        BindingArity((1, 0)),
        Op("app", (Op("lam", (MetaVar(0),)), MetaVar(1))),
        ExplicitSubst(MetaVar(0), MetaAssignment((MetaVar(1),), 0)),
    )
    return EquationalTheory(sig, (beta,))


def beta_eta_theory() -> EquationalTheory:
    """Beta plus eta: lam(app(e[shift], 0)) = e."""
    sig = lambda_signature()
    beta = beta_theory().rules[0]
    eta = Rule(
        "eta",
        BindingArity((0,)),
        Op(
            "lam",
            (
                Op(
                    "app",
                    (ExplicitSubst(MetaVar(0), MetaAssignment((), 1)), Var(0)),
                ),
            ),
        ),
        MetaVar(0),
    )
    return EquationalTheory(sig, (beta, eta))
