"""Simply-typed terms over a typed signature schema: per-type variable
indices, typed lifting and substitution, typed models and folds, and the
application-binary-tree signature generator for call-by-value languages.

Variables of each type have their own index space; lifting at a type
shifts only that type's indices and leaves every other type untouched.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from .signature import (
    TypeExpr,
    TypeGrammar,
    TypedArity,
    TypedSignatureSchema,
    arrow,
    instantiate_schema,
)


@dataclass(frozen=True)
class TypedTerm:
    pass


@dataclass(frozen=True)
class TVar(TypedTerm):
    index: int
    ty: TypeExpr


@dataclass(frozen=True)
class TOp(TypedTerm):
    name: str
    type_args: tuple[TypeExpr, ...]
    args: tuple[TypedTerm, ...]

    def __post_init__(self):
        object.__setattr__(self, "type_args", tuple(self.type_args))
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class TypedAssignment:
    """Family of finite assignments indexed by type; types not present
    are the identity."""

    components: dict[TypeExpr, tuple[tuple, int]] = field(default_factory=dict)

    def __post_init__(self):
        norm = {}
        for ty, (prefix, k) in self.components.items():
            prefix = list(prefix)
            while prefix and k > 0 and prefix[-1] == TVar(k - 1, ty):
                prefix.pop()
                k -= 1
            if prefix or k != 0:
                norm[ty] = (tuple(prefix), k)
        object.__setattr__(self, "components", norm)

    def component(self, ty: TypeExpr) -> tuple[tuple, int]:
        return self.components.get(ty, ((), 0))


TYPED_IDENTITY = TypedAssignment()


def typed_assignment_at(sigma: TypedAssignment, ty: TypeExpr, n: int) -> TypedTerm:
    prefix, k = sigma.component(ty)
    return prefix[n] if n < len(prefix) else TVar(k + (n - len(prefix)), ty)


# --- typing -------------------------------------------------------------


class TypecheckError(Exception):
    def __init__(self, message: str, path: tuple[int, ...] = ()):
        super().__init__(f"{message} (at {list(path)})" if path else message)
        self.path = path


def op_arity(schema: TypedSignatureSchema, t: TOp, path: tuple[int, ...] = ()) -> TypedArity:
    if t.name not in schema.schemas:
        raise TypecheckError(f"unknown operation schema '{t.name}'", path)
    try:
        return instantiate_schema(schema.schemas[t.name], t.type_args, schema.grammar)
    except ValueError as e:
        raise TypecheckError(str(e), path) from None


def typecheck(schema: TypedSignatureSchema, t: TypedTerm) -> TypeExpr:
    """Type of ``t``; binder counts along each premise's context shape
    the per-type index discipline but do not affect the computed type."""

    def go(node: TypedTerm, path: tuple[int, ...]) -> TypeExpr:
        match node:
            case TVar(index, ty):
                errs = schema.grammar.wellformed(ty)
                if errs:
                    raise TypecheckError(errs[0], path)
                if index < 0:
                    raise TypecheckError("negative variable index", path)
                return ty
            case TOp(_, _, args):
                ar = op_arity(schema, node, path)
                if len(args) != len(ar.premises):
                    raise TypecheckError(
                        f"operation '{node.name}' expects {len(ar.premises)} "
                        f"arguments, got {len(args)}",
                        path,
                    )
                for i, (a, (_, want)) in enumerate(zip(args, ar.premises)):
                    got = go(a, path + (i,))
                    if got != want:
                        raise TypecheckError(
                            f"argument {i} of '{node.name}' has type {got}, "
                            f"expected {want}",
                            path,
                        )
                return ar.conclusion
        raise TypecheckError(f"not a typed term: {node!r}", path)

    return go(t, ())


# --- renaming and substitution ------------------------------------------


def multi_shift(
    t: TypedTerm, by: dict[TypeExpr, int], schema: TypedSignatureSchema
) -> TypedTerm:
    """Add ``by[ty]`` to every free index of type ``ty``."""
    if not any(by.values()):
        return t

    def go(node: TypedTerm, depth: Counter) -> TypedTerm:
        match node:
            case TVar(index, ty):
                if index >= depth[ty]:
                    return TVar(index + by.get(ty, 0), ty)
                return node
            case TOp(name, targs, args):
                ar = op_arity(schema, node)
                new = tuple(
                    go(a, depth + Counter(gamma))
                    for a, (gamma, _) in zip(args, ar.premises)
                )
                return TOp(name, targs, new)
        raise TypeError(node)

    return go(t, Counter())


def tlift(
    sigma: TypedAssignment, ty: TypeExpr, schema: TypedSignatureSchema
) -> TypedAssignment:
    """Lift at one type: fixes the new index 0 of that type, shifts the
    type's other images, and renames every other component by the
    type-local shift (which leaves their indices alone)."""
    components = dict(sigma.components)
    prefix, k = sigma.component(ty)
    out = {}
    for ty2, (p2, k2) in components.items():
        if ty2 == ty:
            continue
        out[ty2] = (tuple(multi_shift(t, {ty: 1}, schema) for t in p2), k2)
    out[ty] = (
        (TVar(0, ty),) + tuple(multi_shift(t, {ty: 1}, schema) for t in prefix),
        k + 1,
    )
    return TypedAssignment(out)


def tlift_gamma(
    sigma: TypedAssignment, gamma: tuple[TypeExpr, ...], schema: TypedSignatureSchema
) -> TypedAssignment:
    for ty in gamma:
        sigma = tlift(sigma, ty, schema)
    return sigma


def tsubst(
    t: TypedTerm, sigma: TypedAssignment, schema: TypedSignatureSchema
) -> TypedTerm:
    """Parallel substitution; argument i of an operation is substituted
    under the lifting of ``sigma`` along that premise's context.

    Uses the per-type analogue of the shift identity: under ``depth``
    accumulated binders, a free variable's image is the unlifted image
    shifted by the per-type binder counts.
    """

    def go(node: TypedTerm, depth: Counter) -> TypedTerm:
        match node:
            case TVar(index, ty):
                d = depth[ty]
                if index < d:
                    return node
                image = typed_assignment_at(sigma, ty, index - d)
                return multi_shift(image, dict(depth), schema)
            case TOp(name, targs, args):
                ar = op_arity(schema, node)
                new = tuple(
                    go(a, depth + Counter(gamma))
                    for a, (gamma, _) in zip(args, ar.premises)
                )
                return TOp(name, targs, new)
        raise TypeError(node)

    return go(t, Counter())


def tcompose(
    sigma: TypedAssignment, nu: TypedAssignment, schema: TypedSignatureSchema
) -> TypedAssignment:
    """Pointwise n -> tsubst(sigma(n), nu) at every type."""
    out = {}
    for ty in set(sigma.components) | set(nu.components):
        prefix, k = sigma.component(ty)
        head = tuple(tsubst(t, nu, schema) for t in prefix)
        nprefix, nk = nu.component(ty)
        if k < len(nprefix):
            out[ty] = (head + nprefix[k:], nk)
        else:
            out[ty] = (head, nk + (k - len(nprefix)))
    return TypedAssignment(out)


def tsubst1(t: TypedTerm, u: TypedTerm, ty: TypeExpr, schema: TypedSignatureSchema) -> TypedTerm:
    return tsubst(t, TypedAssignment({ty: ((u,), 0)}), schema)


# --- typed models -------------------------------------------------------


@dataclass
class TypedAlgebra:
    """Typed model contract: per-type variables, substitution against a
    typed assignment over the carrier, and one interpretation per
    (schema, type arguments) instantiation."""

    variables: Callable[[int, TypeExpr], Any]
    substitution: Callable[[Any, TypedAssignment], Any]
    interpretation: Callable[[str, tuple[TypeExpr, ...], list], Any]
    equal: Callable[[Any, Any], bool] = field(default=lambda a, b: a == b)


def typed_term_model(schema: TypedSignatureSchema) -> TypedAlgebra:
    return TypedAlgebra(
        variables=TVar,
        substitution=lambda t, sigma: tsubst(t, sigma, schema),
        interpretation=lambda name, targs, args: TOp(name, targs, tuple(args)),
    )


def t_initial_fold(schema: TypedSignatureSchema, algebra: TypedAlgebra, t: TypedTerm):
    match t:
        case TVar(index, ty):
            return algebra.variables(index, ty)
        case TOp(name, targs, args):
            return algebra.interpretation(
                name, targs, [t_initial_fold(schema, algebra, a) for a in args]
            )
    raise TypeError(t)


# --- typed named oracle -------------------------------------------------


@dataclass(frozen=True)
class TypedNamedTerm:
    pass


@dataclass(frozen=True)
class TNVar(TypedNamedTerm):
    name: str
    ty: TypeExpr


@dataclass(frozen=True)
class TNOp(TypedNamedTerm):
    name: str
    type_args: tuple[TypeExpr, ...]
    # per argument: (binder declarations ordered along the premise
    # context, body); a binder declaration is a (name, type) pair
    args: tuple[tuple[tuple[tuple[str, TypeExpr], ...], TypedNamedTerm], ...]


def tn_free(t: TypedNamedTerm) -> set[tuple[str, TypeExpr]]:
    match t:
        case TNVar(name, ty):
            return {(name, ty)}
        case TNOp(_, _, args):
            out: set = set()
            for binders, body in args:
                out |= tn_free(body) - set(binders)
            return out
    raise TypeError(t)


def tn_alpha_eq(a: TypedNamedTerm, b: TypedNamedTerm) -> bool:
    def go(a, b, ea, eb, depth) -> bool:
        match a, b:
            case (TNVar(_, ta), TNVar(_, tb)):
                if ta != tb:
                    return False
                ka, kb = (a.name, ta), (b.name, tb)
                ia, ib = ea.get(ka), eb.get(kb)
                return ia == ib and (ia is not None or a.name == b.name)
            case (TNOp(na, ga, xs), TNOp(nb, gb, ys)) if (
                na == nb and ga == gb and len(xs) == len(ys)
            ):
                for (bx, tx), (by, ty_) in zip(xs, ys):
                    if len(bx) != len(by):
                        return False
                    if tuple(t for _, t in bx) != tuple(t for _, t in by):
                        return False
                    na_ = ea | {d: depth + i for i, d in enumerate(bx)}
                    nb_ = eb | {d: depth + i for i, d in enumerate(by)}
                    if not go(tx, ty_, na_, nb_, depth + len(bx)):
                        return False
                return True
        return False

    return go(a, b, {}, {}, 0)


def tn_subst(
    t: TypedNamedTerm, mapping: dict[tuple[str, TypeExpr], TypedNamedTerm]
) -> TypedNamedTerm:
    from .model import fresh_names

    match t:
        case TNVar(name, ty):
            return mapping.get((name, ty), t)
        case TNOp(op, targs, args):
            new_args = []
            for binders, body in args:
                fv = tn_free(body)
                bset = set(binders)
                relevant = {
                    k: v for k, v in mapping.items() if k in fv and k not in bset
                }
                avoid = {n for n, _ in fv - bset} | {
                    n for v in relevant.values() for n, _ in tn_free(v)
                }
                inner = dict(relevant)
                new_binders = []
                for bname, bty in binders:
                    if bname in avoid:
                        (z,) = fresh_names(1, avoid | {n for n, _ in new_binders})
                        inner[(bname, bty)] = TNVar(z, bty)
                        new_binders.append((z, bty))
                    else:
                        inner.pop((bname, bty), None)
                        new_binders.append((bname, bty))
                new_args.append((tuple(new_binders), tn_subst(body, inner)))
            return TNOp(op, targs, tuple(new_args))
    raise TypeError(t)


def typed_named_model(schema: TypedSignatureSchema) -> TypedAlgebra:
    from .model import default_supply, default_supply_index, fresh_names

    def variables(n: int, ty: TypeExpr) -> TypedNamedTerm:
        return TNVar(default_supply(n), ty)

    def value_at(sigma: TypedAssignment, ty: TypeExpr, n: int) -> TypedNamedTerm:
        prefix, k = sigma.component(ty)
        return prefix[n] if n < len(prefix) else variables(k + (n - len(prefix)), ty)

    def substitution(t: TypedNamedTerm, sigma: TypedAssignment) -> TypedNamedTerm:
        mapping = {}
        for name, ty in tn_free(t):
            idx = default_supply_index(name)
            if idx is not None:
                mapping[(name, ty)] = value_at(sigma, ty, idx)
        return tn_subst(t, mapping)

    def interpretation(name: str, targs, args: list) -> TypedNamedTerm:
        ar = instantiate_schema(schema.schemas[name], tuple(targs), schema.grammar)
        pieces = []
        for (gamma, _), e in zip(ar.premises, args):
            if not gamma:
                pieces.append(((), e))
                continue
            counts = Counter(gamma)
            fv = tn_free(e)
            zs = fresh_names(len(gamma), {n for n, _ in fv})
            binders = tuple((z, ty) for z, ty in zip(zs, gamma))
            # position j of type ty binds the index equal to the number
            # of later occurrences of ty in gamma (rightmost binds 0)
            index_of: dict[tuple[TypeExpr, int], tuple[str, TypeExpr]] = {}
            for j, (z, ty) in enumerate(binders):
                later = sum(1 for ty2 in gamma[j + 1 :] if ty2 == ty)
                index_of[(ty, later)] = (z, ty)
            mapping = {}
            for vname, vty in fv:
                idx = default_supply_index(vname)
                if idx is None:
                    continue
                c = counts[vty]
                if idx < c:
                    z, _ = index_of[(vty, idx)]
                    mapping[(vname, vty)] = TNVar(z, vty)
                else:
                    mapping[(vname, vty)] = variables(idx - c, vty)
            pieces.append((binders, tn_subst(e, mapping)))
        return TNOp(name, tuple(targs), tuple(pieces))

    return TypedAlgebra(
        variables=variables,
        substitution=substitution,
        interpretation=interpretation,
        equal=tn_alpha_eq,
    )


def typed_to_named(schema: TypedSignatureSchema, t: TypedTerm) -> TypedNamedTerm:
    return t_initial_fold(schema, typed_named_model(schema), t)


# --- degenerate single-type reduction -----------------------------------


def degenerate_schema(sig, base_name: str = "o") -> TypedSignatureSchema:
    """Mirror an untyped signature as a typed one over a single type."""
    from .signature import OpSchema, TypeGrammar, base

    o = base(base_name)
    schemas = {}
    for name, a in sig.ops.items():
        premises = tuple(((o,) * n, o) for n in a.binders)
        schemas[name] = OpSchema(name, (), TypedArity(premises, o))
    return TypedSignatureSchema(TypeGrammar({base_name: 0}), schemas)


def to_degenerate(t, base_name: str = "o") -> TypedTerm:
    from .signature import base
    from .term import Var, Op

    o = base(base_name)
    match t:
        case Var(index):
            return TVar(index, o)
        case Op(name, args):
            return TOp(name, (), tuple(to_degenerate(a, base_name) for a in args))
    raise TypeError(t)


def from_degenerate(t: TypedTerm):
    from .term import Var, Op

    match t:
        case TVar(index, _):
            return Var(index)
        case TOp(name, _, args):
            return Op(name, tuple(from_degenerate(a) for a in args))
    raise TypeError(t)


# --- application binary trees (values signature) ------------------------


@dataclass(frozen=True)
class BTDerivation:
    pass


@dataclass(frozen=True)
class BTLeaf(BTDerivation):
    ty: TypeExpr


@dataclass(frozen=True)
class BTNode(BTDerivation):
    left: BTDerivation
    right: BTDerivation


def bt_conclusion(d: BTDerivation) -> TypeExpr:
    match d:
        case BTLeaf(ty):
            return ty
        case BTNode(left, right):
            lc = bt_conclusion(left)
            rc = bt_conclusion(right)
            if lc.ctor != "->" or len(lc.args) != 2 or lc.args[0] != rc:
                raise ValueError(f"ill-formed application node: {lc} applied to {rc}")
            return lc.args[1]
    raise TypeError(d)


def bt_context(d: BTDerivation) -> tuple[TypeExpr, ...]:
    """Leaf types left to right."""
    match d:
        case BTLeaf(ty):
            return (ty,)
        case BTNode(left, right):
            return bt_context(left) + bt_context(right)
    raise TypeError(d)


def _subexprs(ty: TypeExpr) -> list[TypeExpr]:
    out = [ty]
    for a in ty.args:
        out.extend(_subexprs(a))
    return out


def bt_enumerate(
    grammar: Optional[TypeGrammar],
    conclusion: TypeExpr,
    max_leaves: int,
    context_types: tuple[TypeExpr, ...] = (),
) -> list[BTDerivation]:
    """All application binary trees with the given conclusion and at most
    ``max_leaves`` leaves, with leaf types restricted to subexpressions of
    the conclusion and the supplied context types.  Ordered by leaf count,
    then construction order."""
    if grammar is not None:
        for ty in (conclusion, *context_types):
            errs = grammar.wellformed(ty)
            if errs:
                raise ValueError("; ".join(errs))
    universe: list[TypeExpr] = []
    for ty in (conclusion, *context_types):
        for sub in _subexprs(ty):
            if sub not in universe:
                universe.append(sub)

    memo: dict[tuple[TypeExpr, int], list[BTDerivation]] = {}

    def exact(target: TypeExpr, n: int) -> list[BTDerivation]:
        key = (target, n)
        if key in memo:
            return memo[key]
        out: list[BTDerivation] = []
        if n == 1:
            if target in universe:
                out.append(BTLeaf(target))
        elif n > 1:
            for src in universe:
                fn_ty = arrow(src, target)
                for l in range(1, n):
                    for left in exact(fn_ty, l):
                        for right in exact(src, n - l):
                            out.append(BTNode(left, right))
        memo[key] = out
        return out

    result: list[BTDerivation] = []
    for n in range(1, max_leaves + 1):
        result.extend(exact(conclusion, n))
    return result


def values_arity(pi: BTDerivation, binder_ty: TypeExpr) -> TypedArity:
    """Arity of the packed value operation for one application tree: one
    premise per leaf, each binding one variable of the abstraction type."""
    leaves = bt_context(pi)
    tau = bt_conclusion(pi)
    return TypedArity(
        tuple(((binder_ty,), leaf) for leaf in leaves),
        arrow(binder_ty, tau),
    )
