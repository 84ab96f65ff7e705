"""Nameless terms over a binding signature.

A term is a variable index or an operation applied to arity-many
arguments.  Terms are immutable; equality is structural.  Traversals use
explicit stacks so that very deep terms do not hit the interpreter's
recursion limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .signature import BindingSignature, first_order_arity


@dataclass(frozen=True)
class Term:
    pass


@dataclass(frozen=True)
class Var(Term):
    index: int


@dataclass(frozen=True)
class Op(Term):
    name: str
    args: tuple[Term, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


def wellformed(sig: BindingSignature, t: Term) -> list[str]:
    """Arity-check every node; returns diagnostics with node paths."""
    errs: list[str] = []
    stack: list[tuple[Term, tuple[int, ...]]] = [(t, ())]
    while stack:
        node, path = stack.pop()
        match node:
            case Var(index):
                if index < 0:
                    errs.append(f"negative variable index at {list(path)}")
            case Op(name, args):
                if name not in sig.ops:
                    errs.append(f"unknown operation '{name}' at {list(path)}")
                    continue
                want = first_order_arity(sig.ops[name])
                if len(args) != want:
                    errs.append(
                        f"operation '{name}' expects {want} arguments, "
                        f"got {len(args)} at {list(path)}"
                    )
                    continue
                for i, a in enumerate(args):
                    stack.append((a, path + (i,)))
            case _:
                errs.append(f"not a term at {list(path)}: {node!r}")
    errs.reverse()
    return errs


def fold(sig: BindingSignature, var_case: Callable, op_case: Callable, t: Term):
    """Bottom-up structural recursion.

    ``var_case(index)`` handles leaves; ``op_case(name, values)`` receives
    the already-folded argument values as a list.
    """
    stack: list[tuple[Term, bool]] = [(t, False)]
    values: list = []
    while stack:
        node, ready = stack.pop()
        match node:
            case Var(index):
                values.append(var_case(index))
            case Op(name, args):
                if ready:
                    k = len(args)
                    folded = values[len(values) - k :]
                    del values[len(values) - k :]
                    values.append(op_case(name, folded))
                else:
                    stack.append((node, True))
                    for a in reversed(args):
                        stack.append((a, False))
    return values[0]


def map_free_vars(t: Term, sig: BindingSignature, on_free: Callable[[int, int], Term]) -> Term:
    """Rebuild ``t``, replacing each free variable occurrence.

    ``on_free(depth, index)`` is called for every ``Var(index)`` under
    ``depth`` accumulated binders with ``index >= depth``; bound
    occurrences are kept as is.
    """
    stack: list[tuple[Term, int, bool]] = [(t, 0, False)]
    values: list[Term] = []
    while stack:
        node, depth, ready = stack.pop()
        match node:
            case Var(index):
                values.append(node if index < depth else on_free(depth, index))
            case Op(name, args):
                if ready:
                    k = len(args)
                    rebuilt = tuple(values[len(values) - k :])
                    del values[len(values) - k :]
                    values.append(Op(name, rebuilt))
                else:
                    stack.append((node, depth, True))
                    binders = sig.ops[name].binders
                    for a, n in zip(reversed(args), reversed(binders)):
                        stack.append((a, depth + n, False))
    return values[0]


def max_free_var(t: Term, sig: BindingSignature) -> Optional[int]:
    """Greatest free index of ``t``, or None when the term is closed."""
    best: Optional[int] = None
    stack: list[tuple[Term, int]] = [(t, 0)]
    while stack:
        node, depth = stack.pop()
        match node:
            case Var(index):
                if index >= depth:
                    free = index - depth
                    if best is None or free > best:
                        best = free
            case Op(name, args):
                binders = sig.ops[name].binders
                for a, n in zip(args, binders):
                    stack.append((a, depth + n))
    return best


def support(t: Term, sig: BindingSignature) -> int:
    """Least N such that substitution only depends on the first N indices."""
    m = max_free_var(t, sig)
    return 0 if m is None else m + 1
