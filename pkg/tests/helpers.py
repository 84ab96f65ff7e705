"""Shared term constructors and workloads for the test suite."""

from __future__ import annotations

from debruijn import Op, Term, Var


def lam(body: Term) -> Term:
    return Op("lam", (body,))


def app(fn: Term, arg: Term) -> Term:
    return Op("app", (fn, arg))


def church(n: int) -> Term:
    """lam f. lam x. f^n x with f = Var 1, x = Var 0."""
    body = Var(0)
    for _ in range(n):
        body = app(Var(1), body)
    return lam(lam(body))


# lam m. lam n. lam f. lam x. m f (n f x)
CHURCH_PLUS = lam(
    lam(
        lam(
            lam(
                app(
                    app(Var(3), Var(1)),
                    app(app(Var(2), Var(1)), Var(0)),
                )
            )
        )
    )
)

OMEGA = app(lam(app(Var(0), Var(0))), lam(app(Var(0), Var(0))))
