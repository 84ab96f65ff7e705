"""Walkthrough: equational theories as rewriting — Church arithmetic
under beta, eta-identification, and fuel exhaustion on Omega.

Run with: python3 demos/beta_normalization.py
"""

from debruijn import (
    Op,
    Var,
    beta_eta_theory,
    beta_theory,
    equiv,
    normalize,
    print_term,
)


def lam(b):
    return Op("lam", (b,))


def app(f, x):
    return Op("app", (f, x))


def church(n):
    body = Var(0)
    for _ in range(n):
        body = app(Var(1), body)
    return lam(lam(body))


plus = lam(lam(lam(lam(app(app(Var(3), Var(1)), app(app(Var(2), Var(1)), Var(0)))))))

beta = beta_theory()

two_plus_two = app(app(plus, church(2)), church(2))
r = normalize(beta, two_plus_two, 10_000)
print("2 + 2 =", print_term(r.term))
print("equals church(4):", r.term == church(4))

omega = app(lam(app(Var(0), Var(0))), lam(app(Var(0), Var(0))))
r = normalize(beta, omega, 50)
print("\nomega exhausted after 50 steps:", r.exhausted)
print("equiv(omega, 0):", equiv(beta, omega, Var(0), 50))

betaeta = beta_eta_theory()
expansion = lam(app(Var(6), Var(0)))  # eta-expansion of Var 5
print("\neta identifies lam(app 6 0) with 5:", equiv(betaeta, expansion, Var(5)))
