"""Simply-typed extension: typechecking, per-type lifting/substitution,
typed laws, the degenerate single-type reduction, and the values
signature built from application binary trees."""

from __future__ import annotations

import random

import pytest

from debruijn import (
    BTLeaf,
    BTNode,
    TOp,
    TVar,
    TypecheckError,
    TypedArity,
    TypedAssignment,
    Var,
    arrow,
    base,
    bt_conclusion,
    bt_context,
    bt_enumerate,
    degenerate_schema,
    from_degenerate,
    lambda_signature,
    stlc_schema,
    subst,
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
from debruijn.gen import (
    ground_types,
    random_assignment,
    random_term,
    random_typed_assignment,
    random_typed_term,
)
from debruijn.typed import typed_assignment_at

from helpers import app, lam

SCH = stlc_schema({"a"})
SCH2 = stlc_schema({"a", "b"})
A, B = base("a"), base("b")


def tlam(s, t, body):
    return TOp("lam", (s, t), (body,))


def tapp(s, t, fn, arg):
    return TOp("app", (s, t), (fn, arg))


# --- typechecking -------------------------------------------------------


def test_typecheck_identity():
    assert typecheck(SCH, tlam(A, A, TVar(0, A))) == arrow(A, A)


def test_typecheck_application():
    t = tapp(A, A, tlam(A, A, TVar(0, A)), TVar(0, A))
    assert typecheck(SCH, t) == A


def test_typecheck_rejects_bad_function_position():
    t = tapp(A, A, TVar(0, A), TVar(0, A))
    with pytest.raises(TypecheckError) as e:
        typecheck(SCH, t)
    assert "expected" in str(e.value)


def test_typecheck_error_carries_path():
    bad = tlam(A, A, tapp(A, A, TVar(0, A), TVar(0, A)))
    with pytest.raises(TypecheckError) as e:
        typecheck(SCH, bad)
    assert e.value.path == (0,)


def test_typecheck_unknown_schema():
    with pytest.raises(TypecheckError):
        typecheck(SCH, TOp("pair", (), ()))


# --- typed assignments and lifting --------------------------------------


def test_typed_assignment_canonicalization():
    sigma = TypedAssignment({A: ((TVar(0, A),), 1)})
    assert sigma.components == {}  # pointwise identity collapses

    # a reproducible trailing entry is popped into the tail shift
    sigma = TypedAssignment({A: ((TVar(4, A),), 5)})
    assert sigma.component(A) == ((), 4)


def test_tlift_identity():
    assert tlift(TypedAssignment(), A, SCH) == TypedAssignment()


def test_tlift_single_type():
    # [TVar 3; ^9] maps 0 -> 3, n+1 -> 9+n; lifting gives [0, 4; ^10]
    sigma = TypedAssignment({A: ((TVar(3, A),), 9)})
    lifted = tlift(sigma, A, SCH)
    assert lifted.component(A) == ((TVar(0, A), TVar(4, A)), 10)


def test_tlift_leaves_other_types_alone():
    sigma = TypedAssignment({A: ((TVar(3, A),), 9)})
    lifted = tlift(sigma, B, SCH2)
    # the b-shift fixes a-indices, so the a-component is untouched
    assert lifted.component(A) == sigma.component(A)
    assert lifted.component(B) == ((TVar(0, B),), 1) or lifted.component(B) == ((), 0)


def test_tlift_shifts_cross_type_occurrences():
    # a component at type a->a that mentions an a-variable must see the
    # a-shift when lifting at a
    f = arrow(A, A)
    sigma = TypedAssignment({f: ((tlam(A, A, TVar(1, A)),), 0)})
    lifted = tlift(sigma, A, SCH)
    assert lifted.component(f)[0][0] == tlam(A, A, TVar(2, A))


def test_tlift_gamma():
    sigma = TypedAssignment({A: ((TVar(3, A),), 0)})
    assert tlift_gamma(sigma, (), SCH) == sigma
    assert tlift_gamma(sigma, (A,), SCH) == tlift(sigma, A, SCH)
    assert tlift_gamma(sigma, (A, B), SCH2) == tlift(tlift(sigma, A, SCH2), B, SCH2)


# --- typed substitution -------------------------------------------------


def test_tsubst_variable_clause():
    u = tlam(A, A, TVar(0, A))
    sigma = TypedAssignment({arrow(A, A): ((u,), 0)})
    assert tsubst(TVar(0, arrow(A, A)), sigma, SCH) == u


def test_tsubst_under_binder():
    # typed analogue of lam(app(1,0))[lam(0) . id]; the function position
    # has arrow type, so the free variable lives in the arrow-type index
    # space at index 0 even under the a-binder
    body = tapp(A, A, TVar(0, arrow(A, A)), TVar(0, A))
    t = tlam(A, A, body)
    ident = tlam(A, A, TVar(0, A))
    sigma = TypedAssignment({arrow(A, A): ((ident,), 0)})
    got = tsubst(t, sigma, SCH)
    assert got == tlam(A, A, tapp(A, A, ident, TVar(0, A)))


def test_tsubst_identity():
    rng = random.Random(31)
    for _ in range(100):
        ty = rng.choice(ground_types(SCH.grammar))
        t = random_typed_term(SCH, rng, ty)
        assert tsubst(t, TypedAssignment(), SCH) == t


def test_tsubst1():
    u = tlam(A, A, TVar(0, A))
    t = TVar(0, arrow(A, A))
    assert tsubst1(t, u, arrow(A, A), SCH) == u


def test_subject_invariance():
    rng = random.Random(37)
    pool = ground_types(SCH.grammar)
    for _ in range(300):
        ty = rng.choice(pool)
        t = random_typed_term(SCH, rng, ty)
        sigma = random_typed_assignment(SCH, rng)
        assert typecheck(SCH, tsubst(t, sigma, SCH)) == ty


def test_typed_monad_laws():
    rng = random.Random(41)
    pool = ground_types(SCH.grammar)
    for _ in range(300):
        ty = rng.choice(pool)
        t = random_typed_term(SCH, rng, ty)
        f = random_typed_assignment(SCH, rng)
        g = random_typed_assignment(SCH, rng)
        assert tsubst(tsubst(t, f, SCH), g, SCH) == tsubst(t, tcompose(f, g, SCH), SCH)
        n = rng.randrange(5)
        assert tsubst(TVar(n, ty), f, SCH) == typed_assignment_at(f, ty, n)
        assert tsubst(t, TypedAssignment(), SCH) == t


def test_typed_binding_condition():
    rng = random.Random(43)
    tm = typed_term_model(SCH)
    pool = ground_types(SCH.grammar)
    for _ in range(200):
        # sample an operation instance and check Eq-style commutation
        s, t_ = rng.choice(pool), rng.choice(pool)
        for name, targs in (("lam", (s, t_)), ("app", (s, t_))):
            from debruijn.signature import instantiate_schema

            ar = instantiate_schema(SCH.schemas[name], targs, SCH.grammar)
            args = [
                random_typed_term(SCH, rng, tau, max_depth=3) for _, tau in ar.premises
            ]
            sigma = random_typed_assignment(SCH, rng)
            lhs = tsubst(TOp(name, targs, tuple(args)), sigma, SCH)
            rhs = TOp(
                name,
                targs,
                tuple(
                    tsubst(x, tlift_gamma(sigma, gamma, SCH), SCH)
                    for x, (gamma, _) in zip(args, ar.premises)
                ),
            )
            assert lhs == rhs


def test_per_type_independence():
    # if a component mentions no b-variables, lifting at b leaves it alone
    rng = random.Random(47)
    pool_a = [t for t in ground_types(SCH2.grammar) if "b" not in str(t)]
    for _ in range(50):
        ty = rng.choice(pool_a)
        prefix = tuple(
            random_typed_term(SCH2, rng, ty, max_depth=2, type_pool=pool_a)
            for _ in range(rng.randint(0, 2))
        )
        sigma = TypedAssignment({ty: (prefix, rng.randint(0, 2))})
        lifted = tlift(sigma, B, SCH2)
        assert lifted.component(ty)[0] == sigma.component(ty)[0]


# --- typed models and oracle --------------------------------------------


def test_typed_fold_into_term_model_is_identity():
    rng = random.Random(53)
    tm = typed_term_model(SCH)
    for _ in range(100):
        t = random_typed_term(SCH, rng, A)
        assert t_initial_fold(SCH, tm, t) == t


def test_typed_named_oracle_agrees_with_tsubst():
    rng = random.Random(59)
    nm = typed_named_model(SCH)
    pool = ground_types(SCH.grammar)
    for _ in range(200):
        ty = rng.choice(pool)
        t = random_typed_term(SCH, rng, ty, max_depth=4)
        sigma = random_typed_assignment(SCH, rng, max_depth=3)
        lhs = typed_to_named(SCH, tsubst(t, sigma, SCH))
        named_sigma = TypedAssignment(
            {
                ty2: (tuple(typed_to_named(SCH, u) for u in prefix), k)
                for ty2, (prefix, k) in sigma.components.items()
            }
        )
        rhs = nm.substitution(typed_to_named(SCH, t), named_sigma)
        assert tn_alpha_eq(lhs, rhs)


# --- degenerate reduction -----------------------------------------------


def test_degenerate_matches_untyped():
    sig = lambda_signature()
    deg = degenerate_schema(sig)
    rng = random.Random(61)
    for _ in range(200):
        t = random_term(sig, rng, max_depth=5)
        a = random_assignment(sig, rng)
        o = base("o")
        dsigma = TypedAssignment(
            {o: (tuple(to_degenerate(u) for u in a.prefix), a.tail_shift)}
        )
        got = tsubst(to_degenerate(t), dsigma, deg)
        assert from_degenerate(got) == subst(t, a, sig)


def test_degenerate_round_trip():
    sig = lambda_signature()
    rng = random.Random(67)
    for _ in range(100):
        t = random_term(sig, rng)
        assert from_degenerate(to_degenerate(t)) == t


def test_degenerate_typechecks():
    sig = lambda_signature()
    deg = degenerate_schema(sig)
    t = to_degenerate(lam(app(Var(1), Var(0))))
    assert typecheck(deg, t) == base("o")


# --- application binary trees -------------------------------------------


def test_bt_leaf():
    leaf = BTLeaf(A)
    assert bt_conclusion(leaf) == A
    assert bt_context(leaf) == (A,)


def test_bt_node():
    t1, t2 = base("t1"), base("t2")
    node = BTNode(BTLeaf(arrow(t1, t2)), BTLeaf(t1))
    assert bt_conclusion(node) == t2
    assert bt_context(node) == (arrow(t1, t2), t1)


def test_bt_node_rejects_mismatch():
    with pytest.raises(ValueError):
        bt_conclusion(BTNode(BTLeaf(A), BTLeaf(A)))


def test_values_arity_abstraction():
    # a single leaf gives exactly the arity of lambda-abstraction
    s, t = base("s"), A
    assert values_arity(BTLeaf(t), s) == TypedArity((((s,), t),), arrow(s, t))


def test_values_arity_application_tree():
    t1, t2, s = base("t1"), base("t2"), base("s")
    node = BTNode(BTLeaf(arrow(t1, t2)), BTLeaf(t1))
    assert values_arity(node, s) == TypedArity(
        (((s,), arrow(t1, t2)), ((s,), t1)),
        arrow(s, t2),
    )


def test_values_arity_premise_count():
    t1, t2, t3 = base("t1"), base("t2"), base("t3")
    pi = BTNode(
        BTNode(BTLeaf(arrow(t1, arrow(t2, t3))), BTLeaf(t1)),
        BTLeaf(t2),
    )
    ar = values_arity(pi, A)
    assert len(ar.premises) == 3


def test_bt_enumerate_single_leaf():
    grammar = SCH.grammar
    assert bt_enumerate(grammar, A, 1) == [BTLeaf(A)]
    assert bt_enumerate(grammar, A, 0) == []


def test_bt_enumerate_example_tree():
    from debruijn import TypeGrammar

    grammar = TypeGrammar({"t1": 0, "t2": 0, "->": 2})
    t1, t2 = base("t1"), base("t2")
    got = bt_enumerate(grammar, t2, 2, context_types=(arrow(t1, t2), t1))
    expected_node = BTNode(BTLeaf(arrow(t1, t2)), BTLeaf(t1))
    assert BTLeaf(t2) in got
    assert expected_node in got
    # the example derivation is the only 2-leaf tree here
    assert [d for d in got if d != BTLeaf(t2)] == [expected_node]


def test_bt_enumerate_conclusions():
    grammar = SCH2.grammar
    goal = arrow(A, B)
    for d in bt_enumerate(grammar, goal, 3, context_types=(arrow(A, arrow(A, B)),)):
        assert bt_conclusion(d) == goal
