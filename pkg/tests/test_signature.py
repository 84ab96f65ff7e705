"""Signature declarations, typed schemas, and validation."""

from __future__ import annotations

import pytest

from debruijn import (
    BindingArity,
    OpSchema,
    TypedArity,
    TypedSignatureSchema,
    TypeGrammar,
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


def test_first_order_arity():
    assert first_order_arity(arity(1)) == 1
    assert first_order_arity(arity(0, 0)) == 2
    assert first_order_arity(arity()) == 0


def test_lambda_signature_shape():
    sig = lambda_signature()
    assert sig.ops["lam"] == BindingArity((1,))
    assert sig.ops["app"] == BindingArity((0, 0))
    assert first_order_arity(sig.ops["app"]) == 2
    assert validate_signature(sig) == []


def test_stlc_schema_lam():
    sch = stlc_schema({"a"})
    lam = sch.schemas["lam"]
    s, t = base("s"), base("t")
    assert lam.template.premises == (((s,), t),)
    assert lam.template.conclusion == arrow(s, t)


def test_stlc_schema_app():
    sch = stlc_schema({"a"})
    app = sch.schemas["app"]
    s, t = base("s"), base("t")
    assert app.template.premises == (((), arrow(s, t)), ((), s))
    assert app.template.conclusion == t


def test_stlc_schema_requires_base_types():
    with pytest.raises(ValueError):
        stlc_schema(set())


def test_instantiate_lam():
    sch = stlc_schema({"a"})
    a = base("a")
    ar = instantiate_schema(sch.schemas["lam"], (a, a), sch.grammar)
    assert ar == TypedArity((((a,), a),), arrow(a, a))

    higher = instantiate_schema(sch.schemas["lam"], (a, arrow(a, a)), sch.grammar)
    assert higher.premises == (((a,), arrow(a, a)),)
    assert higher.conclusion == arrow(a, arrow(a, a))


def test_instantiate_app():
    sch = stlc_schema({"a"})
    a = base("a")
    ar = instantiate_schema(sch.schemas["app"], (a, a), sch.grammar)
    assert ar == TypedArity((((), arrow(a, a)), ((), a)), a)


def test_instantiate_wrong_count():
    sch = stlc_schema({"a"})
    with pytest.raises(ValueError):
        instantiate_schema(sch.schemas["lam"], (base("a"),), sch.grammar)


def test_instantiate_rejects_non_ground():
    sch = stlc_schema({"a"})
    with pytest.raises(ValueError):
        instantiate_schema(sch.schemas["lam"], (base("a"), base("zzz")), sch.grammar)


def test_instantiate_injective_on_stlc():
    sch = stlc_schema({"a", "b"})
    a, b = base("a"), base("b")
    types = [a, b, arrow(a, b), arrow(b, a)]
    seen = {}
    for s in types:
        for t in types:
            ar = instantiate_schema(sch.schemas["lam"], (s, t), sch.grammar)
            assert ar not in seen.values()
            seen[(s, t)] = ar


def test_validate_duplicate_names():
    pairs = [("f", BindingArity((0,))), ("f", BindingArity((1,)))]
    errs = validate_signature(pairs)
    assert any("duplicate" in e for e in errs)


def test_validate_unknown_constructor_in_schema():
    grammar = TypeGrammar({"a": 0, "->": 2})
    bad = OpSchema(
        "nil",
        (),
        TypedArity((), base("list")),
    )
    sch = TypedSignatureSchema(grammar, {"nil": bad})
    errs = validate_signature(sch)
    assert errs


def test_validate_builtins():
    assert validate_signature(lambda_signature()) == []
    assert validate_signature(stlc_schema({"a"})) == []
    assert validate_signature(stlc_schema({"a", "b"})) == []


def test_make_signature():
    sig = make_signature({"m": (2, 0, 1)})
    assert sig.ops["m"] == BindingArity((2, 0, 1))
    assert first_order_arity(sig.ops["m"]) == 3


def test_type_expr_printing():
    a, b = base("a"), base("b")
    assert str(arrow(a, arrow(a, b))) == "a -> a -> b"
    assert str(arrow(arrow(a, a), b)) == "(a -> a) -> b"
