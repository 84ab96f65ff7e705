"""Command-line driver: subcommands, formats, and exit codes."""

from __future__ import annotations

import json

import pytest

from debruijn.cli import main

LAMBDA_SIG = """\
signature lambda {
  op lam : (1);
  op app : (0, 0);
}
"""

STLC_SIG = """\
types { a; }
signature stlc {
  op lam [s, t] : (s |- t) -> s -> t;
  op app [s, t] : (|- s -> t), (|- s) -> t;
}
"""

BETA_THEORY = LAMBDA_SIG + """\
eq beta [(1, 0)] : (app (lam ?0) ?1) = { ?0 [?1; ^0] };
"""


@pytest.fixture
def lam_sig(tmp_path):
    p = tmp_path / "lambda.sig"
    p.write_text(LAMBDA_SIG)
    return str(p)


@pytest.fixture
def stlc_sig(tmp_path):
    p = tmp_path / "stlc.sig"
    p.write_text(STLC_SIG)
    return str(p)


@pytest.fixture
def beta_file(tmp_path):
    p = tmp_path / "beta.theory"
    p.write_text(BETA_THEORY)
    return str(p)


def test_sig_check_ok(lam_sig, capsys):
    assert main(["sig", "check", lam_sig]) == 0
    assert "ok" in capsys.readouterr().out


def test_sig_check_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.sig"
    p.write_text("signature s { op f (0); }")
    assert main(["sig", "check", str(p)]) == 2
    assert "error" in capsys.readouterr().err


def test_sig_check_missing_file(capsys):
    assert main(["sig", "check", "/nonexistent.sig"]) == 2


def test_term_subst(lam_sig, capsys):
    code = main([
        "term", "subst", "--sig", lam_sig,
        "--term", "(lam (app 1 0))", "--assign", "[(lam 0); ^0]",
    ])
    assert code == 0
    assert capsys.readouterr().out.strip() == "(lam (app (lam 0) 0))"


def test_term_subst_json(lam_sig, capsys):
    code = main([
        "term", "subst", "--sig", lam_sig,
        "--term", json.dumps({"op": "lam", "args": [{"var": 0}]}),
        "--assign", "[; ^3]",
        "--format", "json",
    ])
    assert code == 0
    assert json.loads(capsys.readouterr().out) == {"op": "lam", "args": [{"var": 0}]}


def test_term_rename(lam_sig, capsys):
    code = main([
        "term", "rename", "--sig", lam_sig,
        "--term", "(app 0 1)", "--renaming", "[; ^1]",
    ])
    assert code == 0
    assert capsys.readouterr().out.strip() == "(app 1 2)"


def test_term_to_named(lam_sig, capsys):
    code = main(["term", "to-named", "--sig", lam_sig, "--term", "(lam (app 1 0))"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "(lam [a] (app x0 a))"


def test_term_from_named(lam_sig, capsys):
    code = main([
        "term", "from-named", "--sig", lam_sig, "--term", "(lam [a] (app x0 a))",
    ])
    assert code == 0
    assert capsys.readouterr().out.strip() == "(lam (app 1 0))"


def test_term_parse_error_exit_code(lam_sig, capsys):
    assert main(["term", "subst", "--sig", lam_sig, "--term", "(app 0)",
                 "--assign", "[; ^0]"]) == 2


def test_norm_builtin_beta(capsys):
    code = main(["norm", "--theory", "beta", "--term", "(app (lam 0) 3)",
                 "--fuel", "10"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "3"


def test_norm_theory_file(beta_file, capsys):
    code = main(["norm", "--theory", beta_file, "--term", "(app (lam 0) 3)"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "3"


def test_norm_fuel_exhaustion(capsys):
    omega = "(app (lam (app 0 0)) (lam (app 0 0)))"
    code = main(["norm", "--theory", "beta", "--term", omega, "--fuel", "50"])
    assert code == 3


def test_equiv_yes(capsys):
    code = main(["equiv", "--theory", "beta", "--left", "(app (lam 0) 3)",
                 "--right", "3"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "yes"


def test_equiv_no(capsys):
    code = main(["equiv", "--theory", "beta", "--left", "0", "--right", "1"])
    assert code == 1
    assert capsys.readouterr().out.strip() == "no"


def test_equiv_unknown(capsys):
    omega = "(app (lam (app 0 0)) (lam (app 0 0)))"
    code = main(["equiv", "--theory", "beta", "--left", omega, "--right", "0",
                 "--fuel", "50"])
    assert code == 3
    assert capsys.readouterr().out.strip() == "unknown"


def test_equiv_betaeta(capsys):
    code = main(["equiv", "--theory", "betaeta", "--left", "(lam (app 6 0))",
                 "--right", "5"])
    assert code == 0


def test_typecheck_ok(stlc_sig, capsys):
    code = main(["typecheck", "--sig", stlc_sig, "--term", "(op[lam; a, a] (#0 : a))"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "a -> a"


def test_typecheck_type_error(stlc_sig, capsys):
    code = main(["typecheck", "--sig", stlc_sig,
                 "--term", "(op[app; a, a] (#0 : a) (#0 : a))"])
    assert code == 1
    assert "type error" in capsys.readouterr().err


def test_fuzz_all_laws(lam_sig, capsys):
    code = main(["fuzz", "--sig", lam_sig, "--laws", "monad,binding,morphism",
                 "--cases", "50", "--seed", "42"])
    assert code == 0
    out = capsys.readouterr().out
    assert "LAW associativity PASS seed=42" in out
    assert "LAW binding:lam PASS seed=42" in out
    assert "LAW morphism:op:app PASS seed=42" in out


def test_fuzz_unknown_law_group(lam_sig, capsys):
    assert main(["fuzz", "--sig", lam_sig, "--laws", "nonsense"]) == 2


def test_fuzz_deterministic(lam_sig, capsys):
    main(["fuzz", "--sig", lam_sig, "--cases", "30", "--seed", "5"])
    first = capsys.readouterr().out
    main(["fuzz", "--sig", lam_sig, "--cases", "30", "--seed", "5"])
    assert capsys.readouterr().out == first
