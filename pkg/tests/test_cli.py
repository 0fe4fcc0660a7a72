"""CLI behavior: dispatch, exit codes, determinism of output."""
import io
import pathlib
import sys

import pytest

from mfbridge.cli import main

DATA = pathlib.Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_translate_set_to_pre_syntax(tmp_path, capsys):
    f = _write(tmp_path, "a.fm", "all x. x in y")
    code, out, _ = run(capsys, "translate", "--dir", "set2emtt", f)
    assert code == 0
    assert out.strip() == "all x:V. x eps y"


def test_eval_true(tmp_path, capsys):
    f = _write(tmp_path, "a.fm", "x = empty")
    code, out, _ = run(capsys, "eval", "--rank", "1", "--env", "x={}", f)
    assert code == 0 and out.strip() == "true"


def test_eval_term_value(tmp_path, capsys):
    f = _write(tmp_path, "a.fm", "p1(op(sing(empty), empty))")
    code, out, _ = run(capsys, "eval", "--rank", "3", f)
    assert code == 0 and out.strip() == "{{}}"


def test_eval_overflow_exit(tmp_path, capsys):
    f = _write(tmp_path, "a.fm", "Pow(Pow(empty))")
    code, out, _ = run(capsys, "eval", "--rank", "1", f)
    assert code == 1 and "overflow" in out


def test_eval_missing_env(tmp_path, capsys):
    f = _write(tmp_path, "a.fm", "x = y")
    code, _, err = run(capsys, "eval", "--rank", "2", f)
    assert code == 2 and "misses" in err


def test_check_exit_codes(capsys):
    code, out, _ = run(capsys, "check", "--property", "oneside",
                       "--seed", "7", "--samples", "50", "--rank", "3")
    assert code == 0 and "ok" in out


def test_check_deterministic_output(capsys):
    args = ("check", "--property", "freevars", "--seed", "3", "--samples", "40")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2  # byte-identical


def test_parse_idempotent(tmp_path, capsys):
    f = _write(tmp_path, "a.fm", "all x. (x in y /\\ false) -> x = empty")
    _, once, _ = run(capsys, "parse", f)
    f2 = _write(tmp_path, "b.fm", once.strip())
    _, twice, _ = run(capsys, "parse", f2)
    assert once == twice


def test_parse_sexp_format(tmp_path, capsys):
    f = _write(tmp_path, "a.fm", "x in y")
    code, out, _ = run(capsys, "parse", "--format", "sexp", f)
    assert code == 0 and out.strip() == "(Mem (Var x) (Var y))"


def test_parse_emtt_by_extension(tmp_path, capsys):
    f = _write(tmp_path, "a.mt", "lam x:V. x")
    code, out, _ = run(capsys, "parse", f)
    assert code == 0 and out.strip() == "lam x:V. x"


def test_parse_error_exit_2(tmp_path, capsys):
    f = _write(tmp_path, "a.fm", "all x. (((")
    code, _, err = run(capsys, "parse", f)
    assert code == 2 and "parse error" in err


def test_translate_modes(tmp_path, capsys):
    f = _write(tmp_path, "a.mt", "N1")
    code, out, _ = run(capsys, "translate", "--dir", "emtt2set", "--mode", "eta", f)
    assert code == 0 and out.strip() == "u = empty"
    g = _write(tmp_path, "b.mt", "star")
    code, out, _ = run(capsys, "translate", "--dir", "emtt2set", "--mode", "delta", g)
    assert code == 0 and out.strip() == "u = empty"
    h = _write(tmp_path, "c.mt", "[x:V, y:N1]")
    code, out, _ = run(capsys, "translate", "--dir", "emtt2set", "--mode", "context", h)
    assert code == 0 and out.strip() == "(false -> false) /\\ x = x /\\ y = empty"


def test_translate_rejects_placeholder(tmp_path, capsys):
    f = _write(tmp_path, "a.mt", "u eps y")
    code, _, err = run(capsys, "translate", "--dir", "emtt2set", "--mode", "hat", f)
    assert code == 2 and "placeholder" in err


def test_translate_ill_formed_context(tmp_path, capsys):
    f = _write(tmp_path, "a.mt", "[x:V, x:N1]")
    code, _, err = run(capsys, "translate", "--dir", "emtt2set", "--mode", "context", f)
    assert code == 1 and "duplicate" in err


def test_classify(tmp_path, capsys):
    f = _write(tmp_path, "a.fm", "all x in y. x in y")
    code, out, _ = run(capsys, "classify", "--flavor", "czf", f)
    assert code == 0 and "delta0: yes" in out
    g = _write(tmp_path, "b.fm", "Pow(omega)")
    code, out, _ = run(capsys, "classify", "--flavor", "czf", g)
    assert code == 1 and "violation" in out


def test_sigma_command(tmp_path, capsys):
    d = DATA / "k0" / "03_exists_in_pair.k0"
    g = DATA / "k0" / "03_exists_in_pair.gamma.fm"
    code, out, _ = run(capsys, "sigma", "--derivation", str(d),
                       "--gamma", str(g), "--rank", "3")
    assert code == 0
    assert "hf_verified" in out
    assert "sigma: ex w. w in z /\\ w in x" in out
    assert "delta0 (leftovers free): yes" in out


def test_sigma_refuted_obligation(tmp_path, capsys):
    bad = _write(tmp_path, "bad.k0",
                 "(K0Bounded plain z (Mem (Var z) (Var x)) _ (K0Atom (Bot)))")
    g = _write(tmp_path, "g.fm", "x = x")
    code, out, _ = run(capsys, "sigma", "--derivation", bad, "--gamma", g)
    assert code == 1 and "refuted" in out


def test_rules_list_counts(capsys):
    for flavor, n in (("czf", 61), ("izf", 62), ("zf", 63)):
        code, out, _ = run(capsys, "rules", "--flavor", flavor, "--list")
        assert code == 0
        assert len([l for l in out.splitlines() if l.strip()]) == n


def test_rules_check(tmp_path, capsys):
    ok = _write(tmp_path, "ok.ri", """
(instance step3.pair-formation (flavor czf)
  (sub (a emptyv) (b omegav))
  (premises (elem emptyv V) (elem omegav V))
  (conclusion (elem (pairv emptyv omegav) V)))
""")
    code, out, _ = run(capsys, "rules", "--check", ok)
    assert code == 0 and "ok" in out
    bad = _write(tmp_path, "bad.ri", """
(instance step4.star-eq (flavor czf) (sub) (premises)
  (conclusion (eqelem star omegav N1)))
""")
    code, out, _ = run(capsys, "rules", "--check", bad)
    assert code == 1 and "mismatch" in out


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["translate", "--dir", "sideways", "x"])
    assert e.value.code == 2
