import json
import random

import pytest

from mcg import cli
from mcg.cli import (Term, WordSyntaxError, evaluate_ast, main, parse_word,
                     print_word)
from mcg.catalog import equal, vocabulary
from mcg.surface import build


# ---------------------------------------------------------------------------
# word grammar


def test_parse_single_name():
    assert parse_word("B") == (Term("B", 1),)


def test_parse_sequence_and_separators():
    want = (Term("S", 1), Term("H1p", 1))
    assert parse_word("S H1p") == want
    assert parse_word("S*H1p") == want
    assert parse_word("  S   *  H1p ") == want


def test_parse_exponents():
    assert parse_word("T^-1") == (Term("T", -1),)
    assert parse_word("T^3") == (Term("T", 3),)
    assert parse_word("T^+2") == (Term("T", 2),)
    # stacked exponents multiply
    assert parse_word("T^2^3") == (Term("T", 6),)


def test_parse_groups():
    ast = parse_word("(S H1p)^3")
    assert ast == (Term((Term("S", 1), Term("H1p", 1)), 3),)
    nested = parse_word("((A1)^2 B)^-1")
    assert nested == (Term((Term((Term("A1", 1),), 2), Term("B", 1)), -1),)


def test_parse_error_offsets():
    with pytest.raises(WordSyntaxError) as exc:
        parse_word("T ^")
    assert exc.value.offset == 2
    with pytest.raises(WordSyntaxError) as exc:
        parse_word("(A1")
    assert exc.value.offset == 0
    with pytest.raises(WordSyntaxError) as exc:
        parse_word("A1)")
    assert exc.value.offset == 2
    with pytest.raises(WordSyntaxError) as exc:
        parse_word("T^x")
    assert exc.value.offset == 1
    with pytest.raises(WordSyntaxError) as exc:
        parse_word("A1 @ B")
    assert exc.value.offset == 3
    with pytest.raises(WordSyntaxError):
        parse_word("")
    with pytest.raises(WordSyntaxError):
        parse_word("()")
    with pytest.raises(WordSyntaxError):
        parse_word("T^0")


def test_parse_vocabulary_gate():
    names = ("A1", "B", "T")
    assert parse_word("A1 B", names=names)
    with pytest.raises(WordSyntaxError) as exc:
        parse_word("A1 A0", names=names)
    assert "unknown generator 'A0'" in str(exc.value)
    assert "A1, B, T" in str(exc.value)
    assert exc.value.offset == 3


def random_ast(rng, depth=0):
    names = ["A1", "B", "T", "H1p", "S", "E0"]
    terms = []
    for _ in range(rng.randint(1, 4)):
        exp = rng.choice([-3, -2, -1, 1, 1, 1, 2, 5])
        if depth < 2 and rng.random() < 0.3:
            terms.append(Term(random_ast(rng, depth + 1), exp))
        else:
            terms.append(Term(rng.choice(names), exp))
    return tuple(terms)


def test_parse_print_identity_on_random_asts():
    rng = random.Random(99)
    for _ in range(1000):
        ast = random_ast(rng)
        assert parse_word(print_word(ast)) == ast


def test_evaluate_applies_rightmost_first():
    m = build(1, 2)
    vocab = vocabulary(m)
    got = evaluate_ast(parse_word("T E0 T^-1"), vocab, m)
    assert equal(got, vocab["E1"])
    grouped = evaluate_ast(parse_word("(T E0) T^-1"), vocab, m)
    assert equal(grouped, got)


def test_evaluate_group_power():
    m = build(1, 2)
    vocab = vocabulary(m)
    lhs = evaluate_ast(parse_word("(S H1p)^2"), vocab, m)
    rhs = evaluate_ast(parse_word("S H1p S H1p"), vocab, m)
    assert equal(lhs, rhs)


# ---------------------------------------------------------------------------
# commands; main() returns the exit code


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cmd_gens(capsys):
    code, out, _ = run(capsys, "gens", "--g", "1", "--p", "2")
    assert code == 0
    assert "A1" in out and "T" in out and "RHO1" in out


def test_cmd_gens_json(capsys):
    code, out, _ = run(capsys, "gens", "--g", "1", "--p", "2", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["schema_version"] == "1"
    names = [row["name"] for row in data["generators"]]
    assert names == sorted(names)


def test_cmd_eval(capsys):
    code, out, _ = run(capsys, "eval", "--g", "1", "--p", "2", "--json",
                       "T^2")
    assert code == 0
    data = json.loads(out)
    assert data["peripheral"]["perm"] == [1, 2]
    assert data["peripheral"]["sign"] == 1


def test_cmd_eq_true_false(capsys):
    code, out, _ = run(capsys, "eq", "--g", "1", "--p", "2",
                       "T E0 T^-1", "E1")
    assert code == 0 and "true" in out
    code, out, _ = run(capsys, "eq", "--g", "1", "--p", "2", "A1", "A2")
    assert code == 2 and "false" in out


def test_cmd_eq_parse_error(capsys):
    code, _, err = run(capsys, "eq", "--g", "1", "--p", "2", "A0", "A1")
    assert code == 1
    assert "unknown generator" in err and "byte 0" in err


def test_cmd_act(capsys):
    code, out, _ = run(capsys, "act", "--g", "1", "--p", "2", "--json",
                       "T", "e0")
    assert code == 0
    data = json.loads(out)
    assert data["image_name"] == "e1"


def test_cmd_suite(capsys):
    code, out, _ = run(capsys, "suite", "--g", "1", "--p", "2", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] is True
    assert data["items"] and all(it["passed"] for it in data["items"])


def test_cmd_sym(capsys):
    code, out, _ = run(capsys, "sym", "--p", "5", "--json")
    assert code == 0
    data = json.loads(out)
    assert data == {"schema_version": "1", "command": "sym", "p": 5,
                    "perms": [[5, 2, 3, 4, 1], [2, 3, 4, 5, 1]],
                    "generates": True, "order": 120}


def test_cmd_sym_with_surface_cross_check(capsys):
    code, out, _ = run(capsys, "sym", "--g", "1", "--p", "3")
    assert code == 0
    assert "order 6" in out


def test_cmd_synth(capsys):
    code, out, _ = run(capsys, "synth", "--g", "1", "--p", "2", "--json",
                       "E1")
    assert code == 0
    data = json.loads(out)
    cert = data["certificate"]
    assert cert["witness"] == "T SH1p B SH1p^-1 T^-1"
    assert cert["target"] == "E1"


def test_cmd_synth_budget(capsys):
    code, out, _ = run(capsys, "synth", "--g", "1", "--p", "2", "--json",
                       "DELTA", "--max-depth", "0", "--max-states", "1")
    assert code == 3
    assert "budget" in out


def test_cmd_certify_and_verify_roundtrip(capsys, tmp_path):
    path = tmp_path / "cert.json"
    code, out, _ = run(capsys, "certify-thm9", "--g", "1", "--p", "2",
                       "--json", "--out", str(path))
    assert code == 0 and out == ""
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0 and "valid" in out

    tampered = json.loads(path.read_text())
    for item in tampered["certificate"]["transcript"]:
        if item["op"] == "kernel-witness" and "witness" in item["inputs"]:
            item["inputs"]["witness"] = "T"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(tampered))
    code, out, _ = run(capsys, "verify", str(bad))
    assert code == 2 and "invalid" in out


def test_cmd_verify_malformed_file(capsys, tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    code, _, _ = run(capsys, "verify", str(path))
    assert code == 2
    code, _, err = run(capsys, "verify", str(tmp_path / "absent.json"))
    assert code == 1 and "i/o error" in err


def test_cmd_certify_thm10(capsys):
    code, out, _ = run(capsys, "certify-thm10", "--g", "2", "--p", "2",
                       "--json")
    assert code == 0
    data = json.loads(out)
    assert data["certificate"]["kind"] == "theorem-10"


def test_usage_errors(capsys):
    code, _, err = run(capsys, "eval", "T")
    assert code == 1 and "--g and --p" in err
    code, _, err = run(capsys, "nonsense")
    assert code == 1
    code, _, err = run(capsys)
    assert code == 1


def test_determinism_byte_identical(capsys):
    first = run(capsys, "suite", "--g", "1", "--p", "3", "--json")
    second = run(capsys, "suite", "--g", "1", "--p", "3", "--json")
    assert first == second
    a = run(capsys, "certify-thm9", "--g", "1", "--p", "2", "--json",
            "--seed", "7")
    b = run(capsys, "certify-thm9", "--g", "1", "--p", "2", "--json",
            "--seed", "7")
    assert a == b


def test_threads_env_accepted(capsys, monkeypatch):
    monkeypatch.setenv("MCG_THREADS", "4")
    code, _, _ = run(capsys, "sym", "--p", "3")
    assert code == 0
    monkeypatch.setenv("MCG_THREADS", "junk")
    code, _, _ = run(capsys, "sym", "--p", "3")
    assert code == 0
