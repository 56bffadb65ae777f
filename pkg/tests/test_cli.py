import io
import json

import pytest

from dp3.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def initial_block(text):
    return [line for line in text.splitlines() if line.startswith("  vertex")]


def test_mutate_one():
    code, text = run("mutate", "1")
    assert code == EXIT_OK
    assert "vertex 0: x1·A" in text


def test_mutate_empty_and_involution():
    code, empty = run("mutate", "")
    assert code == EXIT_OK
    assert "vertex 3: x3·A^0B^0C^0 = x3" in empty
    _, twice = run("mutate", "11")
    assert initial_block(twice) == initial_block(empty)
    _, flag = run("mutate", "--word", "11")
    assert initial_block(flag) == initial_block(empty)


def test_mutate_json():
    code, text = run("mutate", "12", "--json")
    data = json.loads(text)
    assert code == EXIT_OK and data["word"] == "12"
    assert len(data["factored"]) == 6


@pytest.mark.parametrize("word", ["14", "a", "1 2"])
def test_mutate_bad_word(word, capsys):
    code, _ = run("mutate", word)
    assert code == EXIT_USAGE
    assert "dp3 mutate" in capsys.readouterr().err


def test_mutate_needs_word():
    assert run("mutate")[0] == EXIT_USAGE


def test_formula():
    code, text = run("formula", "--alcove", "(1,1)")
    assert code == EXIT_OK and "region I" in text
    code, text = run("formula", "--alcove", "{0,-1}", "--json")
    data = json.loads(text)
    assert data["region"] == "VII" and len(data["factored"]) == 6
    assert run("formula", "--alcove", "(0,0)")[0] == EXIT_OK
    assert run("formula", "--alcove", "[1,2]")[0] == EXIT_USAGE


def test_verify_alcove():
    code, text = run("verify", "--alcove", "(1,1)")
    assert code == EXIT_OK
    report = json.loads(text)
    assert report["verdict"] == "pass" and report["subject"] == "(1,1)"


def test_verify_origin_is_usage_error():
    assert run("verify", "--alcove", "(0,0)")[0] == EXIT_USAGE


@pytest.mark.parametrize("argv", [["verify"], ["verify", "--alcove", "(1,1)", "--range", "1"],
                                  ["verify", "--range", "-1"], ["verify", "--mode", "fast"],
                                  ["bogus"], []])
def test_verify_usage(argv):
    assert run(*argv)[0] == EXIT_USAGE


def test_verify_range_exact():
    code, text = run("verify", "--range", "2", "--mode", "exact")
    reports = [json.loads(line) for line in text.splitlines()]
    assert code == EXIT_OK
    assert len(reports) == 49
    assert all(r["verdict"] == "pass" for r in reports)


def test_verify_same_seed_byte_identical():
    argv = ("verify", "--range", "1", "--mode", "fingerprint", "--seed", "11")
    first, second = run(*argv), run(*argv)
    assert first == second
    assert run("verify", "--range", "1", "--mode", "fingerprint", "--seed", "12")[1] != first[1]


def test_verify_timing_and_out(tmp_path):
    path = tmp_path / "r.jsonl"
    code, text = run("verify", "--alcove", "{1,1}", "--timing", "--out", str(path))
    assert code == EXIT_OK and text == ""
    assert "seconds" in json.loads(path.read_text())


def test_verify_fail_exit(monkeypatch):
    import dp3.verify as vf

    def broken(alcoves, mode, seed, cap=4096):
        return [vf.VerificationReport("main", str(a), mode, "fail") for a in alcoves]

    monkeypatch.setattr(vf, "verify_many", broken)
    assert run("verify", "--alcove", "(1,1)")[0] == EXIT_FAIL


def test_render_alcove():
    code, text = run("render", "--alcove", "(0,1)")
    assert code == EXIT_OK
    assert text.startswith("<svg") and "</svg>" in text


def test_render_tuple(tmp_path):
    path = tmp_path / "g.svg"
    code, text = run("render", "--tuple", "(2,1,0,1,0,1)", "--out", str(path))
    assert code == EXIT_OK and text == ""
    assert path.read_text().startswith("<svg")


def test_render_json_and_sigma():
    code, text = run("render", "--tuple", "(2,1,0,1,0,1)", "--json")
    plain = json.loads(text)
    _, text = run("render", "--tuple", "(2,1,0,1,0,1)", "--sigma", "--json")
    assert code == EXIT_OK and json.loads(text) != plain
    assert run("render", "--alcove", "(1,1)", "--sigma")[0] == EXIT_OK


def test_render_not_closed(capsys):
    code, _ = run("render", "--tuple", "(1,0,0,0,0,0)")
    assert code == EXIT_USAGE
    assert "NotClosed" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [["render"], ["render", "--tuple", "(1,2)"],
                                  ["render", "--alcove", "(0,0)"],
                                  ["render", "--alcove", "(1,1)", "--tuple", "(2,1,0,1,0,1)"]])
def test_render_usage(argv):
    assert run(*argv)[0] == EXIT_USAGE
