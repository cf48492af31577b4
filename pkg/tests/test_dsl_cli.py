from __future__ import annotations

import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from endospec import (
    Endomorphism,
    ParseError,
    RankMismatch,
    UnknownGenerator,
    Word,
    format_spec,
    parse_spec,
)
from endospec.cli import main
from endospec.dsl import ProblemSpec, SubgroupSpec, parse_word

from conftest import H_GENS, PHI, endomorphisms, w, words

EXAMPLE = "rank: 2\nphi: a -> b, b -> a b^2\nH: [a^2, b^2, a b]\n"


def run_cli(args, stdin, capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", __import__("io").StringIO(stdin))
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_example():
    spec = parse_spec(EXAMPLE)
    assert spec.rank == 2 and spec.phi == PHI
    assert spec.subgroup == SubgroupSpec("generators", tuple(H_GENS))


def test_parse_identity_on_z():
    spec = parse_spec("rank: 1\nphi: a -> a")
    assert spec.phi == Endomorphism.identity(1) and spec.subgroup is None


def test_parse_errors():
    with pytest.raises(UnknownGenerator) as exc:
        parse_spec("rank: 2\nphi: a -> c")
    assert (exc.value.line, exc.value.column) == (2, 11)
    with pytest.raises(RankMismatch):
        parse_spec("rank: 2\nphi: a -> b")
    with pytest.raises(RankMismatch):
        parse_spec("rank: 2\nphi: a -> b, a -> a, b -> b")
    with pytest.raises(ParseError):
        parse_spec("rank: two\nphi: a -> a")
    with pytest.raises(ParseError):
        parse_spec("rank: 2\nphi: a -> b, b -> (a b)^-1")
    with pytest.raises(ParseError):
        parse_spec("rank: 2\nphi: a -> b, b -> a\nH: everything")


def test_word_syntax():
    assert parse_word("a b^2 A", 2) == w(2, "a b b A")
    assert parse_word("a^-2 b^0", 2) == w(2, "A A")
    assert parse_word("B^-1", 2) == w(2, "b")
    assert parse_word("1", 2) == Word.identity(2)
    assert parse_word("x27 X1", 30) == Word(30, [27, -1])


def test_comments_and_kernels():
    spec = parse_spec("# demo\nrank: 3  # three\nphi: a -> b, b -> c, c -> a\nH: mod 2\n")
    assert spec.subgroup == SubgroupSpec("mod", n=2)
    assert spec.subgroup_graph().num_vertices == 8
    assert parse_spec("rank: 2\nphi: a -> a, b -> b\nH: total 3").subgroup.n == 3


@st.composite
def problem_specs(draw):
    phi = draw(endomorphisms(max_image=4))
    kind = draw(st.sampled_from(["none", "generators", "mod", "total"]))
    if kind == "none":
        sub = None
    elif kind == "generators":
        sub = SubgroupSpec("generators", tuple(draw(st.lists(words(phi.rank, 4), max_size=3))))
    else:
        sub = SubgroupSpec(kind, n=draw(st.integers(1, 4)))
    return ProblemSpec(phi.rank, phi, sub)


@given(problem_specs())
def test_print_parse_round_trip(spec):
    assert parse_spec(format_spec(spec)) == spec


def test_check_containment_json(capsys, monkeypatch):
    code, out, _ = run_cli(["check-containment", "--json"], EXAMPLE, capsys, monkeypatch)
    data = json.loads(out)
    assert code == 0
    expected = {"contained": True, "deltaF": [-1, -2, 1], "deltaH": [-1, -3, -1, 1], "deltaDivides": True, "index": 2}
    assert {k: data[k] for k in expected} == expected
    assert data["paper_check"]["matches"] is True


def test_eigen_and_casson_json(capsys, monkeypatch):
    code, out, _ = run_cli(["eigen", "--json"], "rank: 2\nphi: a -> a, b -> b\n", capsys, monkeypatch)
    assert code == 0 and json.loads(out)["spectrum"] == [-1, 1]
    code, out, _ = run_cli(["casson", "--json"], EXAMPLE, capsys, monkeypatch)
    data = json.loads(out)
    assert (data["verdict"], data["witness"]) == ("HasNonUnitRoot", [-1, -2, 1])


def test_other_commands(capsys, monkeypatch, tmp_path):
    path = tmp_path / "p.txt"
    path.write_text(EXAMPLE)
    code, out, _ = run_cli(["restrict", str(path), "--json"], "", capsys, monkeypatch)
    assert code == 0 and json.loads(out)["restrictionMatrix"] == [[0, 1, 1], [1, 2, 2], [0, 0, -1]]
    code, out, _ = run_cli(["alexander", str(path), "--json"], "", capsys, monkeypatch)
    data = json.loads(out)
    assert data["ambient"]["alexander"] == [-1, -2, 1] and data["restricted"]["agrees"] and data["divides"]
    code, out, _ = run_cli(["growth", str(path), "--kmax", "10", "--json"], "", capsys, monkeypatch)
    assert abs(json.loads(out)["estimate"] - 2.41421) < 0.01
    code, out, _ = run_cli(["eventual-kernel", "--json"], "rank: 2\nphi: a -> 1, b -> b\n", capsys, monkeypatch)
    data = json.loads(out)
    assert (data["k"], data["imageRank"], data["inducedMatrix"], data["lemma"]) == (1, 1, [[1]], True)
    code, out, _ = run_cli(["invariant-subgroup", "--mod", "2", "--rank", "2", "--json"], "", capsys, monkeypatch)
    data = json.loads(out)
    assert (data["index"], data["basisSize"]) == (4, 5)
    code, out, _ = run_cli(["invariant-subgroup", "--mod", "2", "--total", str(path), "--json"], "", capsys, monkeypatch)
    assert json.loads(out)["invariant"] is True
    for cmd in ("eigen", "restrict", "check-containment", "casson", "alexander", "growth", "eventual-kernel"):
        code, out, _ = run_cli([cmd, str(path)], "", capsys, monkeypatch)
        assert code == 0 and out.strip()


def test_error_exit_codes(capsys, monkeypatch):
    code, _, err = run_cli(["eigen"], "rank: 2\nphi: a -> c\n", capsys, monkeypatch)
    assert code == 1 and "2:11" in err and "unknown generator" in err
    code, _, err = run_cli(["check-containment"], "rank: 2\nphi: a -> a, b -> a b\nH: total 2\n", capsys, monkeypatch)
    assert code == 1 and "NotInvariant" in err
    code, _, err = run_cli(["eigen", "/nonexistent/spec"], "", capsys, monkeypatch)
    assert code == 1


def test_json_byte_stable():
    cmd = [sys.executable, "-m", "endospec", "check-containment", "--json"]
    runs = [subprocess.run(cmd, input=EXAMPLE, capture_output=True, text=True) for _ in range(2)]
    assert runs[0].returncode == 0 and runs[0].stdout == runs[1].stdout


def test_selftest_small(capsys, monkeypatch):
    monkeypatch.setenv("ENDOSPEC_SEED", "7")
    code, out, _ = run_cli(["selftest", "--trials", "6", "--json"], "", capsys, monkeypatch)
    data = json.loads(out)
    assert code == 0 and data["seed"] == 7 and data["passed"]
    assert [s["suite"] for s in data["suites"]] == ["theorem", "divisibility", "lemma", "fox", "schreier", "growth", "words"]


def test_selftest_parallel_matches_serial(capsys, monkeypatch):
    code, serial, _ = run_cli(["selftest", "--trials", "4", "--seed", "3", "--json"], "", capsys, monkeypatch)
    code2, parallel, _ = run_cli(["selftest", "--trials", "4", "--seed", "3", "--json", "--parallel"], "", capsys, monkeypatch)
    assert code == code2 == 0 and serial == parallel


def test_selftest_default_trials():
    proc = subprocess.run([sys.executable, "-m", "endospec", "selftest"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stdout + proc.stderr
