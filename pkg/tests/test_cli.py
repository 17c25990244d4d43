import json
from pathlib import Path

import pytest

from leavitt.cli import main
from leavitt.dsl import parse

FIX = Path(__file__).parent / "fixtures"
GOLD = FIX / "golden"

CONSTRUCT = {
    "line3": ["desing"],
    "rose1": ["desing"],
    "toy": ["gf", "--edges", "e1,e2"],
    "ugr1": ["eg", "--window", "4"],
    "grugrex": ["eg", "--window", "4"],
}


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(CONSTRUCT))
def test_golden_analyze(capsys, name):
    code, out, _ = run(capsys, "analyze", FIX / f"{name}.ug")
    assert code == 0
    assert out == (GOLD / f"{name}.analyze.txt").read_text(encoding="utf-8")


@pytest.mark.parametrize("name", sorted(CONSTRUCT))
def test_golden_construct(capsys, name):
    what, *rest = CONSTRUCT[name]
    code, out, _ = run(capsys, "construct", what, FIX / f"{name}.ug", *rest)
    assert code == 0
    assert out == (GOLD / f"{name}.construct.ug").read_text(encoding="utf-8")


@pytest.mark.parametrize("name", sorted(CONSTRUCT))
def test_golden_dot(capsys, name):
    code, out, _ = run(capsys, "export-dot", FIX / f"{name}.ug")
    assert code == 0
    assert out == (GOLD / f"{name}.dot").read_text(encoding="utf-8")


def test_construct_eg_sigma(capsys):
    _, out, _ = run(capsys, "construct", "eg", FIX / "grugrex.ug", "--window", "4")
    flat = " ".join(out.split())
    assert "sigma { v1 -> 1; v2 -> 10; v3 -> 100; v4 -> 1000; }" in flat


def test_construct_eg_sigma_file_reproduces(capsys, tmp_path):
    _, first, _ = run(capsys, "construct", "eg", FIX / "grugrex.ug", "--window", "4")
    src = tmp_path / "eg.ug"
    src.write_text(first, encoding="utf-8")
    structure = parse(first).structures[0].name
    _, again, _ = run(capsys, "construct", "eg", src, "--window", "4", "--sigma", "file", "--structure", structure)
    assert again == first


def test_analyze_line3(capsys):
    _, out, _ = run(capsys, "analyze", FIX / "line3.ug")
    assert "unital: yes; simple: yes" in out


def test_analyze_rose_not_simple(capsys):
    _, out, _ = run(capsys, "analyze", FIX / "rose1.ug", "--ring", "GF:2")
    assert "condition (L): no" in out and "simple: no" in out


def test_output_file(capsys, tmp_path):
    dest = tmp_path / "out.dot"
    code, out, _ = run(capsys, "export-dot", FIX / "toy.ug", "-o", dest)
    assert code == 0 and out == ""
    assert dest.read_text(encoding="utf-8") == (GOLD / "toy.dot").read_text(encoding="utf-8")


def test_verify_lci(capsys):
    code, out, _ = run(capsys, "verify", "lci", FIX / "toy.ug")
    assert code == 0 and out.startswith("lci: 9 pass, 0 fail")


def test_verify_family(capsys):
    code, out, _ = run(capsys, "verify", "generators", FIX / "toy.ug", "--ring", "Zmod:4")
    assert code == 0 and " 0 fail" in out


def test_report_jsonl_deterministic(capsys):
    args = ("report", FIX / "toy.ug", "--window", "4", "--seed", "2")
    code, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert code == 0 and first == second
    recs = [json.loads(line) for line in first.splitlines()]
    assert recs and {"suite", "instance", "status", "witness"} == set(recs[0])
    assert all(r["status"] in ("pass", "skip") for r in recs)


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", FIX / "ugr1.ug", "star(s(e)) * s(e)")
    assert code == 0 and out == "p(cofinite{v0})\n"


def test_format_is_idempotent(capsys, tmp_path):
    _, once, _ = run(capsys, "format", FIX / "grugrex.ug")
    f = tmp_path / "g.ug"
    f.write_text(once, encoding="utf-8")
    _, twice, _ = run(capsys, "format", f)
    assert once == twice


# exit codes ----------------------------------------------------------------------------------


def test_parse_error_exit(capsys, tmp_path):
    bad = tmp_path / "bad.ug"
    bad.write_text("graph E { vertices u;\n edge e: u -> w; }\n", encoding="utf-8")
    code, _, err = run(capsys, "analyze", bad)
    assert code == 2 and "line 2" in err and "unknown vertex w" in err


def test_missing_file_exit(capsys, tmp_path):
    assert run(capsys, "analyze", tmp_path / "absent.ug")[0] == 2


def test_bad_ring_exit(capsys):
    assert run(capsys, "analyze", FIX / "toy.ug", "--ring", "R")[0] == 2


def test_unknown_suite_exit(capsys):
    assert run(capsys, "verify", "nope", FIX / "toy.ug")[0] == 2


def test_gf_without_edges_exit(capsys):
    assert run(capsys, "construct", "gf", FIX / "toy.ug")[0] == 2


def test_truncation_exit(capsys):
    code, _, err = run(capsys, "construct", "desing", FIX / "ugr1.ug")
    assert code == 3 and err.startswith("truncation:")


def test_engine_error_exit(capsys):
    code, _, err = run(capsys, "eval", FIX / "toy.ug", "s(nope)")
    assert code == 4 and "engine error" in err


def test_suite_failure_exit(capsys, tmp_path, monkeypatch):
    from leavitt.analysis.report import Report
    import leavitt.cli as cli

    def broken(name, doc, args, ring):
        r = Report(name)
        r.add("x", "fail", "lhs != rhs")
        return r

    monkeypatch.setattr(cli, "suite_report", broken)
    code, out, _ = run(capsys, "verify", "lci", FIX / "toy.ug")
    assert code == 1 and "fail lci x: lhs != rhs" in out
