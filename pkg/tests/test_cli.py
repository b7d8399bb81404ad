import itertools
import json
from fractions import Fraction

import pytest

from dynorient import oracles
from dynorient.cli import main
from dynorient.engines import ENGINES, BasicEngine
from dynorient.params import derive_parameters
from dynorient.workload import generate_workload


def _run(tmp_path, text, *flags):
    stream = tmp_path / "s.txt"
    stream.write_text(text)
    csv_path, json_path = tmp_path / "m.csv", tmp_path / "s.json"
    code = main(["run", str(stream), "--metrics", str(csv_path), "--summary", str(json_path),
                 *flags])
    return code, csv_path.read_text(), json.loads(json_path.read_text())


@pytest.mark.parametrize("engine", sorted(ENGINES))
def test_insert_then_delete(tmp_path, engine):
    code, csv_text, summary = _run(tmp_path, "+ 0 1\n- 0 1\n", "--engine", engine,
                                   "--audit", "full", "--capacity", "8")
    assert code == 0
    assert summary["updates"] == 2 and summary["final_edges"] == 0
    assert summary["schema"] == 1 and summary["audit"]["verdict"] == "pass"
    assert len(csv_text.splitlines()) == 3


def test_k4_density_query_in_bracket(tmp_path, capsys):
    k4 = "".join(f"+ {u} {v}\n" for u, v in itertools.combinations(range(4), 2))
    code, _, _ = _run(tmp_path, k4 + "? density\n", "--mode", "eps_density", "--epsilon", "0.5",
                      "--capacity", "16", "--audit", "full")
    assert code == 0
    line = capsys.readouterr().out.strip()
    number, verb, value = line.split("\t")
    assert (number, verb) == ("7", "density")
    p = derive_parameters("eps_density", 16, epsilon=Fraction(1, 2))
    bracket = oracles.density_bracket(p, int(Fraction(value) * p.b), Fraction(3, 2))
    assert bracket.ok


def test_parse_error_names_line(tmp_path, capsys):
    code, csv_text, summary = _run(tmp_path, "± 0 1\n")
    assert code == 1
    assert "line 1" in capsys.readouterr().err
    assert summary["status"] == "stream_error"
    assert csv_text.count("\n") == 1


@pytest.mark.parametrize("text, line", [
    ("+ 0 1\n+ 1 0\n", 2),
    ("# c\n- 0 1\n", 2),
    ("+ 0 99\n", 1),
    ("+ 3 3\n", 1),
    ("+ 0\n", 1),
    ("? color\n", 1),
    ("? frob\n", 1),
    ("+ -1 2\n", 1),
])
def test_stream_errors(tmp_path, capsys, text, line):
    code, _, _ = _run(tmp_path, text, "--capacity", "8")
    assert code == 1
    assert f"line {line}:" in capsys.readouterr().err


def test_application_queries(tmp_path, capsys):
    text = "+ 0 1\n+ 1 2\n? match\n? color 2\n? matvec 1\n? subgraph\n"
    code, _, _ = _run(tmp_path, text, "--capacity", "8", "--audit", "full")
    assert code == 0
    out = [line.split("\t") for line in capsys.readouterr().out.splitlines()]
    assert out[0] == ["3", "match", "1"]
    assert out[1][1] == "color" and int(out[1][2]) <= 1
    assert out[2] == ["5", "matvec", "4"]  # x_0 + x_2 = 1 + 3
    assert out[3][1] == "subgraph"


def test_application_query_needs_simple_mode(tmp_path, capsys):
    code, _, _ = _run(tmp_path, "+ 0 1\n? match\n", "--mode", "approx_Oalpha", "--capacity", "8")
    assert code == 1
    assert "line 2" in capsys.readouterr().err


def test_audit_violation_exits_2(tmp_path, monkeypatch, capsys):
    monkeypatch.setattr(BasicEngine, "audit", lambda self: ["planted problem"])
    code, csv_text, summary = _run(tmp_path, "+ 0 1\n+ 1 2\n", "--audit", "full",
                                   "--capacity", "8")
    assert code == 2
    assert "line 1: audit violation: planted problem" in capsys.readouterr().err
    assert summary["audit"]["verdict"] == "fail"
    assert len(csv_text.splitlines()) == 2


@pytest.mark.parametrize("engine", sorted(ENGINES))
@pytest.mark.parametrize("mode", ["approx_Oalpha", "additive_log"])
def test_gnm_stream_passes_full_audit(tmp_path, engine, mode):
    text = generate_workload("random_gnm", 11, 200, n=16, m=40)
    code, csv_text, summary = _run(tmp_path, text, "--engine", engine, "--mode", mode,
                                   "--capacity", "16", "--audit", "full")
    assert code == 0, summary.get("error")
    recourse = sum(int(line.rsplit(",", 1)[1]) for line in csv_text.splitlines()[1:])
    assert recourse == summary["total_flips"]
    assert all(len(line.split(",")) == 8 for line in csv_text.splitlines())


def test_outputs_are_byte_identical(tmp_path):
    text = generate_workload("clique_flood", 2, 150, n=12)
    runs = []
    for name in ("a", "b"):
        d = tmp_path / name
        d.mkdir()
        runs.append(_run(d, text, "--engine", "worstcase", "--mode", "approx_Oalpha",
                         "--capacity", "12", "--audit", "invariants"))
    assert runs[0][1] == runs[1][1]
    assert (tmp_path / "a" / "s.json").read_bytes() == (tmp_path / "b" / "s.json").read_bytes()


def test_generate_and_workload_flag(tmp_path, capsys):
    out = tmp_path / "w.txt"
    assert main(["generate", "adversarial_hub", "--seed", "4", "--size", "50",
                 "--capacity", "10", "-o", str(out)]) == 0
    assert out.read_text() == generate_workload("adversarial_hub", 4, 50, n=10)
    assert main(["generate", "random_gnm", "--size", "0"]) == 0
    assert capsys.readouterr().out == ""
    summary = tmp_path / "x.json"
    assert main(["run", "--workload", "density_ramp", "--size", "60", "--capacity", "10",
                 "--summary", str(summary)]) == 0
    assert json.loads(summary.read_text())["updates"] == 60


def test_report_command_and_figures(tmp_path, capsys):
    code, csv_text, summary = _run(tmp_path, generate_workload("random_gnm", 1, 40, n=8),
                                   "--capacity", "8", "--figures", str(tmp_path / "figs"))
    assert code == 0
    assert sorted(p.name for p in (tmp_path / "figs").iterdir()) == [
        "bucket_moves.png", "chain_length.png", "density_estimate.png", "recourse.png"]
    assert main(["report", str(tmp_path / "m.csv")]) == 0
    again = json.loads(capsys.readouterr().out)
    assert again["columns"] == summary["columns"]


def test_usage_errors(capsys):
    assert main(["run"]) == 1
    assert main(["run", "x", "--mode", "eps_density"]) == 1
    assert main(["bogus"]) == 1
    assert main(["run", "/nonexistent/stream"]) == 1
