import json

import pytest

from ehcert import certificates as C
from ehcert.cli import main
from ehcert.construct import path_graph
from ehcert.io import format_graph, read_certificate, read_graph, write_certificate
from ehcert.pipeline import EXIT_ERROR, EXIT_INCONCLUSIVE, EXIT_VERIFIED, Outcome, RunTrace


@pytest.fixture
def graph_file(tmp_path):
    p = tmp_path / "g.txt"
    assert main(["generate", "gnp", "20", "0.3", "--seed", "1", "-o", str(p)]) == 0
    return p


def test_generate_writes_canonical_edge_list(graph_file):
    text = graph_file.read_text()
    assert text == format_graph(read_graph(graph_file))
    assert read_graph(graph_file).n == 20


@pytest.mark.parametrize("argv,n", [(["cycle", "7"], 7), (["path", "5"], 5), (["forest", "9"], 9),
                                    (["free", "P4", "12"], 12), (["swiss", "-t", "2"], 14),
                                    (["swiss", "-t", "2", "--pad", "3"], 17)])
def test_generate_kinds(tmp_path, argv, n):
    p = tmp_path / "g.txt"
    assert main(["generate", *argv, "-o", str(p)]) == 0
    assert read_graph(p).n == n


def test_certify_then_verify(tmp_path, graph_file, capsys):
    cert, trace = tmp_path / "c.json", tmp_path / "t.json"
    code = main(["certify", str(graph_file), "-t", "2", "--trace", str(trace), "--out", str(cert)])
    assert code == EXIT_VERIFIED
    assert json.loads(trace.read_text())["stages"][-1]["stage"] == "result"
    assert main(["verify", str(cert), str(graph_file)]) == EXIT_VERIFIED
    assert "verified" in capsys.readouterr().out


def test_certify_prints_to_stdout(graph_file, capsys):
    assert main(["certify", str(graph_file)]) == EXIT_VERIFIED
    C.from_text(capsys.readouterr().out)


def test_verify_rejects_tampered(tmp_path, graph_file):
    g = read_graph(graph_file)
    u, v = g.edges()[0]
    p = tmp_path / "c.json"
    write_certificate(C.stable_set([u, v]), p)
    assert main(["verify", str(p), str(graph_file)]) == EXIT_ERROR


def test_parse_error_exit(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("3 1\n0 0\n")
    assert main(["certify", str(p)]) == EXIT_ERROR
    assert "line 2" in capsys.readouterr().err


def test_missing_file_exit(tmp_path):
    assert main(["verify", str(tmp_path / "none.json"), str(tmp_path / "none.txt")]) == EXIT_ERROR


def test_bad_override_exit(graph_file):
    assert main(["certify", str(graph_file), "--override", "eta"]) == EXIT_ERROR


def test_inconclusive_exit(graph_file, monkeypatch):
    import ehcert.cli as cli

    monkeypatch.setattr(cli, "eh_certify", lambda *a, **k: Outcome(None, RunTrace(), "forced"))
    assert main(["certify", str(graph_file)]) == EXIT_INCONCLUSIVE


def test_forest_file(tmp_path, graph_file):
    f = tmp_path / "f.txt"
    f.write_text(format_graph(path_graph(3)))
    out = tmp_path / "c.json"
    assert main(["certify", str(graph_file), "--forest", str(f), "--out", str(out)]) == EXIT_VERIFIED
    assert not C.verify_certificate(read_certificate(out), read_graph(graph_file))


def test_constants(capsys):
    assert main(["constants", "-s", "1", "-t", "2", "--nf", "2", "--override", "eta=1/4", "--y", "1/8"]) == 0
    out = capsys.readouterr().out
    assert "eta = 1/4 (override)" in out
    assert "@y=1/8" in out


def test_experiments(tmp_path):
    cfg = tmp_path / "e.json"
    cfg.write_text(json.dumps({"generator": {"kind": "gnp", "n": 27, "p": "1/2"},
                               "operation": {"name": "ramsey", "t": 3, "k": 3}, "seeds": [0, 1]}))
    out = tmp_path / "o.csv"
    assert main(["experiments", str(cfg), "-o", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 3
