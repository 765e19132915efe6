import json

import pytest

from callscan.cli import main
from conftest import CORPUS_DIR, FIXTURES


@pytest.fixture
def crypto_root(make_package):
    return make_package(
        {
            "crypto.py": (FIXTURES / "crypto" / "crypto.py").read_text(),
            "cryptops.py": (FIXTURES / "crypto" / "cryptops.py").read_text(),
        }
    )


def test_analyze_writes_golden_json(crypto_root, capsys):
    code = main(["analyze", str(crypto_root / "crypto.py"), "--package", str(crypto_root)])
    assert code == 0
    out = capsys.readouterr().out
    assert out == (FIXTURES / "crypto" / "expected_callgraph.json").read_text()


def test_analyze_stdout_is_deterministic(crypto_root, capsys):
    main(["analyze", str(crypto_root / "crypto.py"), "--package", str(crypto_root)])
    first = capsys.readouterr().out
    main(["analyze", str(crypto_root / "crypto.py"), "--package", str(crypto_root)])
    assert capsys.readouterr().out == first


def test_analyze_missing_entrypoint(capsys):
    assert main(["analyze", "/nonexistent/main.py"]) == 1
    assert "error" in capsys.readouterr().err


def test_analyze_dot_format(crypto_root, capsys):
    code = main(
        ["analyze", str(crypto_root / "crypto.py"), "--package", str(crypto_root), "--format", "dot"]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert out.startswith("digraph")
    assert '"crypto.Crypto.apply" -> "cryptops.encrypt";' in out


def test_analyze_output_file(crypto_root, tmp_path):
    target = tmp_path / "out" / "graph.json"
    target.parent.mkdir()
    code = main(
        ["analyze", str(crypto_root / "crypto.py"), "--package", str(crypto_root), "-o", str(target)]
    )
    assert code == 0
    assert json.loads(target.read_text())


def test_analyze_nonconvergence_exit_code(crypto_root, capsys):
    code = main(
        ["analyze", str(crypto_root / "crypto.py"), "--package", str(crypto_root), "--max-passes", "1"]
    )
    assert code == 4
    assert "converge" in capsys.readouterr().err


def test_analyze_fail_on_diagnostics(make_package, capsys):
    root = make_package({"main.py": "mystery()\n"})
    assert main(["analyze", str(root / "main.py")]) == 0
    capsys.readouterr()
    code = main(["analyze", str(root / "main.py"), "--fail-on-diagnostics"])
    assert code == 1
    err = capsys.readouterr().err
    assert "unresolved identifier" in err


def test_suite_on_shipped_corpus(capsys, tmp_path):
    report_path = tmp_path / "report.json"
    code = main(["suite", str(CORPUS_DIR), "--json", str(report_path)])
    assert code == 0
    out = capsys.readouterr().out
    assert "total" in out
    payload = json.loads(report_path.read_text())
    assert payload["totals"]["complete"] == payload["totals"]["cases"]


def test_suite_failure_names_case(make_package, capsys):
    root = make_package(
        {
            "cat/wrong/main.py": "def f():\n    return 1\n\nf()\n",
            "cat/wrong/callgraph.json": json.dumps({"main": ["main.ghost"], "main.ghost": []}),
            "cat/wrong/README.md": "intentionally wrong\n",
        }
    )
    code = main(["suite", str(root)])
    assert code == 2
    assert "cat/wrong" in capsys.readouterr().out


def test_suite_empty_corpus(tmp_path, capsys):
    assert main(["suite", str(tmp_path)]) == 1
    assert "error" in capsys.readouterr().err


def test_compare_examples(make_package, capsys):
    root = make_package(
        {
            "generated.json": json.dumps({"a": ["b", "c"], "b": [], "c": []}),
            "truth.json": json.dumps({"a": ["b"], "b": []}),
        }
    )
    code = main(["compare", str(root / "generated.json"), str(root / "truth.json")])
    assert code == 0
    out = capsys.readouterr().out
    assert "precision: 50.00%" in out
    assert "recall: 100.00%" in out
    assert "FP a -> c" in out


def test_compare_unreadable_input(tmp_path, capsys):
    good = tmp_path / "g.json"
    good.write_text("{}")
    assert main(["compare", str(good), str(tmp_path / "missing.json")]) == 1


def test_reach_exit_codes(make_package, capsys):
    root = make_package(
        {"graph.json": json.dumps({"main": ["lib.danger"], "lib.danger": [], "lib.safe": []})}
    )
    assert main(["reach", str(root / "graph.json"), "lib.danger"]) == 0
    assert "called by main" in capsys.readouterr().out
    assert main(["reach", str(root / "graph.json"), "lib.safe"]) == 3
    assert main(["reach", str(root / "graph.json") + ".missing", "x"]) == 1


def test_reach_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]")
    assert main(["reach", str(bad), "x"]) == 1


def test_measure_subcommand(make_package, capsys):
    root = make_package({"main.py": "def f():\n    return 1\n\nf()\n"})
    code = main(["measure", str(root), "--repetitions", "1"])
    assert code == 0
    out = capsys.readouterr().out
    assert "median wall time" in out and "peak memory" in out
