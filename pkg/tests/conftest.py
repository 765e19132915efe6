import ast
from pathlib import Path

import pytest

from callscan import analyze
from callscan.frontend import ModuleUnit
from callscan.ir import lower

REPO_ROOT = Path(__file__).resolve().parent.parent
CORPUS_DIR = REPO_ROOT / "corpus"
FIXTURES = Path(__file__).resolve().parent / "fixtures"

# one "ACCEPTANCE n (...): PASS/FAIL" line per criterion, printed after the
# run so pytest's capture cannot swallow them
ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_RESULTS):
            terminalreporter.write_line(line)


@pytest.fixture
def make_package(tmp_path):
    """Write a package from {relative path: source} and return its root."""

    def build(files: dict[str, str]) -> Path:
        for rel, source in files.items():
            path = tmp_path / rel
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(source, encoding="utf-8")
        return tmp_path

    return build


@pytest.fixture
def analyze_files(make_package):
    """Analyze a dict of sources; the entrypoint defaults to main.py."""

    def run(files: dict[str, str], entry: str = "main.py", **kwargs):
        root = make_package(files)
        return analyze([root / entry], root, **kwargs)

    return run


def lower_source(source: str, module_name: str = "main"):
    """Lower a source string straight to IR, bypassing the filesystem."""
    unit = ModuleUnit(
        module_name=module_name,
        file_path=Path(f"/virtual/{module_name}.py"),
        syntax_tree=ast.parse(source),
    )
    return lower(unit)


def edge_set(result) -> set[tuple[str, str]]:
    return result.graph.edge_pairs()
