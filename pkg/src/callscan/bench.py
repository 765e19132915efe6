"""Micro-benchmark corpus harness.

A corpus is a directory tree `<corpus>/<category>/<case>/` where every case
holds `main.py` (the entrypoint), any helper modules, `callgraph.json` (the
expected canonical call graph), and `README.md` (a short description).
Cases are single-execution-path programs: the harness lints away branching
and looping syntax so a dynamic trace of one run exercises every call site.
"""

from __future__ import annotations

import ast
import json
import resource
import statistics
import subprocess
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import analyze
from .callgraph import CallGraph, EdgeDiff, diff, parse

__all__ = [
    "CATEGORIES",
    "BenchmarkCase",
    "CaseResult",
    "SuiteReport",
    "CorpusError",
    "load_corpus",
    "lint_single_path",
    "run_case",
    "run_suite",
    "measure",
]

CATEGORIES = (
    "assignments",
    "built-ins",
    "classes",
    "decorators",
    "dicts",
    "direct_calls",
    "exceptions",
    "functions",
    "generators",
    "imports",
    "kwargs",
    "lambdas",
    "lists",
    "mro",
    "parameters",
    "returns",
)

_BRANCH_NODES = (ast.If, ast.IfExp, ast.For, ast.AsyncFor, ast.While)


class CorpusError(Exception):
    """The corpus directory does not follow the expected layout."""


@dataclass
class BenchmarkCase:
    category: str
    name: str
    sources: list[Path]
    expected: CallGraph
    description: str

    @property
    def entrypoint(self) -> Path:
        for source in self.sources:
            if source.name == "main.py":
                return source
        raise CorpusError(f"case {self.category}/{self.name} has no main.py")

    @property
    def root(self) -> Path:
        return self.entrypoint.parent


@dataclass
class CaseResult:
    category: str
    name: str
    complete: bool
    sound: bool
    diff: Optional[EdgeDiff]
    error: Optional[str] = None
    notes: str = ""


@dataclass
class SuiteReport:
    cases: list[CaseResult] = field(default_factory=list)

    def by_category(self) -> dict[str, tuple[int, int, int]]:
        """category -> (complete count, sound count, total)."""
        tally: dict[str, list[int]] = {}
        for case in self.cases:
            counts = tally.setdefault(case.category, [0, 0, 0])
            counts[0] += case.complete
            counts[1] += case.sound
            counts[2] += 1
        return {k: tuple(v) for k, v in sorted(tally.items())}

    @property
    def total(self) -> int:
        return len(self.cases)

    @property
    def complete_count(self) -> int:
        return sum(c.complete for c in self.cases)

    @property
    def sound_count(self) -> int:
        return sum(c.sound for c in self.cases)

    @property
    def all_passing(self) -> bool:
        return all(c.complete and c.sound for c in self.cases)

    def as_json(self) -> str:
        payload = {
            "totals": {
                "cases": self.total,
                "complete": self.complete_count,
                "sound": self.sound_count,
            },
            "categories": {
                category: {"complete": c, "sound": s, "cases": n}
                for category, (c, s, n) in self.by_category().items()
            },
            "cases": [
                {
                    "category": c.category,
                    "name": c.name,
                    "complete": c.complete,
                    "sound": c.sound,
                    "false_positives": sorted(map(list, c.diff.false_positives)) if c.diff else [],
                    "false_negatives": sorted(map(list, c.diff.false_negatives)) if c.diff else [],
                    "error": c.error,
                    "notes": c.notes,
                }
                for c in self.cases
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    def as_table(self) -> str:
        width = max(len(c) for c in list(self.by_category()) + ["category"])
        lines = [f"{'category':<{width}}  complete  sound  cases"]
        for category, (complete, sound, total) in self.by_category().items():
            lines.append(f"{category:<{width}}  {complete:>8}  {sound:>5}  {total:>5}")
        lines.append(
            f"{'total':<{width}}  {self.complete_count:>8}  {self.sound_count:>5}  {self.total:>5}"
        )
        failing = [c for c in self.cases if not (c.complete and c.sound)]
        for case in failing:
            verdict = []
            if not case.complete:
                verdict.append("incomplete")
            if not case.sound:
                verdict.append("unsound")
            detail = case.error or case.notes
            suffix = f" ({detail})" if detail else ""
            lines.append(f"FAIL {case.category}/{case.name}: {' and '.join(verdict)}{suffix}")
        return "\n".join(lines) + "\n"


def lint_single_path(source: str, filename: str = "<case>") -> list[str]:
    """Violations of the single-execution-path rule: any conditional or loop
    syntax.  try/raise is allowed — a straight-line raise still executes
    exactly one path."""
    violations = []
    for node in ast.walk(ast.parse(source, filename=filename)):
        if isinstance(node, _BRANCH_NODES):
            violations.append(
                f"{filename}:{node.lineno}: {type(node).__name__} breaks the single-execution-path rule"
            )
    return sorted(violations)


def load_corpus(corpus_dir: Path | str) -> list[BenchmarkCase]:
    root = Path(corpus_dir)
    if not root.is_dir():
        raise CorpusError(f"corpus directory not found: {root}")
    cases: list[BenchmarkCase] = []
    for category_dir in sorted(p for p in root.iterdir() if p.is_dir()):
        for case_dir in sorted(p for p in category_dir.iterdir() if p.is_dir()):
            sources = sorted(case_dir.rglob("*.py"))
            expected_path = case_dir / "callgraph.json"
            readme = case_dir / "README.md"
            if not sources or not expected_path.is_file():
                raise CorpusError(f"malformed case: {case_dir}")
            try:
                expected = parse(expected_path.read_text(encoding="utf-8"))
            except (ValueError, json.JSONDecodeError) as exc:
                raise CorpusError(f"{expected_path}: {exc}") from exc
            description = readme.read_text(encoding="utf-8").strip() if readme.is_file() else ""
            cases.append(
                BenchmarkCase(
                    category=category_dir.name,
                    name=case_dir.name,
                    sources=sources,
                    expected=expected,
                    description=description,
                )
            )
    if not cases:
        raise CorpusError(f"corpus is empty: {root}")
    return cases


def run_case(case: BenchmarkCase, max_passes: int = 100, interprocedural: bool = True) -> CaseResult:
    notes_file = case.root / "known_limitations.txt"
    notes = notes_file.read_text(encoding="utf-8").strip() if notes_file.is_file() else ""
    try:
        for source in case.sources:
            violations = lint_single_path(source.read_text(encoding="utf-8"), str(source))
            if violations:
                raise CorpusError("; ".join(violations))
        result = analyze(
            [case.entrypoint], case.root, max_passes=max_passes, interprocedural=interprocedural
        )
    except Exception as exc:  # a crashing case must not abort the suite
        return CaseResult(
            category=case.category,
            name=case.name,
            complete=False,
            sound=False,
            diff=None,
            error=f"{type(exc).__name__}: {exc}",
            notes=notes,
        )
    edge_diff = diff(result.graph, case.expected)
    return CaseResult(
        category=case.category,
        name=case.name,
        complete=edge_diff.complete,
        sound=edge_diff.sound,
        diff=edge_diff,
        notes=notes,
    )


def run_suite(
    corpus_dir: Path | str, max_passes: int = 100, interprocedural: bool = True
) -> SuiteReport:
    """Analyze every case (in parallel; the report order is deterministic)
    and diff each against its expected graph."""
    cases = load_corpus(corpus_dir)
    with ThreadPoolExecutor() as pool:
        results = list(
            pool.map(lambda c: run_case(c, max_passes, interprocedural), cases)
        )
    results.sort(key=lambda r: (r.category, r.name))
    return SuiteReport(cases=results)


def measure(package_dir: Path | str, repetitions: int = 5) -> tuple[float, float]:
    """End-to-end analysis cost over fresh subprocesses: (median wall-clock
    seconds, peak resident memory in MB)."""
    root = Path(package_dir)
    entry = root / "main.py"
    if not entry.is_file():
        candidates = sorted(root.glob("*.py"))
        if not candidates:
            raise FileNotFoundError(f"no Python sources in {root}")
        entry = candidates[0]
    times = []
    for _ in range(repetitions):
        start = time.perf_counter()
        proc = subprocess.run(
            [sys.executable, "-m", "callscan", "analyze", str(entry), "--package", str(root)],
            stdout=subprocess.DEVNULL,
            stderr=subprocess.PIPE,
        )
        times.append(time.perf_counter() - start)
        if proc.returncode != 0:
            raise RuntimeError(
                f"analysis of {root} failed (exit {proc.returncode}): "
                + proc.stderr.decode(errors="replace").strip()
            )
    # ru_maxrss for children is the high-water mark across all of them,
    # which is exactly the peak we want; Linux reports kilobytes
    peak_kb = resource.getrusage(resource.RUSAGE_CHILDREN).ru_maxrss
    return statistics.median(times), peak_kb / 1024.0
