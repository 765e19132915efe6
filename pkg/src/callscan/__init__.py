"""callscan: static call-graph generation for Python 3.

Two phases: a fixpoint pass computes, per module, which objects every
identifier and attribute may point to (the assignment graph); a final pass
then resolves each call site against that graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .analysis import FixpointReport, NonConvergence, module_order, run_fixpoint
from .callgraph import CallGraph, build_call_graph
from .frontend import PackageIndex, resolve_imports
from .ir import IRModule, lower
from .state import AnalysisState

__version__ = "0.1.0"

__all__ = ["AnalysisResult", "analyze", "NonConvergence", "__version__"]


@dataclass
class AnalysisResult:
    index: PackageIndex
    modules: list[IRModule]
    state: AnalysisState
    report: FixpointReport
    graph: CallGraph


def analyze(
    entrypoints: list[Path | str],
    package_root: Path | str,
    max_passes: int = 100,
    interprocedural: bool = True,
) -> AnalysisResult:
    """Full pipeline: discover modules, lower, run to fixpoint, build the
    call graph.  Raises NonConvergence when the pass cap is exceeded."""
    index = resolve_imports(entrypoints, package_root)
    modules = module_order([lower(unit, index) for unit in index.modules.values()])
    state, report = run_fixpoint(modules, max_passes=max_passes, interprocedural=interprocedural)
    graph = build_call_graph(modules, state, interprocedural=interprocedural)
    return AnalysisResult(index=index, modules=modules, state=state, report=report, graph=graph)
