"""Call-graph construction over a converged analysis state, plus the
serialization, comparison, and reachability operations built on it.

Node names are canonical dotted paths.  Serialization is deterministic:
identical graphs always produce byte-identical JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import ir
from .analysis import Engine
from .state import AnalysisState, AssignmentGraph, QualifiedObject

__all__ = [
    "CallGraph",
    "EdgeDiff",
    "build_call_graph",
    "reachable_functions",
    "serialize",
    "parse",
    "diff",
    "is_reachable",
    "to_dot",
]


@dataclass
class CallGraph:
    """Nodes and caller -> callee edges, both over canonical names."""

    nodes: set[str] = field(default_factory=set)
    edges: dict[str, set[str]] = field(default_factory=dict)

    def add_node(self, name: str) -> None:
        self.nodes.add(name)
        self.edges.setdefault(name, set())

    def add_edge(self, caller: str, callee: str) -> None:
        self.add_node(caller)
        self.add_node(callee)
        self.edges[caller].add(callee)

    def edge_pairs(self) -> set[tuple[str, str]]:
        return {(a, b) for a, callees in self.edges.items() for b in callees}


def reachable_functions(graph: AssignmentGraph, source: QualifiedObject) -> set[QualifiedObject]:
    """Every function object an expression value may stand for: the source
    itself plus everything reachable from it in the assignment graph,
    filtered to function kind."""
    return {o for o in {source} | graph.reachable(source) if o.kind is ir.Kind.FUNC}


def build_call_graph(
    modules: list[ir.IRModule], state: AnalysisState, interprocedural: bool = True
) -> CallGraph:
    """Run one recording pass over the converged state and collect every
    resolved call edge.  All defined functions and modules appear as nodes
    even when they never call or get called."""
    graph = CallGraph()
    for module in modules:
        graph.add_node(module.module_name)
    for fobj in state.functions:
        graph.add_node(str(fobj))

    engine = Engine(modules, state=state, interprocedural=interprocedural)
    engine.final_pass(lambda caller, callee: graph.add_edge(str(caller), str(callee)))
    return graph


def serialize(graph: CallGraph) -> str:
    payload = {node: sorted(graph.edges.get(node, ())) for node in sorted(graph.nodes)}
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def parse(text: str) -> CallGraph:
    payload = json.loads(text)
    if not isinstance(payload, dict):
        raise ValueError("call graph JSON must be an object")
    graph = CallGraph()
    for node, callees in payload.items():
        graph.add_node(node)
        if not isinstance(callees, list):
            raise ValueError(f"callees of {node!r} must be an array")
        for callee in callees:
            graph.add_edge(node, callee)
    return graph


@dataclass
class EdgeDiff:
    """Edge-level comparison of a generated graph against ground truth."""

    true_positives: set[tuple[str, str]]
    false_positives: set[tuple[str, str]]
    false_negatives: set[tuple[str, str]]

    @property
    def precision(self) -> float:
        generated = len(self.true_positives) + len(self.false_positives)
        if generated == 0:
            return 1.0
        return len(self.true_positives) / generated

    @property
    def recall(self) -> float:
        truth = len(self.true_positives) + len(self.false_negatives)
        if truth == 0:
            return 1.0
        return len(self.true_positives) / truth

    @property
    def complete(self) -> bool:
        """No spurious edges."""
        return not self.false_positives

    @property
    def sound(self) -> bool:
        """No missed edges."""
        return not self.false_negatives


def diff(generated: CallGraph, truth: CallGraph) -> EdgeDiff:
    got = generated.edge_pairs()
    want = truth.edge_pairs()
    return EdgeDiff(
        true_positives=got & want,
        false_positives=got - want,
        false_negatives=want - got,
    )


def is_reachable(graph: CallGraph, target: str) -> tuple[bool, set[str]]:
    """Whether any call site in the graph invokes target.  The witnesses are
    every caller of target; an imported-but-never-called function yields
    (False, empty)."""
    witnesses = {caller for caller, callees in graph.edges.items() if target in callees}
    return (bool(witnesses), witnesses)


def to_dot(graph: CallGraph) -> str:
    """Graphviz projection, deterministic like the JSON form."""
    lines = ["digraph callgraph {"]
    for node in sorted(graph.nodes):
        lines.append(f'  "{node}";')
    for caller, callee in sorted(graph.edge_pairs()):
        lines.append(f'  "{caller}" -> "{callee}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
