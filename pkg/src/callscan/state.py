"""Analysis state: assignment graph, scope tree, class hierarchy, namespace.

The unit of identity everywhere is the qualified object: a definition plus
the namespace it lives in.  Attributes with equal names under different
namespaces never alias.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .ir import Definition, Kind, dotted

__all__ = [
    "QualifiedObject",
    "AssignmentGraph",
    "ScopeTree",
    "InconsistentMRO",
    "AnalysisState",
    "get_object",
    "add_scope",
    "linearize",
    "linearize_lenient",
    "get_class_attr_object",
]

NamespacePath = tuple[Definition, ...]


@dataclass(frozen=True)
class QualifiedObject:
    namespace: NamespacePath
    definition: Definition

    @property
    def path(self) -> NamespacePath:
        """The scope-tree path naming this object's own children."""
        return self.namespace + (self.definition,)

    @property
    def kind(self) -> Kind:
        return self.definition.kind

    @property
    def name(self) -> str:
        return self.definition.name

    def __str__(self) -> str:
        return dotted(self.path)

    def __repr__(self) -> str:
        return f"<{self} [{self.definition.kind.value}]>"


def module_object(name: str) -> QualifiedObject:
    return QualifiedObject((), Definition(name, Kind.MOD))


class AssignmentGraph:
    """Directed graph over qualified objects; an edge u -> v means u may
    hold or point to v.  Edge sets only ever grow."""

    def __init__(self) -> None:
        self._edges: dict[QualifiedObject, set[QualifiedObject]] = {}
        self._edge_count = 0

    def add_edge(self, source: QualifiedObject, target: QualifiedObject) -> bool:
        targets = self._edges.setdefault(source, set())
        if target in targets:
            return False
        targets.add(target)
        self._edge_count += 1
        return True

    def successors(self, source: QualifiedObject) -> frozenset[QualifiedObject]:
        return frozenset(self._edges.get(source, ()))

    def reachable(self, source: QualifiedObject) -> set[QualifiedObject]:
        """All objects reachable from source via edges, source excluded
        unless it lies on a cycle."""
        seen: set[QualifiedObject] = set()
        stack = list(self._edges.get(source, ()))
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            stack.extend(self._edges.get(node, ()))
        return seen

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def edges(self) -> Iterable[tuple[QualifiedObject, QualifiedObject]]:
        for source, targets in self._edges.items():
            for target in targets:
                yield source, target

    def nodes(self) -> set[QualifiedObject]:
        out = set(self._edges)
        for targets in self._edges.values():
            out |= targets
        return out


class ScopeTree:
    """Forest of definitions: one root per module, children keyed by the
    path of definitions leading to them."""

    def __init__(self) -> None:
        # path -> insertion-ordered pseudo-set of child definitions
        self._children: dict[NamespacePath, dict[Definition, None]] = {}

    def ensure_root(self, definition: Definition) -> None:
        self._children.setdefault((definition,), {})

    def has_path(self, path: NamespacePath) -> bool:
        return path in self._children

    def add(self, namespace: NamespacePath, name: str, kind: Kind) -> Definition:
        """Add (name, kind) under namespace; idempotent."""
        definition = Definition(name, kind)
        children = self._children.setdefault(namespace, {})
        if definition not in children:
            # re-adding moves nothing; first-added order is preserved, and
            # lookup prefers the most recently *added* definition
            children[definition] = None
            self._children.setdefault(namespace + (definition,), {})
        return definition

    def children(self, path: NamespacePath) -> tuple[Definition, ...]:
        return tuple(self._children.get(path, ()))

    def lookup(self, path: NamespacePath, name: str) -> Optional[Definition]:
        """The most recently added child of `path` named `name`."""
        children = self._children.get(path)
        if not children:
            return None
        for definition in reversed(children):
            if definition.name == name:
                return definition
        return None

    def paths(self) -> Iterable[NamespacePath]:
        return self._children.keys()

    @property
    def entry_count(self) -> int:
        return sum(len(v) for v in self._children.values())


def get_object(scopes: ScopeTree, namespace: NamespacePath, identifier: str) -> Optional[QualifiedObject]:
    """Resolve an identifier by walking namespace prefixes innermost-first."""
    for i in range(len(namespace), 0, -1):
        prefix = namespace[:i]
        definition = scopes.lookup(prefix, identifier)
        if definition is not None:
            return QualifiedObject(prefix, definition)
    return None


def add_scope(scopes: ScopeTree, namespace: NamespacePath, identifier: str, kind: Kind) -> ScopeTree:
    """Record (identifier, kind) as a child of namespace; returns the tree."""
    scopes.add(namespace, identifier, kind)
    return scopes


ClassHierarchy = dict[QualifiedObject, tuple[QualifiedObject, ...]]


class InconsistentMRO(Exception):
    """C3 merge failed for the class layout (mirrors CPython's TypeError)."""


def linearize(hierarchy: ClassHierarchy, cls: QualifiedObject) -> list[QualifiedObject]:
    """C3 linearization of cls, beginning with cls itself.  Parents without
    recorded bases (external classes) are opaque leaves."""
    return _c3(hierarchy, cls, frozenset())


def _c3(hierarchy: ClassHierarchy, cls: QualifiedObject, visiting: frozenset) -> list[QualifiedObject]:
    if cls in visiting:
        # defensive: cyclic hierarchies cannot occur in executable Python
        return [cls]
    parents = [p for p in hierarchy.get(cls, ()) if p != cls]
    if not parents:
        return [cls]
    visiting = visiting | {cls}
    sequences = [_c3(hierarchy, p, visiting) for p in parents] + [list(parents)]
    return [cls] + _merge(sequences)


def _merge(sequences: list[list[QualifiedObject]]) -> list[QualifiedObject]:
    result: list[QualifiedObject] = []
    sequences = [list(s) for s in sequences if s]
    while sequences:
        for seq in sequences:
            head = seq[0]
            if not any(head in other[1:] for other in sequences):
                break
        else:
            raise InconsistentMRO(
                "cannot create a consistent method resolution order for "
                + ", ".join(str(s[0]) for s in sequences)
            )
        result.append(head)
        sequences = [
            [item for item in seq if item != head] for seq in sequences
        ]
        sequences = [s for s in sequences if s]
    return result


def linearize_lenient(hierarchy: ClassHierarchy, cls: QualifiedObject) -> tuple[list[QualifiedObject], bool]:
    """linearize, degrading to left-to-right depth-first order on an
    inconsistent hierarchy.  Returns (order, was_consistent)."""
    try:
        return linearize(hierarchy, cls), True
    except InconsistentMRO:
        order: list[QualifiedObject] = []
        seen: set[QualifiedObject] = set()

        def visit(c: QualifiedObject) -> None:
            if c in seen:
                return
            seen.add(c)
            order.append(c)
            for parent in hierarchy.get(c, ()):
                visit(parent)

        visit(cls)
        return order, False


def get_class_attr_object(
    receiver: QualifiedObject,
    attr: str,
    hierarchy: ClassHierarchy,
    scopes: ScopeTree,
    graph: Optional[AssignmentGraph] = None,
) -> Optional[QualifiedObject]:
    """Resolve an attribute against the receiver's namespace.

    Class receivers (and, when the assignment graph is given, objects that
    point into classes) search the method resolution order; other receivers
    look in their own namespace subtree.  None when absent anywhere.
    """
    candidates: list[QualifiedObject] = [receiver]
    if graph is not None and receiver.kind is not Kind.CLS:
        for obj in sorted(graph.reachable(receiver), key=str):
            if obj.kind is Kind.CLS:
                candidates.append(obj)
    for candidate in candidates:
        if candidate.kind is Kind.CLS:
            for cls in linearize_lenient(hierarchy, candidate)[0]:
                definition = scopes.lookup(cls.path, attr)
                if definition is not None:
                    return QualifiedObject(cls.path, definition)
        else:
            definition = scopes.lookup(candidate.path, attr)
            if definition is not None:
                return QualifiedObject(candidate.path, definition)
    return None


@dataclass
class AnalysisState:
    """The four domains, plus derived registries the engine maintains so a
    converged state is sufficient input for the final call-graph pass."""

    graph: AssignmentGraph = field(default_factory=AssignmentGraph)
    scopes: ScopeTree = field(default_factory=ScopeTree)
    namespace: NamespacePath = ()
    hierarchy: ClassHierarchy = field(default_factory=dict)
    # function object -> (parameter names, is_generator)
    functions: dict[QualifiedObject, tuple[tuple[str, ...], bool]] = field(default_factory=dict)
    # objects standing for code outside the analyzed package
    externals: set[QualifiedObject] = field(default_factory=set)
    # thunk object -> (generator function, bound self or None, merged args)
    thunks: dict[QualifiedObject, tuple[QualifiedObject, Optional[QualifiedObject], dict[str, set[QualifiedObject]]]] = field(
        default_factory=dict
    )
