"""The fixpoint engine.

Evaluates every module's IR, threading the analysis state, until no domain
changes.  Evaluation of an expression yields a *set* of qualified objects
(empty for inert values): call dispatch is higher-order, so a callee may
resolve to several functions and the value of an expression is the union of
everything it may denote.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from . import ir
from .ir import Definition, Kind
from .state import (
    AnalysisState,
    QualifiedObject,
    get_object,
    linearize_lenient,
    module_object,
)

__all__ = ["Engine", "FixpointReport", "NonConvergence", "run_fixpoint", "module_order"]

ObjSet = set[QualifiedObject]
Recorder = Callable[[QualifiedObject, QualifiedObject], None]

_CONTAINER_ATTR_PREFIXES = ("<idx>", "<dict>")


class NonConvergence(Exception):
    def __init__(self, passes: int) -> None:
        super().__init__(f"analysis did not converge within {passes} passes")
        self.passes = passes


@dataclass
class FixpointReport:
    iterations: int = 0
    converged: bool = False
    diagnostics: list[tuple[str, ir.Pos, str]] = field(default_factory=list)


def _imported_modules(module: ir.IRModule) -> set[str]:
    found: set[str] = set()

    def walk(node: ir.Node) -> None:
        if isinstance(node, ir.Import):
            found.add(node.module)
        for value in vars(node).values():
            if isinstance(value, ir.Node):
                walk(value)
            elif isinstance(value, tuple):
                for item in value:
                    if isinstance(item, ir.Node):
                        walk(item)
                    elif isinstance(item, tuple) and len(item) == 2 and isinstance(item[1], ir.Node):
                        walk(item[1])

    walk(module.body)
    return found


def module_order(modules: list[ir.IRModule]) -> list[ir.IRModule]:
    """Topological order by import dependency; cycles broken arbitrarily.
    Order affects only the number of passes, never the fixpoint."""
    by_name = {m.module_name: m for m in modules}
    deps = {m.module_name: _imported_modules(m) & by_name.keys() for m in modules}
    ordered: list[ir.IRModule] = []
    done: set[str] = set()
    visiting: set[str] = set()

    def visit(name: str) -> None:
        if name in done or name in visiting:
            return
        visiting.add(name)
        for dep in sorted(deps[name]):
            if dep != name:
                visit(dep)
        visiting.discard(name)
        done.add(name)
        ordered.append(by_name[name])

    for m in modules:
        visit(m.module_name)
    return ordered


class Engine:
    """Owns one analysis run over a fixed set of modules."""

    def __init__(
        self,
        modules: list[ir.IRModule],
        state: Optional[AnalysisState] = None,
        max_passes: int = 100,
        interprocedural: bool = True,
    ) -> None:
        self.modules = modules
        self.state = state if state is not None else AnalysisState()
        self.max_passes = max_passes
        # debug switch: with inter-procedural flow off, arguments never reach
        # parameters, demonstrating the name-matching baseline's failure modes
        self.interprocedural = interprocedural
        self.module_names = {m.module_name for m in modules}
        # dotted prefixes are importable package namespaces even without code
        self.known_modules = set(self.module_names)
        for name in self.module_names:
            parts = name.split(".")
            for i in range(1, len(parts)):
                self.known_modules.add(".".join(parts[:i]))
        self.recorder: Optional[Recorder] = None
        self.current_module = ""
        self.diagnostics: list[tuple[str, ir.Pos, str]] = []
        self._diag_seen: set[tuple[str, ir.Pos, str]] = set()

    # -- driver ------------------------------------------------------------

    def run_fixpoint(self) -> FixpointReport:
        report = FixpointReport()
        previous_edges = -1
        for iteration in range(1, self.max_passes + 1):
            before = self._snapshot()
            self._run_pass()
            report.iterations = iteration
            assert self.state.graph.edge_count >= previous_edges, "assignment graph shrank"
            previous_edges = self.state.graph.edge_count
            if self._snapshot() == before:
                report.converged = True
                break
        if not report.converged:
            raise NonConvergence(self.max_passes)
        report.diagnostics = list(self.diagnostics)
        return report

    def final_pass(self, recorder: Recorder) -> None:
        """One extra evaluation pass over the converged state, reporting
        every resolved call through `recorder`."""
        self.recorder = recorder
        try:
            self._run_pass()
        finally:
            self.recorder = None

    def _run_pass(self) -> None:
        self.diagnostics = []
        self._diag_seen = set()
        for module in self.modules:
            root = Definition(module.module_name, Kind.MOD)
            self.state.scopes.ensure_root(root)
            self.state.namespace = (root,)
            self.current_module = module.module_name
            self.eval(module.body)

    def _snapshot(self):
        thunk_size = sum(
            len(target_args[2]) + sum(len(v) for v in target_args[2].values())
            for target_args in self.state.thunks.values()
        )
        return (
            self.state.graph.edge_count,
            self.state.scopes.entry_count,
            dict(self.state.hierarchy),
            len(self.state.functions),
            len(self.state.externals),
            len(self.state.thunks),
            thunk_size,
        )

    # -- helpers -----------------------------------------------------------

    def diag(self, pos: ir.Pos, message: str) -> None:
        key = (self.current_module, pos, message)
        if key not in self._diag_seen:
            self._diag_seen.add(key)
            self.diagnostics.append(key)

    def _edge(self, source: QualifiedObject, targets: ObjSet) -> None:
        for target in targets:
            if target != source:
                self.state.graph.add_edge(source, target)

    def _enclosing_caller(self) -> QualifiedObject:
        ns = self.state.namespace
        for i in range(len(ns) - 1, -1, -1):
            if ns[i].kind in (Kind.FUNC, Kind.MOD):
                return QualifiedObject(ns[:i], ns[i])
        return QualifiedObject(ns[:1][:0], ns[0])

    def _record(self, callee: QualifiedObject) -> None:
        if self.recorder is not None:
            self.recorder(self._enclosing_caller(), callee)

    def _ret_obj(self, func: QualifiedObject) -> QualifiedObject:
        return QualifiedObject(func.path, Definition(ir.RETURN_NAME, Kind.VAR))

    def _reach(self, obj: QualifiedObject) -> list[QualifiedObject]:
        return sorted(self.state.graph.reachable(obj), key=str)

    def _candidates(self, obj: QualifiedObject) -> list[QualifiedObject]:
        out = [obj]
        for other in self._reach(obj):
            if other != obj:
                out.append(other)
        return out

    def _is_known_class(self, obj: QualifiedObject) -> bool:
        return obj.kind is Kind.CLS and obj not in self.state.externals

    # -- attribute resolution ---------------------------------------------

    def _direct_children(self, path, attr: str, for_write: bool) -> list[QualifiedObject]:
        scopes = self.state.scopes
        results: list[QualifiedObject] = []
        if attr == ir.WILDCARD_KEY:
            for d in scopes.children(path):
                if d.name.startswith(_CONTAINER_ATTR_PREFIXES):
                    results.append(QualifiedObject(path, d))
            return results
        d = scopes.lookup(path, attr)
        if d is not None:
            results.append(QualifiedObject(path, d))
        if not for_write and attr.startswith(_CONTAINER_ATTR_PREFIXES):
            w = scopes.lookup(path, ir.WILDCARD_KEY)
            if w is not None:
                results.append(QualifiedObject(path, w))
        return results

    def _resolve_attr(
        self, receiver: QualifiedObject, attr: str, for_write: bool = False
    ) -> list[tuple[QualifiedObject, str]]:
        """All objects the attribute may denote, tagged with how each was
        found: "class" (via the MRO), "module", "direct", or "external"."""
        scopes = self.state.scopes
        results: list[tuple[QualifiedObject, str]] = []
        seen: set[QualifiedObject] = set()

        def emit(obj: QualifiedObject, via: str) -> None:
            if obj not in seen:
                seen.add(obj)
                results.append((obj, via))

        for cand in self._candidates(receiver):
            if cand in self.state.externals:
                ext = QualifiedObject(cand.path, Definition(attr, Kind.FUNC))
                self.state.externals.add(ext)
                emit(ext, "external")
            elif cand.kind is Kind.CLS:
                for cls in linearize_lenient(self.state.hierarchy, cand)[0]:
                    if cls in self.state.externals:
                        continue
                    found = self._direct_children(cls.path, attr, for_write)
                    if found:
                        for obj in found:
                            emit(obj, "class")
                        break
            elif cand.kind is Kind.MOD:
                for obj in self._direct_children(cand.path, attr, for_write):
                    emit(obj, "module")
                sub = f"{cand.name}.{attr}"
                if sub in self.known_modules:
                    emit(module_object(sub), "module")
            else:
                for obj in self._direct_children(cand.path, attr, for_write):
                    emit(obj, "direct")
        return results

    # -- call dispatch -----------------------------------------------------

    def _bind_call(
        self,
        func: QualifiedObject,
        params: tuple[str, ...],
        selfo: Optional[QualifiedObject],
        args: dict[str, ObjSet],
    ) -> None:
        """Connect every parameter of func with the matching argument."""
        if not self.interprocedural:
            return
        scopes = self.state.scopes
        offset = 1 if selfo is not None else 0
        if selfo is not None and params:
            scopes.add(func.path, params[0], Kind.VAR)
            self._edge(QualifiedObject(func.path, Definition(params[0], Kind.VAR)), {selfo})
        for name, values in args.items():
            if not values:
                continue
            if name.isdigit():
                index = int(name) + offset
                if index >= len(params):
                    continue  # spills into *args: unmodeled
                pname = params[index]
            else:
                pname = name
            scopes.add(func.path, pname, Kind.VAR)
            self._edge(QualifiedObject(func.path, Definition(pname, Kind.VAR)), values)

    def _thunk_for(
        self, pos: ir.Pos, target: QualifiedObject, selfo: Optional[QualifiedObject]
    ) -> QualifiedObject:
        name = f"<gen:{pos[0]}:{pos[1]}:{target}>"
        thunk = QualifiedObject(self.state.namespace, Definition(name, Kind.VAR))
        if thunk not in self.state.thunks:
            self.state.thunks[thunk] = (target, selfo, {})
        return thunk

    def _force_thunk(self, thunk: QualifiedObject) -> ObjSet:
        target, selfo, args = self.state.thunks[thunk]
        meta = self.state.functions.get(target)
        if meta is not None:
            self._bind_call(target, meta[0], selfo, args)
        self._record(target)
        return {self._ret_obj(target)}

    def _dispatch_call(
        self,
        targets: list[tuple[QualifiedObject, Optional[QualifiedObject]]],
        args: dict[str, ObjSet],
        pos: ir.Pos,
    ) -> ObjSet:
        out: ObjSet = set()
        for obj, selfo in targets:
            for t in self._candidates(obj):
                meta = self.state.functions.get(t)
                if meta is not None:
                    params, is_generator = meta
                    if is_generator:
                        thunk = self._thunk_for(pos, t, selfo)
                        stored = self.state.thunks[thunk][2]
                        for name, values in args.items():
                            stored.setdefault(name, set()).update(values)
                        out.add(thunk)
                    else:
                        self._bind_call(t, params, selfo, args)
                        self._record(t)
                        out.add(self._ret_obj(t))
                elif self._is_known_class(t):
                    out |= self._construct(t, args)
                elif t in self.state.externals:
                    # edge to the external function; its return value and
                    # effects are unknown and ignored
                    self._record(t)
        return out

    def _construct(self, cls: QualifiedObject, args: dict[str, ObjSet]) -> ObjSet:
        """Instantiation: dispatch to the first __init__ in the MRO, then
        yield the class object itself as the instance value."""
        for c in linearize_lenient(self.state.hierarchy, cls)[0]:
            if c in self.state.externals:
                continue
            d = self.state.scopes.lookup(c.path, "__init__")
            if d is None:
                continue
            init = QualifiedObject(c.path, d)
            meta = self.state.functions.get(init)
            if meta is not None:
                self._bind_call(init, meta[0], cls, args)
            if meta is not None or init.kind is Kind.FUNC:
                self._record(init)
            break
        return {cls}

    def _callee_targets(
        self, callee: ir.Node
    ) -> list[tuple[QualifiedObject, Optional[QualifiedObject]]]:
        if isinstance(callee, ir.AttrAccess):
            receivers = self.eval(callee.obj)
            out: list[tuple[QualifiedObject, Optional[QualifiedObject]]] = []
            for r in sorted(receivers, key=str):
                for obj, via in self._resolve_attr(r, callee.attr):
                    bound = via == "class" and r.kind not in (Kind.CLS, Kind.MOD)
                    out.append((obj, r if bound else None))
            if receivers and not out:
                self.diag(callee.pos, f"unresolved attribute '{callee.attr}' in call")
            return out
        values = self.eval(callee)
        return [(obj, None) for obj in sorted(values, key=str)]

    # -- evaluation --------------------------------------------------------

    def eval(self, node: ir.Node) -> ObjSet:
        method = self._HANDLERS[type(node)]
        return method(self, node)

    def _eval_inert(self, node: ir.Inert) -> ObjSet:
        return set()

    def _eval_seq(self, node: ir.Seq) -> ObjSet:
        result: ObjSet = set()
        for item in node.items:
            result = self.eval(item)
        return result

    def _eval_ident(self, node: ir.Ident) -> ObjSet:
        obj = get_object(self.state.scopes, self.state.namespace, node.name)
        if obj is None:
            self.diag(node.pos, f"unresolved identifier '{node.name}'")
            return set()
        return {obj}

    def _eval_assign(self, node: ir.Assign) -> ObjSet:
        values = self.eval(node.value)
        ns = self.state.namespace
        target_ns = ns
        if node.scope == "global":
            target_ns = ns[:1]
        elif node.scope == "nonlocal":
            target_ns = ns[:1]
            for j in range(len(ns) - 1, 0, -1):
                prefix = ns[:j]
                if prefix[-1].kind is Kind.FUNC and self.state.scopes.lookup(prefix, node.target):
                    target_ns = prefix
                    break
        self.state.scopes.add(target_ns, node.target, Kind.VAR)
        lhs = QualifiedObject(target_ns, Definition(node.target, Kind.VAR))
        self._edge(lhs, values)
        return {lhs}

    def _eval_function(self, node: ir.FunctionDef) -> ObjSet:
        ns = self.state.namespace
        scopes = self.state.scopes
        scopes.add(ns, node.name, Kind.FUNC)
        fdef = Definition(node.name, Kind.FUNC)
        fobj = QualifiedObject(ns, fdef)
        inner = ns + (fdef,)
        scopes.add(inner, ir.RETURN_NAME, Kind.VAR)
        for param in node.params:
            scopes.add(inner, param, Kind.VAR)
        self.state.functions[fobj] = (node.params, node.is_generator)
        self.state.namespace = inner
        try:
            self.eval(node.body)
        finally:
            self.state.namespace = ns
        return {fobj}

    def _eval_return(self, node: ir.Return) -> ObjSet:
        values = self.eval(node.value)
        ns = self.state.namespace
        for i in range(len(ns) - 1, -1, -1):
            if ns[i].kind is Kind.FUNC:
                ret = QualifiedObject(ns[: i + 1], Definition(ir.RETURN_NAME, Kind.VAR))
                self._edge(ret, values)
                return {ret}
        self.diag(node.pos, "return outside of a function")
        return set()

    def _eval_call(self, node: ir.Call) -> ObjSet:
        args = {name: self.eval(expr) for name, expr in node.args}
        targets = self._callee_targets(node.callee)
        return self._dispatch_call(targets, args, node.pos)

    def _eval_class(self, node: ir.ClassDef) -> ObjSet:
        ns = self.state.namespace
        scopes = self.state.scopes
        scopes.add(ns, node.name, Kind.CLS)
        cdef = Definition(node.name, Kind.CLS)
        cobj = QualifiedObject(ns, cdef)
        bases: list[QualifiedObject] = []
        for base_node in node.bases:
            for value in sorted(self.eval(base_node), key=str):
                resolved = [value] if value.kind is Kind.CLS else [
                    t for t in self._reach(value) if t.kind is Kind.CLS
                ]
                if not resolved:
                    # opaque leaf: an external or otherwise unresolved base
                    resolved = [value]
                for r in resolved:
                    if r != cobj and r not in bases:
                        bases.append(r)
        self.state.hierarchy[cobj] = tuple(bases)
        self.state.namespace = ns + (cdef,)
        try:
            self.eval(node.body)
        finally:
            self.state.namespace = ns
        return {cobj}

    def _eval_attr_access(self, node: ir.AttrAccess) -> ObjSet:
        receivers = self.eval(node.obj)
        out: ObjSet = set()
        for r in sorted(receivers, key=str):
            out.update(obj for obj, _via in self._resolve_attr(r, node.attr))
        if receivers and not out:
            self.diag(node.pos, f"unresolved attribute '{node.attr}'")
        return out

    def _eval_attr_assign(self, node: ir.AttrAssign) -> ObjSet:
        receivers = self.eval(node.obj)
        values = self.eval(node.value)
        out: ObjSet = set()
        for r in sorted(receivers, key=str):
            resolved = self._resolve_attr(r, node.attr, for_write=True)
            found = [obj for obj, _via in resolved]
            if node.attr == ir.WILDCARD_KEY:
                # a wildcard write also lands on a dedicated wildcard slot so
                # later reads observe it
                base = self._write_base(r)
                d = self.state.scopes.add(base.path, ir.WILDCARD_KEY, Kind.VAR)
                slot = QualifiedObject(base.path, d)
                if slot not in found:
                    found.append(slot)
            else:
                # instance writes land on class-qualified attribute objects,
                # even when an earlier pass already placed a local slot
                class_hit = any(via == "class" for _obj, via in resolved)
                if not class_hit:
                    for cls in self._candidates(r):
                        if self._is_known_class(cls):
                            d = self.state.scopes.add(cls.path, node.attr, Kind.VAR)
                            obj = QualifiedObject(cls.path, d)
                            if obj not in found:
                                found.append(obj)
            if found:
                for obj in found:
                    self._edge(obj, values)
                out.update(found)
                continue
            base = self._write_base(r)
            if base in self.state.externals:
                obj = QualifiedObject(base.path, Definition(node.attr, Kind.FUNC))
                self.state.externals.add(obj)
            else:
                d = self.state.scopes.add(base.path, node.attr, Kind.VAR)
                obj = QualifiedObject(base.path, d)
            self._edge(obj, values)
            out.add(obj)
        return out

    def _write_base(self, receiver: QualifiedObject) -> QualifiedObject:
        """Fallback location for a new attribute: the container object the
        receiver points to, when there is one, else the receiver itself.
        Writing on the shared container keeps aliased reads consistent."""
        for cand in self._candidates(receiver):
            if cand.name.startswith("<container"):
                return cand
        return receiver

    def _eval_new(self, node: ir.New) -> ObjSet:
        obj = get_object(self.state.scopes, self.state.namespace, node.class_name)
        if obj is None:
            self.diag(node.pos, f"unresolved class '{node.class_name}'")
            return set()
        args = {name: self.eval(expr) for name, expr in node.args}
        return self._dispatch_call([(obj, None)], args, node.pos)

    def _eval_import(self, node: ir.Import) -> ObjSet:
        ns = self.state.namespace
        scopes = self.state.scopes
        m = node.module
        if node.star:
            if m in self.module_names:
                root = (Definition(m, Kind.MOD),)
                for d in scopes.children(root):
                    if d.name.startswith(("_", "<")):
                        continue
                    scopes.add(ns, d.name, Kind.VAR)
                    alias = QualifiedObject(ns, Definition(d.name, Kind.VAR))
                    self._edge(alias, {QualifiedObject(root, d)})
            else:
                self.diag(node.pos, f"'from {m} import *' from unresolved module")
            return set()

        target: Optional[QualifiedObject] = None
        if node.whole_module:
            target = module_object(m)
            if m not in self.known_modules:
                self.state.externals.add(target)
        else:
            sub = f"{m}.{node.name}"
            if m in self.module_names:
                root = (Definition(m, Kind.MOD),)
                d = scopes.lookup(root, node.name)
                if d is not None:
                    target = QualifiedObject(root, d)
                elif sub in self.known_modules:
                    target = module_object(sub)
                else:
                    self.diag(node.pos, f"cannot resolve '{node.name}' in module '{m}'")
            elif m in self.known_modules:
                if sub in self.known_modules:
                    target = module_object(sub)
                else:
                    self.diag(node.pos, f"cannot resolve '{node.name}' in package '{m}'")
            else:
                parent = module_object(m)
                self.state.externals.add(parent)
                target = QualifiedObject((Definition(m, Kind.MOD),), Definition(node.name, Kind.FUNC))
                self.state.externals.add(target)
        scopes.add(ns, node.alias, Kind.VAR)
        alias = QualifiedObject(ns, Definition(node.alias, Kind.VAR))
        if target is not None:
            self._edge(alias, {target})
        return {alias}

    def _eval_iter(self, node: ir.Iter) -> ObjSet:
        values = self.eval(node.value)
        out: ObjSet = set()
        for obj in sorted(values, key=str):
            next_methods = [
                (o, via) for o, via in self._resolve_attr(obj, "__next__") if via == "class"
            ]
            if next_methods:
                selfo = obj if obj.kind not in (Kind.CLS, Kind.MOD) else None
                out |= self._dispatch_call([(o, selfo) for o, _via in next_methods], {}, node.pos)
                continue
            for t in self._candidates(obj):
                if t in self.state.thunks:
                    out |= self._force_thunk(t)
                elif t in self.state.functions and not self.state.functions[t][1]:
                    # iterating a plain callable: modeled as calling it
                    self._bind_call(t, self.state.functions[t][0], None, {})
                    self._record(t)
                    out.add(self._ret_obj(t))
                else:
                    for d in self.state.scopes.children(t.path):
                        if d.name.startswith(_CONTAINER_ATTR_PREFIXES):
                            out.add(QualifiedObject(t.path, d))
        return out

    _HANDLERS = {
        ir.Inert: _eval_inert,
        ir.Seq: _eval_seq,
        ir.Ident: _eval_ident,
        ir.Assign: _eval_assign,
        ir.FunctionDef: _eval_function,
        ir.Return: _eval_return,
        ir.Call: _eval_call,
        ir.ClassDef: _eval_class,
        ir.AttrAccess: _eval_attr_access,
        ir.AttrAssign: _eval_attr_assign,
        ir.New: _eval_new,
        ir.Import: _eval_import,
        ir.Iter: _eval_iter,
    }


def run_fixpoint(
    modules: list[ir.IRModule],
    initial: Optional[AnalysisState] = None,
    max_passes: int = 100,
    interprocedural: bool = True,
) -> tuple[AnalysisState, FixpointReport]:
    """Iterate full evaluation passes over the modules until every domain is
    stable.  Raises NonConvergence if the safety cap is hit."""
    engine = Engine(modules, state=initial, max_passes=max_passes, interprocedural=interprocedural)
    report = engine.run_fixpoint()
    return engine.state, report
