"""Intermediate representation and lowering from Python syntax trees.

The IR is a small expression language: assignments, function and class
definitions, calls with keyword-form arguments, attribute access and
assignment, object construction, imports, iteration, and sequencing.
Lowering desugars the rest of Python onto these forms; constructs that
cannot be expressed degrade to no-ops recorded as diagnostics.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

__all__ = [
    "Kind",
    "Definition",
    "dotted",
    "Node",
    "Inert",
    "Ident",
    "Assign",
    "FunctionDef",
    "Return",
    "Call",
    "ClassDef",
    "AttrAccess",
    "AttrAssign",
    "New",
    "Import",
    "Iter",
    "Seq",
    "IRModule",
    "Diagnostic",
    "lower",
]


class Kind(str, Enum):
    """The four identifier types."""

    FUNC = "func"
    VAR = "var"
    CLS = "cls"
    MOD = "mod"


@dataclass(frozen=True)
class Definition:
    """An (identifier, kind) pair; the atom of every analysis domain."""

    name: str
    kind: Kind

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("definition identifier must be non-empty")


def dotted(path: tuple[Definition, ...]) -> str:
    """Serialize a namespace path by joining identifiers with dots."""
    return ".".join(d.name for d in path)


# Reserved spellings for synthesized names.  They contain characters that are
# illegal in Python identifiers, so they can never collide with user code.
LAMBDA_NAME = "<lambda{}>"
CONTAINER_NAME = "<container{}>"
TMP_NAME = "<tmp{}>"
DICT_KEY = "<dict>{}"
INDEX_KEY = "<idx>{}"
WILDCARD_KEY = "<idx>*"
RETURN_NAME = "ret"

Pos = tuple[int, int]


@dataclass
class Node:
    pos: Pos = field(default=(0, 0), kw_only=True)


@dataclass
class Inert(Node):
    """A fresh object with no interesting structure (literals, unknowns)."""


@dataclass
class Ident(Node):
    name: str = ""


@dataclass
class Assign(Node):
    target: str = ""
    value: Node = field(default_factory=Inert)
    # "global" / "nonlocal" when the enclosing function declared the name so.
    scope: Optional[str] = None


@dataclass
class FunctionDef(Node):
    name: str = ""
    params: tuple[str, ...] = ()
    body: Node = field(default_factory=Inert)
    is_generator: bool = False


@dataclass
class Return(Node):
    value: Node = field(default_factory=Inert)


@dataclass
class Call(Node):
    callee: Node = field(default_factory=Inert)
    # All arguments are keyword-form; positional arguments carry the names
    # "0", "1", ... and are matched to the target's parameter list on dispatch.
    args: tuple[tuple[str, Node], ...] = ()


@dataclass
class ClassDef(Node):
    name: str = ""
    bases: tuple[Node, ...] = ()
    body: Node = field(default_factory=Inert)


@dataclass
class AttrAccess(Node):
    obj: Node = field(default_factory=Inert)
    attr: str = ""


@dataclass
class AttrAssign(Node):
    obj: Node = field(default_factory=Inert)
    attr: str = ""
    value: Node = field(default_factory=Inert)


@dataclass
class New(Node):
    class_name: str = ""
    args: tuple[tuple[str, Node], ...] = ()


@dataclass
class Import(Node):
    name: str = ""
    module: str = ""
    alias: str = ""
    whole_module: bool = False
    star: bool = False


@dataclass
class Iter(Node):
    value: Node = field(default_factory=Inert)


@dataclass
class Seq(Node):
    items: tuple[Node, ...] = ()


@dataclass(frozen=True)
class Diagnostic:
    pos: Pos
    message: str


@dataclass
class IRModule:
    module_name: str
    body: Node
    source: str
    diagnostics: list[Diagnostic] = field(default_factory=list)


class _ScopeInfo:
    """Book-keeping for one lexical scope while lowering."""

    def __init__(self, kind: str) -> None:
        self.kind = kind  # "module" | "function" | "class"
        self.globals: set[str] = set()
        self.nonlocals: set[str] = set()
        # name -> "class" | "func" | "other"; tracks what a name currently
        # refers to, in source order, to decide Call-vs-New lowering.
        self.bindings: dict[str, str] = {}


def _is_generator_def(node: ast.AST) -> bool:
    body = getattr(node, "body", [])
    for stmt in body:
        for child in ast.walk(stmt):
            if isinstance(child, (ast.FunctionDef, ast.AsyncFunctionDef, ast.Lambda)):
                # yields inside nested definitions do not count
                break
            if isinstance(child, (ast.Yield, ast.YieldFrom)):
                return True
    return False


class _Lowerer:
    def __init__(self, module_name: str, package=None) -> None:
        self.module_name = module_name
        self.package = package
        self.diagnostics: list[Diagnostic] = []
        self._lambda_counter = 0
        self._container_counter = 0
        self._tmp_counter = 0
        self.scopes: list[_ScopeInfo] = [_ScopeInfo("module")]

    # -- helpers -----------------------------------------------------------

    def diag(self, node: ast.AST, message: str) -> None:
        self.diagnostics.append(Diagnostic(self._pos(node), message))

    @staticmethod
    def _pos(node: ast.AST) -> Pos:
        return (getattr(node, "lineno", 0), getattr(node, "col_offset", 0))

    def _fresh_lambda(self) -> str:
        name = LAMBDA_NAME.format(self._lambda_counter)
        self._lambda_counter += 1
        return name

    def _fresh_container(self) -> str:
        name = CONTAINER_NAME.format(self._container_counter)
        self._container_counter += 1
        return name

    def _fresh_tmp(self) -> str:
        name = TMP_NAME.format(self._tmp_counter)
        self._tmp_counter += 1
        return name

    def _bind(self, name: str, what: str) -> None:
        self.scopes[-1].bindings[name] = what

    def _binding_of(self, name: str) -> Optional[str]:
        for scope in reversed(self.scopes):
            if name in scope.bindings:
                return scope.bindings[name]
        return None

    def _declared_scope(self, name: str) -> Optional[str]:
        top = self.scopes[-1]
        if name in top.globals:
            return "global"
        if name in top.nonlocals:
            return "nonlocal"
        return None

    # -- statements --------------------------------------------------------

    def lower_stmts(self, stmts: list[ast.stmt], pos: Pos = (0, 0)) -> Node:
        items = []
        for stmt in stmts:
            node = self.lower_stmt(stmt)
            if node is not None:
                items.append(node)
        if not items:
            return Inert(pos=pos)
        if len(items) == 1:
            return items[0]
        return Seq(items=tuple(items), pos=items[0].pos)

    def lower_stmt(self, stmt: ast.stmt) -> Optional[Node]:
        pos = self._pos(stmt)
        if isinstance(stmt, (ast.FunctionDef, ast.AsyncFunctionDef)):
            return self._lower_function(stmt)
        if isinstance(stmt, ast.ClassDef):
            return self._lower_class(stmt)
        if isinstance(stmt, ast.Return):
            value = self.lower_expr(stmt.value) if stmt.value is not None else Inert(pos=pos)
            return Return(value=value, pos=pos)
        if isinstance(stmt, ast.Assign):
            value = self.lower_expr(stmt.value)
            parts = [self._lower_assign_target(t, value) for t in stmt.targets]
            parts = [p for p in parts if p is not None]
            if not parts:
                return None
            if len(parts) == 1:
                return parts[0]
            return Seq(items=tuple(parts), pos=pos)
        if isinstance(stmt, ast.AugAssign):
            value = self.lower_expr(stmt.value)
            if isinstance(stmt.target, ast.Name):
                read = Ident(name=stmt.target.id, pos=pos)
                combined = Seq(items=(read, value), pos=pos)
                return Assign(
                    target=stmt.target.id,
                    value=combined,
                    scope=self._declared_scope(stmt.target.id),
                    pos=pos,
                )
            return self._lower_assign_target(stmt.target, value)
        if isinstance(stmt, ast.AnnAssign):
            if stmt.value is None:
                return None
            return self._lower_assign_target(stmt.target, self.lower_expr(stmt.value))
        if isinstance(stmt, (ast.For, ast.AsyncFor)):
            iter_node = Iter(value=self.lower_expr(stmt.iter), pos=pos)
            target = self._lower_assign_target(stmt.target, iter_node)
            parts = [p for p in (target,) if p is not None]
            parts.append(self.lower_stmts(stmt.body, pos))
            if stmt.orelse:
                parts.append(self.lower_stmts(stmt.orelse, pos))
            return Seq(items=tuple(parts), pos=pos)
        if isinstance(stmt, ast.While):
            parts = [self.lower_expr(stmt.test), self.lower_stmts(stmt.body, pos)]
            if stmt.orelse:
                parts.append(self.lower_stmts(stmt.orelse, pos))
            return Seq(items=tuple(parts), pos=pos)
        if isinstance(stmt, ast.If):
            parts = [self.lower_expr(stmt.test), self.lower_stmts(stmt.body, pos)]
            if stmt.orelse:
                parts.append(self.lower_stmts(stmt.orelse, pos))
            return Seq(items=tuple(parts), pos=pos)
        if isinstance(stmt, (ast.With, ast.AsyncWith)):
            parts: list[Node] = []
            for item in stmt.items:
                ctx = self.lower_expr(item.context_expr)
                if item.optional_vars is not None:
                    bound = self._lower_assign_target(item.optional_vars, ctx)
                    if bound is not None:
                        parts.append(bound)
                else:
                    parts.append(ctx)
            parts.append(self.lower_stmts(stmt.body, pos))
            return Seq(items=tuple(parts), pos=pos)
        if isinstance(stmt, ast.Raise):
            parts = []
            if stmt.exc is not None:
                parts.append(self.lower_expr(stmt.exc))
            if stmt.cause is not None:
                parts.append(self.lower_expr(stmt.cause))
            if not parts:
                return None
            return Seq(items=tuple(parts), pos=pos) if len(parts) > 1 else parts[0]
        if isinstance(stmt, ast.Try):
            parts = [self.lower_stmts(stmt.body, pos)]
            for handler in stmt.handlers:
                parts.extend(self._lower_handler(handler))
            if stmt.orelse:
                parts.append(self.lower_stmts(stmt.orelse, pos))
            if stmt.finalbody:
                parts.append(self.lower_stmts(stmt.finalbody, pos))
            return Seq(items=tuple(parts), pos=pos)
        if isinstance(stmt, ast.Import):
            parts = []
            for alias in stmt.names:
                if alias.asname:
                    parts.append(
                        Import(
                            name=alias.name,
                            module=alias.name,
                            alias=alias.asname,
                            whole_module=True,
                            pos=pos,
                        )
                    )
                else:
                    # "import a.b" binds the name "a"; submodules are then
                    # reached through attribute access.
                    root = alias.name.split(".")[0]
                    parts.append(
                        Import(name=root, module=root, alias=root, whole_module=True, pos=pos)
                    )
            return Seq(items=tuple(parts), pos=pos) if len(parts) > 1 else parts[0]
        if isinstance(stmt, ast.ImportFrom):
            module = self._resolve_from_import(stmt)
            parts = []
            for alias in stmt.names:
                if alias.name == "*":
                    parts.append(Import(name="*", module=module, alias="*", star=True, pos=pos))
                else:
                    parts.append(
                        Import(
                            name=alias.name,
                            module=module,
                            alias=alias.asname or alias.name,
                            pos=pos,
                        )
                    )
            return Seq(items=tuple(parts), pos=pos) if len(parts) > 1 else parts[0]
        if isinstance(stmt, ast.Global):
            self.scopes[-1].globals.update(stmt.names)
            return None
        if isinstance(stmt, ast.Nonlocal):
            self.scopes[-1].nonlocals.update(stmt.names)
            return None
        if isinstance(stmt, ast.Expr):
            return self.lower_expr(stmt.value)
        if isinstance(stmt, ast.Assert):
            parts = [self.lower_expr(stmt.test)]
            if stmt.msg is not None:
                parts.append(self.lower_expr(stmt.msg))
            return Seq(items=tuple(parts), pos=pos) if len(parts) > 1 else parts[0]
        if isinstance(stmt, ast.Delete):
            return None
        if isinstance(stmt, (ast.Pass, ast.Break, ast.Continue)):
            return None
        if isinstance(stmt, ast.Match):
            parts = [self.lower_expr(stmt.subject)]
            for case in stmt.cases:
                parts.append(self.lower_stmts(case.body, pos))
            return Seq(items=tuple(parts), pos=pos)
        self.diag(stmt, f"unsupported statement {type(stmt).__name__}; lowered to no-op")
        return None

    def _lower_handler(self, handler: ast.ExceptHandler) -> list[Node]:
        pos = self._pos(handler)
        parts: list[Node] = []
        if handler.type is not None and handler.name is not None:
            if isinstance(handler.type, ast.Name):
                bound: Node = New(class_name=handler.type.id, pos=pos)
            else:
                bound = self.lower_expr(handler.type)
            parts.append(
                Assign(target=handler.name, value=bound, scope=self._declared_scope(handler.name), pos=pos)
            )
            self._bind(handler.name, "other")
        elif handler.type is not None:
            parts.append(self.lower_expr(handler.type))
        parts.append(self.lower_stmts(handler.body, pos))
        return parts

    def _resolve_from_import(self, stmt: ast.ImportFrom) -> str:
        module = stmt.module or ""
        if stmt.level == 0:
            return module
        # Relative import: resolve against the importing module's package.
        parts = self.module_name.split(".")
        is_package = False
        if self.package is not None:
            unit = self.package.modules.get(self.module_name)
            if unit is not None and unit.file_path.name == "__init__.py":
                is_package = True
        base = parts if is_package else parts[:-1]
        up = stmt.level - 1
        if up:
            base = base[: len(base) - up] if up <= len(base) else []
        prefix = ".".join(base)
        if module and prefix:
            return f"{prefix}.{module}"
        return module or prefix

    def _lower_function(self, stmt: Union[ast.FunctionDef, ast.AsyncFunctionDef]) -> Node:
        pos = self._pos(stmt)
        fdef = self._make_function(stmt.name, stmt.args, stmt.body, pos, _is_generator_def(stmt))
        self._bind(stmt.name, "generator" if fdef.is_generator else "func")
        if not stmt.decorator_list:
            return fdef
        # Decorators are function application: f = dec(f), innermost first.
        # The original definition is held in a temporary so the argument
        # always denotes it, not the later rebinding of the name.
        tmp = self._fresh_tmp()
        value: Node = Ident(name=tmp, pos=pos)
        for dec in reversed(stmt.decorator_list):
            value = Call(callee=self.lower_expr(dec), args=(("0", value),), pos=self._pos(dec))
        self._bind(stmt.name, "other")
        return Seq(
            items=(
                Assign(target=tmp, value=fdef, pos=pos),
                Assign(target=stmt.name, value=value, pos=pos),
            ),
            pos=pos,
        )

    def _make_function(
        self,
        name: str,
        args: ast.arguments,
        body: Union[list[ast.stmt], ast.expr],
        pos: Pos,
        is_generator: bool,
    ) -> FunctionDef:
        params = [a.arg for a in args.posonlyargs + args.args]
        kwonly = [a.arg for a in args.kwonlyargs]
        extras = []
        if args.vararg is not None:
            extras.append(args.vararg.arg)
        if args.kwarg is not None:
            extras.append(args.kwarg.arg)
        self.scopes.append(_ScopeInfo("function"))
        try:
            prelude: list[Node] = []
            # Default values become assignments to the parameter, evaluated
            # when the definition is evaluated.
            positional_defaults = args.defaults
            offset = len(params) - len(positional_defaults)
            for i, default in enumerate(positional_defaults):
                prelude.append(Assign(target=params[offset + i], value=self.lower_expr(default), pos=pos))
            for kw_arg, default in zip(args.kwonlyargs, args.kw_defaults):
                if default is not None:
                    prelude.append(Assign(target=kw_arg.arg, value=self.lower_expr(default), pos=pos))
            if isinstance(body, list):
                lowered = self.lower_stmts(body, pos)
            else:
                lowered = Return(value=self.lower_expr(body), pos=pos)
            if prelude:
                lowered = Seq(items=tuple(prelude) + (lowered,), pos=pos)
        finally:
            self.scopes.pop()
        return FunctionDef(
            name=name,
            params=tuple(params + kwonly + extras),
            body=lowered,
            is_generator=is_generator,
            pos=pos,
        )

    def _lower_class(self, stmt: ast.ClassDef) -> Node:
        pos = self._pos(stmt)
        bases = []
        for base in stmt.bases:
            if isinstance(base, ast.Starred):
                self.diag(base, "starred base class ignored")
                continue
            bases.append(self.lower_expr(base))
        self.scopes.append(_ScopeInfo("class"))
        try:
            body = self.lower_stmts(stmt.body, pos)
        finally:
            self.scopes.pop()
        cdef = ClassDef(name=stmt.name, bases=tuple(bases), body=body, pos=pos)
        self._bind(stmt.name, "class")
        if not stmt.decorator_list:
            return cdef
        tmp = self._fresh_tmp()
        value: Node = Ident(name=tmp, pos=pos)
        for dec in reversed(stmt.decorator_list):
            value = Call(callee=self.lower_expr(dec), args=(("0", value),), pos=self._pos(dec))
        self._bind(stmt.name, "other")
        return Seq(
            items=(
                Assign(target=tmp, value=cdef, pos=pos),
                Assign(target=stmt.name, value=value, pos=pos),
            ),
            pos=pos,
        )

    # -- assignment targets ------------------------------------------------

    def _lower_assign_target(self, target: ast.expr, value: Node) -> Optional[Node]:
        pos = self._pos(target)
        if isinstance(target, ast.Name):
            self._bind(target.id, "other")
            return Assign(target=target.id, value=value, scope=self._declared_scope(target.id), pos=pos)
        if isinstance(target, ast.Attribute):
            return AttrAssign(obj=self.lower_expr(target.value), attr=target.attr, value=value, pos=pos)
        if isinstance(target, ast.Subscript):
            obj = self.lower_expr(target.value)
            key = self._subscript_key(target.slice)
            if key is None:
                self.diag(target, "slice assignment lowered to wildcard element write")
                key = WILDCARD_KEY
            return AttrAssign(obj=obj, attr=key, value=value, pos=pos)
        if isinstance(target, (ast.Tuple, ast.List)):
            return self._lower_tuple_target(target, value, pos)
        if isinstance(target, ast.Starred):
            self.diag(target, "starred assignment target is not modeled")
            return value
        self.diag(target, f"unsupported assignment target {type(target).__name__}")
        return value

    def _lower_tuple_target(self, target: Union[ast.Tuple, ast.List], value: Node, pos: Pos) -> Node:
        tmp = self._fresh_tmp()
        parts: list[Node] = [Assign(target=tmp, value=value, pos=pos)]
        for i, elt in enumerate(target.elts):
            if isinstance(elt, ast.Starred):
                self.diag(elt, "starred assignment target is not modeled")
                continue
            element = AttrAccess(obj=Ident(name=tmp, pos=pos), attr=INDEX_KEY.format(i), pos=pos)
            bound = self._lower_assign_target(elt, element)
            if bound is not None:
                parts.append(bound)
        return Seq(items=tuple(parts), pos=pos)

    # -- expressions -------------------------------------------------------

    def _subscript_key(self, slice_node: ast.expr) -> Optional[str]:
        """Map a subscript index to an attribute name; None means slice."""
        if isinstance(slice_node, ast.Constant):
            if isinstance(slice_node.value, str):
                return DICT_KEY.format(slice_node.value)
            if isinstance(slice_node.value, int) and not isinstance(slice_node.value, bool):
                return INDEX_KEY.format(slice_node.value)
            return WILDCARD_KEY
        if isinstance(slice_node, (ast.Slice, ast.Tuple)):
            return None
        return WILDCARD_KEY

    def lower_expr(self, expr: ast.expr) -> Node:
        pos = self._pos(expr)
        if isinstance(expr, ast.Constant):
            return Inert(pos=pos)
        if isinstance(expr, ast.Name):
            return Ident(name=expr.id, pos=pos)
        if isinstance(expr, ast.Attribute):
            return AttrAccess(obj=self.lower_expr(expr.value), attr=expr.attr, pos=pos)
        if isinstance(expr, ast.Subscript):
            obj = self.lower_expr(expr.value)
            key = self._subscript_key(expr.slice)
            if key is None:
                # Slicing yields a view of the same container.
                return obj
            return AttrAccess(obj=obj, attr=key, pos=pos)
        if isinstance(expr, ast.Call):
            return self._lower_call(expr)
        if isinstance(expr, ast.Lambda):
            name = self._fresh_lambda()
            fdef = self._make_function(name, expr.args, expr.body, pos, False)
            return FunctionDef(
                name=name, params=fdef.params, body=fdef.body, is_generator=False, pos=pos
            )
        if isinstance(expr, ast.IfExp):
            # Both arms flow into a shared temporary: x if c else y.
            tmp = self._fresh_tmp()
            return Seq(
                items=(
                    self.lower_expr(expr.test),
                    Assign(target=tmp, value=self.lower_expr(expr.body), pos=pos),
                    Assign(target=tmp, value=self.lower_expr(expr.orelse), pos=pos),
                    Ident(name=tmp, pos=pos),
                ),
                pos=pos,
            )
        if isinstance(expr, ast.BoolOp):
            tmp = self._fresh_tmp()
            items = tuple(
                Assign(target=tmp, value=self.lower_expr(v), pos=pos) for v in expr.values
            ) + (Ident(name=tmp, pos=pos),)
            return Seq(items=items, pos=pos)
        if isinstance(expr, ast.BinOp):
            return Seq(
                items=(self.lower_expr(expr.left), self.lower_expr(expr.right), Inert(pos=pos)),
                pos=pos,
            )
        if isinstance(expr, ast.UnaryOp):
            return Seq(items=(self.lower_expr(expr.operand), Inert(pos=pos)), pos=pos)
        if isinstance(expr, ast.Compare):
            items = tuple(self.lower_expr(e) for e in [expr.left] + expr.comparators)
            return Seq(items=items + (Inert(pos=pos),), pos=pos)
        if isinstance(expr, ast.Dict):
            return self._lower_dict(expr, pos)
        if isinstance(expr, (ast.List, ast.Tuple, ast.Set)):
            return self._lower_sequence(expr, pos)
        if isinstance(expr, (ast.ListComp, ast.SetComp, ast.GeneratorExp)):
            return self._lower_comprehension(expr.generators, expr.elt, pos)
        if isinstance(expr, ast.DictComp):
            key_and_value = Seq(items=(self.lower_expr(expr.key), self.lower_expr(expr.value)), pos=pos)
            return self._lower_comprehension(expr.generators, None, pos, element=key_and_value)
        if isinstance(expr, (ast.Yield,)):
            value = self.lower_expr(expr.value) if expr.value is not None else Inert(pos=pos)
            return Return(value=value, pos=pos)
        if isinstance(expr, ast.YieldFrom):
            return Return(value=Iter(value=self.lower_expr(expr.value), pos=pos), pos=pos)
        if isinstance(expr, ast.Await):
            return self.lower_expr(expr.value)
        if isinstance(expr, ast.JoinedStr):
            items = tuple(self.lower_expr(v.value) for v in expr.values if isinstance(v, ast.FormattedValue))
            if not items:
                return Inert(pos=pos)
            return Seq(items=items + (Inert(pos=pos),), pos=pos)
        if isinstance(expr, ast.FormattedValue):
            return Seq(items=(self.lower_expr(expr.value), Inert(pos=pos)), pos=pos)
        if isinstance(expr, ast.NamedExpr):
            if isinstance(expr.target, ast.Name):
                self._bind(expr.target.id, "other")
                return Assign(
                    target=expr.target.id,
                    value=self.lower_expr(expr.value),
                    scope=self._declared_scope(expr.target.id),
                    pos=pos,
                )
            return self.lower_expr(expr.value)
        if isinstance(expr, ast.Starred):
            self.diag(expr, "starred expression is not modeled")
            return self.lower_expr(expr.value)
        self.diag(expr, f"unsupported expression {type(expr).__name__}; treated as inert")
        return Inert(pos=pos)

    def _lower_call(self, expr: ast.Call) -> Node:
        pos = self._pos(expr)
        # next(x) is iteration; lowering it keeps generator forcing observable
        # without modeling built-in functions in general.
        if (
            isinstance(expr.func, ast.Name)
            and expr.func.id == "next"
            and self._binding_of("next") is None
            and len(expr.args) >= 1
            and not expr.keywords
        ):
            return Iter(value=self.lower_expr(expr.args[0]), pos=pos)
        if (
            isinstance(expr.func, ast.Name)
            and expr.func.id == "iter"
            and self._binding_of("iter") is None
            and len(expr.args) == 1
            and not expr.keywords
        ):
            return self.lower_expr(expr.args[0])
        args: list[tuple[str, Node]] = []
        index = 0
        for arg in expr.args:
            if isinstance(arg, ast.Starred):
                self.diag(arg, "starred call argument is not modeled")
                args.append((str(index), self.lower_expr(arg.value)))
            else:
                args.append((str(index), self.lower_expr(arg)))
            index += 1
        for kw in expr.keywords:
            if kw.arg is None:
                self.diag(kw.value, "double-star call argument is not modeled")
                continue
            args.append((kw.arg, self.lower_expr(kw.value)))
        if isinstance(expr.func, ast.Name) and self._binding_of(expr.func.id) == "class":
            return New(class_name=expr.func.id, args=tuple(args), pos=pos)
        return Call(callee=self.lower_expr(expr.func), args=tuple(args), pos=pos)

    def _lower_dict(self, expr: ast.Dict, pos: Pos) -> Node:
        container = self._fresh_container()
        self._bind(container, "other")
        parts: list[Node] = [Assign(target=container, value=Inert(pos=pos), pos=pos)]
        for key, value in zip(expr.keys, expr.values):
            if key is None:
                self.diag(expr, "dict unpacking is not modeled")
                parts.append(self.lower_expr(value))
                continue
            if isinstance(key, ast.Constant) and isinstance(key.value, str):
                attr = DICT_KEY.format(key.value)
            else:
                parts.append(self.lower_expr(key))
                attr = WILDCARD_KEY
            parts.append(
                AttrAssign(obj=Ident(name=container, pos=pos), attr=attr, value=self.lower_expr(value), pos=pos)
            )
        parts.append(Ident(name=container, pos=pos))
        return Seq(items=tuple(parts), pos=pos)

    def _lower_sequence(self, expr: Union[ast.List, ast.Tuple, ast.Set], pos: Pos) -> Node:
        container = self._fresh_container()
        self._bind(container, "other")
        parts: list[Node] = [Assign(target=container, value=Inert(pos=pos), pos=pos)]
        for i, elt in enumerate(expr.elts):
            if isinstance(elt, ast.Starred):
                self.diag(elt, "starred element is not modeled")
                parts.append(self.lower_expr(elt.value))
                continue
            parts.append(
                AttrAssign(
                    obj=Ident(name=container, pos=pos),
                    attr=INDEX_KEY.format(i),
                    value=self.lower_expr(elt),
                    pos=pos,
                )
            )
        parts.append(Ident(name=container, pos=pos))
        return Seq(items=tuple(parts), pos=pos)

    def _lower_comprehension(
        self,
        generators: list[ast.comprehension],
        elt: Optional[ast.expr],
        pos: Pos,
        element: Optional[Node] = None,
    ) -> Node:
        parts: list[Node] = []
        for gen in generators:
            iter_node = Iter(value=self.lower_expr(gen.iter), pos=pos)
            bound = self._lower_assign_target(gen.target, iter_node)
            if bound is not None:
                parts.append(bound)
            for cond in gen.ifs:
                parts.append(self.lower_expr(cond))
        container = self._fresh_container()
        self._bind(container, "other")
        parts.append(Assign(target=container, value=Inert(pos=pos), pos=pos))
        value = element if element is not None else self.lower_expr(elt)  # type: ignore[arg-type]
        parts.append(AttrAssign(obj=Ident(name=container, pos=pos), attr=WILDCARD_KEY, value=value, pos=pos))
        parts.append(Ident(name=container, pos=pos))
        return Seq(items=tuple(parts), pos=pos)


def lower(unit, package=None) -> IRModule:
    """Lower a parsed module into the intermediate representation.

    `unit` is a frontend.ModuleUnit; `package` (optional) is the enclosing
    frontend.PackageIndex, used only to resolve relative imports.
    """
    lowerer = _Lowerer(unit.module_name, package)
    body = lowerer.lower_stmts(unit.syntax_tree.body, (1, 0))
    return IRModule(
        module_name=unit.module_name,
        body=body,
        source=str(unit.file_path),
        diagnostics=lowerer.diagnostics,
    )
