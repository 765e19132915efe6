"""Dynamic call tracer used to validate expected call graphs.

Runs a single-execution-path program under `sys.settrace` and records every
call whose callee is a function defined inside the traced package, naming
frames with the same dotted convention the static analyzer uses.  Runs as a
subprocess (`python -m callscan.tracer entry root`) so tracing never touches
the host interpreter.

Known exclusions (frames the static names cannot be matched against):
lambdas and comprehension bodies, which execute under synthesized
interpreter names.
"""

from __future__ import annotations

import ast
import json
import subprocess
import sys
from pathlib import Path

__all__ = ["trace_package", "collect_edges"]

_SYNTHESIZED = {"<lambda>", "<listcomp>", "<setcomp>", "<dictcomp>", "<genexpr>", "<module>"}

# co_flags bit distinguishing real function bodies from module and
# class-body frames
_CO_OPTIMIZED = 0x0001


def _module_name_for(path: Path, root: Path) -> str:
    rel = path.resolve().relative_to(root.resolve())
    parts = list(rel.parts)
    if parts[-1] == "__init__.py":
        parts = parts[:-1]
    else:
        parts[-1] = parts[-1][: -len(".py")]
    return ".".join(parts) if parts else root.resolve().name


def _qualname_map(path: Path, root: Path) -> dict[tuple[str, int], str]:
    """(co_name, co_firstlineno) -> dotted static name, for one file.

    A decorated function's code object starts at its first decorator line,
    so both that line and the `def` line are registered.
    """
    module = _module_name_for(path, root)
    table: dict[tuple[str, int], str] = {}

    def visit(node: ast.AST, prefix: str) -> None:
        for child in ast.iter_child_nodes(node):
            if isinstance(child, (ast.FunctionDef, ast.AsyncFunctionDef)):
                qual = f"{prefix}.{child.name}"
                table[(child.name, child.lineno)] = qual
                if child.decorator_list:
                    table[(child.name, child.decorator_list[0].lineno)] = qual
                visit(child, qual)
            elif isinstance(child, ast.ClassDef):
                visit(child, f"{prefix}.{child.name}")
            else:
                visit(child, prefix)

    visit(ast.parse(path.read_text(encoding="utf-8")), module)
    return table


def collect_edges(entry: Path, root: Path) -> set[tuple[str, str]]:
    """Execute entry in-process under tracing; caller must tolerate the
    program's side effects.  Prefer trace_package from host code."""
    entry = Path(entry).resolve()
    root = Path(root).resolve()
    names: dict[str, dict[tuple[str, int], str]] = {}
    module_names: dict[str, str] = {}
    for path in sorted(root.rglob("*.py")):
        names[str(path.resolve())] = _qualname_map(path, root)
        module_names[str(path.resolve())] = _module_name_for(path, root)

    def frame_name(frame) -> str | None:
        filename = frame.f_code.co_filename
        if filename not in names:
            return None
        if frame.f_code.co_flags & _CO_OPTIMIZED:
            if frame.f_code.co_name in _SYNTHESIZED:
                return "<synthesized>"
            return names[filename].get((frame.f_code.co_name, frame.f_code.co_firstlineno))
        if frame.f_code.co_name == "<module>":
            return module_names[filename]
        return "<classbody>"

    edges: set[tuple[str, str]] = set()

    def tracer(frame, event, arg):
        if event != "call":
            return None
        callee = frame_name(frame)
        if callee is None or callee.startswith("<") or frame.f_code.co_name == "<module>":
            return None
        caller_frame = frame.f_back
        caller = None
        while caller_frame is not None:
            caller = frame_name(caller_frame)
            if caller == "<classbody>":
                # class-body calls belong to the enclosing function or module
                caller_frame = caller_frame.f_back
                continue
            break
        if caller is None or caller == "<synthesized>":
            return None
        edges.add((caller, callee))
        return None

    source = entry.read_text(encoding="utf-8")
    code = compile(source, str(entry), "exec")
    module_globals = {
        "__name__": module_names[str(entry)],
        "__file__": str(entry),
        "__builtins__": __builtins__,
    }
    sys.path.insert(0, str(root))
    sys.settrace(tracer)
    try:
        exec(code, module_globals)
    finally:
        sys.settrace(None)
        sys.path.remove(str(root))
    return edges


def trace_package(entry: Path | str, root: Path | str, timeout: float = 30.0) -> set[tuple[str, str]]:
    """Trace in a subprocess and return the recorded (caller, callee) set."""
    proc = subprocess.run(
        [sys.executable, "-m", "callscan.tracer", str(entry), str(root)],
        capture_output=True,
        timeout=timeout,
    )
    if proc.returncode != 0:
        raise RuntimeError(
            f"tracing {entry} failed: " + proc.stderr.decode(errors="replace").strip()
        )
    return {tuple(edge) for edge in json.loads(proc.stdout.decode())}


def main(argv: list[str] | None = None) -> int:
    args = sys.argv[1:] if argv is None else argv
    if len(args) != 2:
        print("usage: python -m callscan.tracer ENTRY PACKAGE_ROOT", file=sys.stderr)
        return 1
    # the traced program may print; keep our JSON channel clean
    real_stdout = sys.stdout
    sys.stdout = sys.stderr
    try:
        edges = collect_edges(Path(args[0]), Path(args[1]))
    finally:
        sys.stdout = real_stdout
    print(json.dumps(sorted(map(list, edges))))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
