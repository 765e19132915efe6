"""Parsing and in-package import resolution.

Starting from one or more entrypoint files, the frontend transitively
discovers every module whose source lives under the package root.  Imports
that point outside the root (third-party or standard library) are recorded
as unresolved and never parsed.  No module code is ever executed.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass, field
from pathlib import Path

__all__ = ["ModuleUnit", "PackageIndex", "parse_module", "resolve_imports"]


@dataclass
class ModuleUnit:
    module_name: str
    file_path: Path
    syntax_tree: ast.Module = field(compare=False, repr=False)
    is_entrypoint: bool = False


@dataclass
class PackageIndex:
    package_root: Path
    modules: dict[str, ModuleUnit] = field(default_factory=dict)
    unresolved_imports: list[tuple[str, str]] = field(default_factory=list)


def parse_module(path: Path | str, module_name: str | None = None, is_entrypoint: bool = False) -> ModuleUnit:
    """Parse one source file.  Raises OSError if unreadable, SyntaxError if
    the file is not valid Python 3, UnicodeDecodeError if not UTF-8."""
    path = Path(path)
    source = path.read_text(encoding="utf-8")
    tree = ast.parse(source, filename=str(path))
    if module_name is None:
        module_name = path.stem if path.name != "__init__.py" else path.parent.name
    return ModuleUnit(
        module_name=module_name,
        file_path=path,
        syntax_tree=tree,
        is_entrypoint=is_entrypoint,
    )


def _module_name_for(path: Path, root: Path) -> str:
    rel = path.resolve().relative_to(root.resolve())
    parts = list(rel.parts)
    if parts[-1] == "__init__.py":
        parts = parts[:-1]
    else:
        parts[-1] = parts[-1][: -len(".py")]
    if not parts:
        # package_root/__init__.py: name the module after the directory
        return root.resolve().name
    return ".".join(parts)


def _locate(root: Path, dotted: str) -> Path | None:
    """Map a dotted module name to a source file under root, or None.

    Returns the file for a regular module or the __init__.py of a package.
    A namespace package (directory without __init__.py) yields None even
    though its submodules may resolve.
    """
    base = root.joinpath(*dotted.split("."))
    candidate = base.with_suffix(".py")
    if candidate.is_file():
        return candidate
    init = base / "__init__.py"
    if init.is_file():
        return init
    return None


def _is_package_dir(root: Path, dotted: str) -> bool:
    return root.joinpath(*dotted.split(".")).is_dir()


def _collect_imports(unit: ModuleUnit) -> list[tuple[str, list[str]]]:
    """All import targets of a module as (dotted module, from-names) pairs."""
    out: list[tuple[str, list[str]]] = []
    for node in ast.walk(unit.syntax_tree):
        if isinstance(node, ast.Import):
            for alias in node.names:
                out.append((alias.name, []))
        elif isinstance(node, ast.ImportFrom):
            module = node.module or ""
            if node.level:
                parts = unit.module_name.split(".")
                base = parts if unit.file_path.name == "__init__.py" else parts[:-1]
                up = node.level - 1
                if up:
                    base = base[: len(base) - up] if up <= len(base) else []
                prefix = ".".join(base)
                if module and prefix:
                    module = f"{prefix}.{module}"
                else:
                    module = module or prefix
            if module:
                out.append((module, [a.name for a in node.names if a.name != "*"]))
    return out


def resolve_imports(entrypoints: list[Path | str], package_root: Path | str) -> PackageIndex:
    """Transitively discover every in-package module reachable from the
    entrypoints.  Each file is parsed exactly once; import cycles terminate."""
    root = Path(package_root)
    index = PackageIndex(package_root=root)
    unresolved_seen: set[tuple[str, str]] = set()
    worklist: list[tuple[str, Path, bool]] = []

    for entry in entrypoints:
        path = Path(entry)
        name = _module_name_for(path, root)
        worklist.append((name, path, True))

    while worklist:
        name, path, is_entry = worklist.pop(0)
        if name in index.modules:
            continue
        unit = parse_module(path, module_name=name, is_entrypoint=is_entry)
        index.modules[name] = unit
        for dotted, from_names in _collect_imports(unit):
            for target_name, target_path in _resolve_target(root, dotted, from_names):
                if target_name not in index.modules:
                    worklist.append((target_name, target_path, False))
            # A dotted import whose final component is neither a module file
            # nor an (optionally namespace) package dir is unresolved, even
            # when a prefix of it was indexed.
            full = _locate(root, dotted) is not None or _is_package_dir(root, dotted)
            if not full:
                key = (name, dotted)
                if key not in unresolved_seen:
                    unresolved_seen.add(key)
                    index.unresolved_imports.append(key)
    return index


def _resolve_target(root: Path, dotted: str, from_names: list[str]) -> list[tuple[str, Path]]:
    """Resolve a dotted import and its prefixes to in-package files.

    For `import a.b.c` every package prefix with an __init__.py is indexed
    along with the final module.  For `from m import x`, `m.x` is also tried
    as a submodule.  A partially-resolving dotted path indexes the resolved
    prefix only.
    """
    found: list[tuple[str, Path]] = []
    parts = dotted.split(".")
    for i in range(1, len(parts) + 1):
        prefix = ".".join(parts[:i])
        path = _locate(root, prefix)
        if path is not None:
            found.append((prefix, path))
        elif not _is_package_dir(root, prefix):
            return found
    for from_name in from_names:
        sub = f"{dotted}.{from_name}"
        path = _locate(root, sub)
        if path is not None:
            found.append((sub, path))
    return found
