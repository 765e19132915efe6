"""Deterministic synthetic-package generator for performance measurement.

The same seed always produces byte-identical sources: roughly 3.5k lines
spread over a dozen modules with cross-module imports, classes, methods,
and plain calls — shaped like unremarkable application code rather than an
analysis stress test.
"""

from __future__ import annotations

import random
from pathlib import Path

__all__ = ["generate_package"]

_VERBS = ("load", "build", "merge", "scan", "emit", "pack", "route", "score")
_NOUNS = ("record", "batch", "frame", "token", "index", "chunk", "entry", "field")


def _function(rng: random.Random, name: str, callables: list[str]) -> list[str]:
    lines = [f"def {name}(value, extra=None):"]
    body_len = rng.randint(3, 7)
    for i in range(body_len):
        if callables and rng.random() < 0.6:
            target = rng.choice(callables)
            lines.append(f"    value = {target}(value)")
        else:
            lines.append(f"    value = value + {rng.randint(1, 9)}")
    lines.append("    return value")
    lines.append("")
    lines.append("")
    return lines


def _klass(rng: random.Random, name: str, callables: list[str]) -> list[str]:
    lines = [f"class {name}:", "    def __init__(self, seed):", "        self.seed = seed"]
    if callables and rng.random() < 0.7:
        lines.append(f"        self.start = {rng.choice(callables)}(seed)")
    lines.append("")
    for i in range(rng.randint(2, 4)):
        method = f"{rng.choice(_VERBS)}_{i}"
        lines.append(f"    def {method}(self, value):")
        if callables and rng.random() < 0.6:
            lines.append(f"        return {rng.choice(callables)}(value)")
        else:
            lines.append("        return value + self.seed")
        lines.append("")
    lines.append("")
    return lines


def generate_package(dest: Path | str, seed: int = 0, modules: int = 16) -> Path:
    """Write the package under dest and return the entrypoint path."""
    rng = random.Random(seed)
    root = Path(dest)
    root.mkdir(parents=True, exist_ok=True)

    module_names: list[str] = []
    exported: dict[str, list[str]] = {}
    for m in range(modules):
        name = f"mod_{m:02d}"
        lines: list[str] = [f'"""Synthetic module {name}."""', ""]
        imports = rng.sample(module_names, min(len(module_names), rng.randint(0, 3)))
        callables: list[str] = []
        for imported in sorted(imports):
            lines.append(f"import {imported}")
            callables.extend(f"{imported}.{f}" for f in exported[imported][:4])
        if imports:
            lines.append("")
            lines.append("")
        local: list[str] = []
        for i in range(rng.randint(20, 24)):
            fname = f"{rng.choice(_VERBS)}_{rng.choice(_NOUNS)}_{i}"
            lines.extend(_function(rng, fname, callables + local))
            local.append(fname)
        class_name = f"{rng.choice(_NOUNS).capitalize()}Manager"
        lines.extend(_klass(rng, class_name, local))
        exported[name] = local
        module_names.append(name)
        (root / f"{name}.py").write_text("\n".join(lines).rstrip() + "\n", encoding="utf-8")

    main_lines = ['"""Synthetic entrypoint."""', ""]
    for name in module_names:
        main_lines.append(f"import {name}")
    main_lines.append("")
    main_lines.append("")
    main_lines.append("def main():")
    main_lines.append("    value = 1")
    for name in module_names:
        for fname in exported[name][: rng.randint(2, 4)]:
            main_lines.append(f"    value = {name}.{fname}(value)")
    main_lines.append("    return value")
    main_lines.append("")
    main_lines.append("")
    main_lines.append("result = main()")
    entry = root / "main.py"
    entry.write_text("\n".join(main_lines) + "\n", encoding="utf-8")
    return entry
