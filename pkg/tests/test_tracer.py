from pathlib import Path

from callscan.tracer import _qualname_map, trace_package
from conftest import FIXTURES


def test_trace_crypto_fixture(make_package):
    root = make_package(
        {
            "crypto.py": (FIXTURES / "crypto" / "crypto.py").read_text(),
            "cryptops.py": (FIXTURES / "crypto" / "cryptops.py").read_text(),
        }
    )
    edges = trace_package(root / "crypto.py", root)
    assert edges == {
        ("crypto", "crypto.Crypto.__init__"),
        ("crypto", "crypto.Crypto.apply"),
        ("crypto.Crypto.apply", "cryptops.encrypt"),
        ("crypto.Crypto.apply", "cryptops.decrypt"),
    }


def test_trace_attributes_class_body_calls_to_module(make_package):
    root = make_package(
        {
            "main.py": (
                "def default():\n    return 1\n\n"
                "class Holder:\n"
                "    start = default()\n"
            )
        }
    )
    assert trace_package(root / "main.py", root) == {("main", "main.default")}


def test_trace_skips_lambda_frames(make_package):
    root = make_package(
        {
            "main.py": (
                "def base():\n    return 1\n\n"
                "run = lambda: base()\n"
                "run()\n"
            )
        }
    )
    # the lambda callee and its internal caller frame are both excluded
    assert trace_package(root / "main.py", root) == set()


def test_trace_generator_edge_at_iteration(make_package):
    root = make_package(
        {
            "main.py": (
                "def gen():\n    yield 1\n\n"
                "g = gen()\n"
                "v = next(g)\n"
            )
        }
    )
    assert trace_package(root / "main.py", root) == {("main", "main.gen")}


def test_qualname_map_registers_decorator_lines(tmp_path):
    path = tmp_path / "mod.py"
    path.write_text(
        "def deco(f):\n    return f\n\n\n@deco\ndef target():\n    return 1\n",
        encoding="utf-8",
    )
    table = _qualname_map(path, tmp_path)
    # both the decorator line and the def line name the same function
    assert table[("target", 5)] == "mod.target"
    assert table[("target", 6)] == "mod.target"


def test_qualname_map_nested_and_methods(tmp_path):
    path = tmp_path / "mod.py"
    path.write_text(
        "class C:\n"
        "    def m(self):\n"
        "        def inner():\n"
        "            return 1\n"
        "        return inner\n",
        encoding="utf-8",
    )
    table = _qualname_map(path, tmp_path)
    assert table[("m", 2)] == "mod.C.m"
    assert table[("inner", 3)] == "mod.C.m.inner"
