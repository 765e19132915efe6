import json

from hypothesis import given, strategies as st

from callscan.callgraph import (
    CallGraph,
    diff,
    is_reachable,
    parse,
    reachable_functions,
    serialize,
    to_dot,
)
from callscan.ir import Definition, Kind
from callscan.state import AssignmentGraph, QualifiedObject
from conftest import FIXTURES, edge_set


def graph_of(edges, extra_nodes=()):
    g = CallGraph()
    for node in extra_nodes:
        g.add_node(node)
    for a, b in edges:
        g.add_edge(a, b)
    return g


# -- serialization -----------------------------------------------------------


def test_empty_graph_serializes_to_empty_object():
    assert serialize(CallGraph()).strip() == "{}"


def test_serialize_is_canonical_under_insertion_order():
    edges = [("a", "b"), ("a", "c"), ("z", "a")]
    forward = graph_of(edges)
    backward = graph_of(list(reversed(edges)))
    assert serialize(forward) == serialize(backward)


def test_round_trip_structural_equality():
    g = graph_of([("m", "m.f"), ("m.f", "m.g")], extra_nodes=["m.idle"])
    parsed = parse(serialize(g))
    assert parsed.nodes == g.nodes
    assert parsed.edges == g.edges


def test_uncalled_function_keeps_empty_array():
    g = graph_of([("m", "m.f")], extra_nodes=["m.lonely"])
    payload = json.loads(serialize(g))
    assert payload["m.lonely"] == []


def test_parse_rejects_non_object():
    try:
        parse("[]")
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")


def test_frozen_crypto_golden_matches(analyze_files):
    files = {
        "crypto.py": (FIXTURES / "crypto" / "crypto.py").read_text(),
        "cryptops.py": (FIXTURES / "crypto" / "cryptops.py").read_text(),
    }
    result = analyze_files(files, entry="crypto.py")
    golden = (FIXTURES / "crypto" / "expected_callgraph.json").read_text()
    assert serialize(result.graph) == golden


# -- diff --------------------------------------------------------------------


def test_diff_extra_edge():
    d = diff(graph_of([("a", "b"), ("a", "c")]), graph_of([("a", "b")]))
    assert d.precision == 0.5 and d.recall == 1.0
    assert not d.complete and d.sound


def test_diff_identity():
    g = graph_of([("a", "b"), ("b", "c")])
    d = diff(g, g)
    assert d.precision == 1.0 and d.recall == 1.0
    assert d.complete and d.sound


def test_diff_missing_edge():
    d = diff(graph_of([("a", "b")]), graph_of([("a", "b"), ("a", "c")]))
    assert d.precision == 1.0 and d.recall == 0.5


def test_diff_empty_generated_has_full_precision():
    d = diff(CallGraph(), graph_of([("a", "b")]))
    assert d.precision == 1.0 and d.recall == 0.0


_edge_lists = st.lists(
    st.tuples(st.sampled_from("abcdef"), st.sampled_from("abcdef")), max_size=10
)


@given(_edge_lists, _edge_lists)
def test_diff_swap_symmetry(e1, e2):
    a, b = graph_of(e1), graph_of(e2)
    assert diff(a, b).false_positives == diff(b, a).false_negatives


# -- reachable functions vs matrix closure oracle ----------------------------


def _objects(n):
    root = Definition("m", Kind.MOD)
    return [
        QualifiedObject((root,), Definition(f"o{i}", Kind.FUNC if i % 2 else Kind.VAR))
        for i in range(n)
    ]


@given(
    n=st.integers(min_value=1, max_value=12),
    edges=st.lists(st.tuples(st.integers(0, 11), st.integers(0, 11)), max_size=30),
    source=st.integers(0, 11),
)
def test_reachable_functions_matches_matrix_closure(n, edges, source):
    objs = _objects(n)
    edges = [(a % n, b % n) for a, b in edges]
    source %= n
    graph = AssignmentGraph()
    for a, b in edges:
        graph.add_edge(objs[a], objs[b])

    # brute-force boolean matrix closure
    reach = [[False] * n for _ in range(n)]
    for a, b in edges:
        reach[a][b] = True
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if reach[i][k] and reach[k][j]:
                    reach[i][j] = True
    expected = {objs[j] for j in range(n) if reach[source][j] and objs[j].kind is Kind.FUNC}
    if objs[source].kind is Kind.FUNC:
        expected.add(objs[source])

    assert reachable_functions(graph, objs[source]) == expected


def test_reachable_functions_cycle_terminates():
    a, b = _objects(2)
    graph = AssignmentGraph()
    graph.add_edge(a, b)
    graph.add_edge(b, a)
    assert reachable_functions(graph, a) == {b}


# -- queries -----------------------------------------------------------------


def test_is_reachable_with_witnesses():
    g = graph_of([("crypto.Crypto.apply", "cryptops.encrypt")])
    ok, witnesses = is_reachable(g, "cryptops.encrypt")
    assert ok and witnesses == {"crypto.Crypto.apply"}
    missing, none = is_reachable(g, "cryptops.sign")
    assert not missing and none == set()


def test_imported_but_never_called_is_unreachable(analyze_files):
    result = analyze_files({"main.py": "import lib\n", "lib.py": "def f():\n    return 1\n"})
    ok, witnesses = is_reachable(result.graph, "lib.f")
    assert not ok and not witnesses


def test_direct_call_of_returned_function(analyze_files):
    result = analyze_files(
        {
            "main.py": (
                "def g():\n    return 1\n\n"
                "def f():\n    return g\n\n"
                "f()()\n"
            )
        }
    )
    assert edge_set(result) == {("main", "main.f"), ("main", "main.g")}


def test_to_dot_projection():
    g = graph_of([("m", "m.f")])
    dot = to_dot(g)
    assert dot.startswith("digraph")
    assert '"m" -> "m.f";' in dot
    assert '"m.f";' in dot
