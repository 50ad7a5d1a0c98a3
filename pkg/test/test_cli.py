"""
Tests for the command-line front end: output documents and exit codes.
"""

import io
import json

import pytest

import main
import multigraph as mg


def write_graph(tmp_path, g, name="g.json"):
    path = tmp_path / name
    path.write_text(json.dumps(mg.graph_to_json(g)))
    return str(path)


def run(capsys, argv):
    code = main.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_elasticity_command(tmp_path, capsys):
    code, out, _ = run(capsys, ["elasticity", "--graph", write_graph(tmp_path, mg.cycle_graph(4))])
    assert code == 0
    doc = json.loads(out)
    assert doc["lower"] == "7/4" and doc["upper"] == "7/4" and doc["exact"] is True


def test_check_command(tmp_path, capsys):
    code, out, _ = run(capsys, ["check", "--graph", write_graph(tmp_path, mg.path_graph(3))])
    assert code == 0
    assert json.loads(out) == {"half_factorial": True, "factorial": False, "witness": None, "lengths": []}


def test_davenport_and_rank(tmp_path, capsys):
    path = write_graph(tmp_path, mg.cycle_graph(3))
    assert json.loads(run(capsys, ["davenport", "--graph", path])[1]) == {"davenport": 4}
    assert json.loads(run(capsys, ["classgroup-rank", "--graph", path])[1]) == {"rank": 3, "smith_rank": 3}


def test_rho_k_command(tmp_path, capsys):
    code, out, _ = run(capsys, ["rho-k", "--k", "3", "--graph", write_graph(tmp_path, mg.banana_graph(3))])
    assert code == 0
    assert json.loads(out) == {"k": 3, "exact": True, "value": 5, "tree_packing": 3}


def test_lengths_and_catenary(tmp_path, capsys):
    g = mg.complete_bipartite_graph(2, 2)
    graph = write_graph(tmp_path, g)
    element = tmp_path / "a.json"
    weights = {"v1": 1, "v2": 1, "w1": 2, "w2": 2}
    weights.update({e: 1 for e in g.edges})
    element.write_text(json.dumps(weights))
    doc = json.loads(run(capsys, ["lengths", "--graph", graph, "--element", str(element)])[1])
    assert doc == {"lengths": [2, 3], "delta": [1], "elasticity": "3/2"}
    doc = json.loads(run(capsys, ["catenary", "--graph", graph, "--element", str(element)])[1])
    assert doc == {"catenary": 3, "complete": True, "factorizations": 2}



def test_lengths_of_heavy_element(tmp_path, capsys):
    graph = write_graph(tmp_path, mg.cycle_graph(3))
    element = tmp_path / "heavy.json"
    element.write_text(json.dumps({"v1": 2000, "v2": 2000, "v3": 2000}))
    code, out, _ = run(capsys, ["lengths", "--graph", graph, "--element", str(element)])
    assert code == 0
    assert json.loads(out) == {"lengths": [6000], "delta": [], "elasticity": "1/1"}


def test_resource_failures_become_errors(tmp_path, capsys, monkeypatch):
    def exhausted(*args, **kwargs):
        raise RecursionError("maximum recursion depth exceeded")

    monkeypatch.setattr(main.fz, "length_set", exhausted)
    element = tmp_path / "a.json"
    element.write_text("{}")
    code, out, err = run(capsys, ["lengths", "--graph", write_graph(tmp_path, mg.path_graph(2)),
                                  "--element", str(element)])
    assert code == 1 and out == "" and err.startswith("error: resource limit")

def test_atoms_command_reads_text_format(tmp_path, capsys):
    path = tmp_path / "g.txt"
    path.write_text("v a\nv b\ne x a b\n")
    doc = json.loads(run(capsys, ["atoms", "--graph", str(path)])[1])
    assert doc["count"] == 3
    assert doc["atoms"] == [{"a": 1}, {"a": 1, "b": 1, "x": 1}, {"b": 1}]


def test_hilbert_basis_and_dedup(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text('{"rows": [[1, 1, -1]]}')
    doc = json.loads(run(capsys, ["hilbert-basis", "--matrix", str(path)])[1])
    assert doc["basis"] == [[1, 0, 1], [0, 1, 1]] and doc["complete"] is True
    doc = json.loads(run(capsys, ["dedup", "--matrix", str(path)])[1])
    assert doc["groups"] == [[0, 1], [2]] and doc["target"] == {"rows": [[1, -1]]}


def test_ring_pipeline_through_stdin(capsys, monkeypatch):
    code, out, _ = run(capsys, ["ring", "family", "--name", "ngon", "--m", "4"])
    assert code == 0
    monkeypatch.setattr("sys.stdin", io.StringIO(out))
    code, graph_out, _ = run(capsys, ["ring", "graph"])
    assert code == 0
    assert json.loads(graph_out)["vertices"] == ["p1", "p2", "p3", "p4"]
    monkeypatch.setattr("sys.stdin", io.StringIO(out))
    assert json.loads(run(capsys, ["ring", "krsa"])[1]) == {"krsa": False}


def test_ring_validate_reports_rule(tmp_path, capsys):
    path = tmp_path / "r.json"
    path.write_text(json.dumps({"minimal_primes": ["p", "q"],
                                "singular_maximal_ideals": [{"id": "m", "primes": ["p", "q"], "indecomposables": 2}]}))
    code, _, err = run(capsys, ["ring", "validate", "--spec", str(path)])
    assert code == 1
    assert "two-prime-indecomposables" in err


def test_export_dot(tmp_path, capsys):
    code, out, _ = run(capsys, ["export-dot", "--graph", write_graph(tmp_path, mg.path_graph(2))])
    assert code == 0
    assert out.startswith("graph")
    code, out, _ = run(capsys, ["--format", "dot", "ring", "graph", "--spec", _family_file(tmp_path)])
    assert code == 0 and out.startswith("graph")


def _family_file(tmp_path):
    import bassring
    path = tmp_path / "domain.json"
    path.write_text(json.dumps(bassring.spec_to_json(bassring.family("domain"))))
    return str(path)


def test_text_format(tmp_path, capsys):
    code, out, _ = run(capsys, ["--format", "text", "davenport", "--graph", write_graph(tmp_path, mg.cycle_graph(3))])
    assert code == 0 and "davenport" in out and "4" in out


def test_usage_errors(tmp_path, capsys):
    assert run(capsys, ["elasticity"])[0] == 2
    assert run(capsys, ["no-such-command"])[0] == 2
    code, _, err = run(capsys, ["--format", "dot", "atoms", "--graph", write_graph(tmp_path, mg.path_graph(2))])
    assert code == 2 and "dot" in err
    code, _, err = run(capsys, ["lengths", "--graph", write_graph(tmp_path, mg.path_graph(2))])
    assert code == 2 and "--element" in err


def test_domain_and_input_errors(tmp_path, capsys):
    path = tmp_path / "loop.json"
    path.write_text('{"vertices": ["a"], "edges": [{"id": "e", "ends": ["a", "a"]}]}')
    code, out, err = run(capsys, ["atoms", "--graph", str(path)])
    assert code == 1 and out == "" and "loop" in err
    code, _, err = run(capsys, ["atoms", "--graph", str(tmp_path / "missing.json")])
    assert code == 1 and err.startswith("error:")


def test_output_is_deterministic(tmp_path, capsys):
    path = write_graph(tmp_path, mg.complete_graph(4))
    first = run(capsys, ["elasticity", "--graph", path])[1]
    second = run(capsys, ["elasticity", "--graph", path])[1]
    assert first == second


@pytest.mark.parametrize("argv", [["ring", "matrix-b"], ["ring", "matrix-c"]])
def test_ring_matrices(tmp_path, capsys, argv):
    code, out, _ = run(capsys, argv + ["--spec", _family_file(tmp_path)])
    assert code == 0
    assert "rows" in json.loads(out)
