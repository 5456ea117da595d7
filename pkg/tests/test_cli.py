import subprocess
import sys

import pytest

from biembed.cli import run
from biembed.formats import (
    read_graph_code,
    read_lipschitz,
    read_metric,
    read_monoid_elem,
    read_morphism,
    read_permutation,
    read_structure,
    read_tree,
    write_graph_code,
    write_monoid_elem,
    write_structure,
    write_tree,
)
from biembed.gadgets import build_gprime
from biembed.monoid import GraphCode, identity, make_elem
from biembed.structures import FinInjection, FinStructure
from biembed.trees import LipschitzMap, NormalTree, TruncationParams

E = ()
P = TruncationParams(1, 2, 1)


@pytest.fixture
def files(tmp_path):
    def put(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    put.dir = tmp_path
    return put


def test_leqmax_on_equal_trees_emits_identity(files, capsys):
    T = NormalTree({(E, E), ((0,), (1,))})
    s = files("S.tree", write_tree(T, P))
    t = files("T.tree", write_tree(T, P))
    assert run(["check", "leqmax", "--in", s, "--in2", t, "--mode", "lex"]) == 0
    assert read_lipschitz(capsys.readouterr().out) == LipschitzMap.identity(P)


def test_leqmax_absent_exits_one(files):
    s = files("S.tree", write_tree(NormalTree({(E, E), ((1,), (0,)), ((1,), (1,))}), P))
    t = files("T.tree", write_tree(NormalTree({(E, E)}), P))
    assert run(["check", "leqmax", "--in", s, "--in2", t]) == 1


def test_witness_check(files):
    S = NormalTree({(E, E), ((0,), (0,)), ((0,), (1,))})
    T = NormalTree({(E, E), ((0,), (1,))})
    s, t = files("S.tree", write_tree(S, P)), files("T.tree", write_tree(T, P))
    good = files("f.lip", "!lipschitz\n[] -> []\n[0] -> [1]\n[1] -> [1]\n")
    bad = files("g.lip", "!lipschitz\n[] -> []\n[0] -> [0]\n[1] -> [1]\n")
    assert run(["check", "witness", "--in", s, "--in2", t, "--map", good]) == 0
    assert run(["check", "witness", "--in", s, "--in2", t, "--map", bad]) == 1
    assert run(["check", "witness", "--in", s, "--in2", t, "--map", good, "--mode", "lex"]) == 1


def test_suite_separation_example(capsys):
    code = run(["suite", "separation", "--depth", "2", "--branch", "2", "--tail", "1", "--seed", "7"])
    out = capsys.readouterr().out
    assert code == 0
    assert "separation" in out and "PASS" in out


def test_build_and_export_dot(files, capsys):
    empty = files("empty.tree", write_tree(NormalTree()))
    g = str(files.dir / "g.struct")
    assert run(["build", "gprime", "--in", empty, "--depth", "0", "--tail", "1", "--out", g]) == 0
    G = read_structure(open(g).read())
    assert G == build_gprime(NormalTree(), TruncationParams(0, 1, 1))
    # empty, its + and ++, and 3 rays of 2 vertices each
    assert len(G) == 3 + 3 * 2
    assert run(["export", "dot", "--in", g]) == 0
    dot = capsys.readouterr().out
    assert dot.count(" -- ") == G.edge_count()
    assert dot.count("label=") == len(G)


@pytest.mark.parametrize("what", ["g0", "gt", "ordered-gt", "strict-gt", "gprime", "coded-gprime"])
def test_every_tree_build(files, what, capsys):
    t = files("T.tree", write_tree(NormalTree({(E, E)}), P))
    assert run(["build", what, "--in", t]) == 0
    G = read_structure(capsys.readouterr().out)
    assert G.is_tree()


@pytest.mark.parametrize("what", ["fs-tree", "gx"])
def test_graph_builds(files, what, capsys):
    x = files("x.struct", write_structure(FinStructure(range(2), [(0, 1)])))
    assert run(["build", what, "--in", x, "--depth", "2"]) == 0
    G = read_structure(capsys.readouterr().out)
    assert len(G) == 1 + 2 + 4 + 2


def test_check_morphism_kinds(files, capsys):
    a = files("a.struct", write_structure(FinStructure(range(2), [(0, 1)])))
    b = files("b.struct", write_structure(FinStructure(range(3), [(0, 1), (1, 2)])))
    assert run(["check", "embed", "--in", a, "--in2", b, "--limit", "10"]) == 0
    text = capsys.readouterr().out
    assert text.count("!morphism embedding") == 4
    assert run(["check", "iso", "--in", a, "--in2", b]) == 1
    assert run(["check", "homo", "--in", b, "--in2", a]) == 0
    assert read_morphism(capsys.readouterr().out).kind == "homomorphism"
    assert run(["check", "weak-homo", "--in", b, "--in2", a]) == 0


def test_metric_commands(files, capsys):
    t = files("T.tree", write_tree(NormalTree({(E, E)}), P))
    assert run(["metric", "ultra", "--in", t]) == 0
    u = files("u.metric", capsys.readouterr().out)
    assert run(["metric", "verify-ultra", "--in", u]) == 0
    assert run(["metric", "isoembed", "--in", u, "--in2", u]) == 0
    mapping = capsys.readouterr().out.splitlines()
    assert all(line.split(" -> ")[0] == line.split(" -> ")[1] for line in mapping)
    path = files("p.struct", write_structure(FinStructure(range(3), [(0, 1), (1, 2)])))
    assert run(["metric", "geodesic", "--in", path]) == 0
    g = files("g.metric", capsys.readouterr().out)
    assert read_metric(open(g).read()).dist[0][2] == 2
    assert run(["metric", "verify-ultra", "--in", g]) == 1


def test_monoid_commands(files, capsys):
    g = make_elem(FinInjection((1, 2), 3), [(0, 1)])
    x = GraphCode(2, frozenset({(0, 1)}))
    ge = files("g.melem", write_monoid_elem(g))
    xe = files("x.gcode", write_graph_code(x))
    assert run(["monoid", "act", "--in", ge, "--in2", xe]) == 0
    assert read_graph_code(capsys.readouterr().out).edges == {(0, 1), (1, 2)}
    e = files("e.melem", write_monoid_elem(identity(3)))
    assert run(["monoid", "compose", "--in", e, "--in2", ge]) == 0
    assert read_monoid_elem(capsys.readouterr().out) == g
    assert run(["monoid", "compose", "--in", ge, "--in2", ge]) == 2
    assert run(["monoid", "axioms", "--size", "2"]) == 0
    assert "0 violations" in capsys.readouterr().out


def test_gen_is_deterministic_and_round_trips(files, capsys):
    outputs = []
    for _ in range(2):
        assert run(["gen", "tree", "--depth", "2", "--branch", "3", "--seed", "5"]) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]
    T, p = read_tree(outputs[0])
    assert p == TruncationParams(2, 3, 1)
    assert run(["gen", "tree", "--depth", "2", "--branch", "3", "--seed", "6"]) == 0
    assert capsys.readouterr().out != outputs[0]
    assert run(["gen", "perm", "--size", "5", "--seed", "1"]) == 0
    assert len(read_permutation(capsys.readouterr().out).domain) == 5
    assert run(["gen", "graph", "--size", "4", "--seed", "1"]) == 0
    assert len(read_structure(capsys.readouterr().out)) == 4
    assert run(["gen", "qotree", "--depth", "1", "--branch", "2"]) == 0


def test_error_exit_codes(files):
    assert run(["build", "gt", "--in", str(files.dir / "missing.tree")]) == 2
    assert run(["build", "gt"]) == 2
    assert run(["nonsense"]) == 2
    bad = files("bad.tree", "0|0\n")
    assert run(["build", "gt", "--in", bad, "--depth", "1"]) == 2
    wide = files("wide.tree", write_tree(NormalTree({(E, E), ((0,), (5,))})))
    assert run(["build", "gt", "--in", wide, "--depth", "1", "--branch", "2"]) == 2
    nobounds = files("nb.tree", "-|-\n")
    assert run(["build", "gt", "--in", nobounds]) == 2
    garbage = files("g.struct", "hello\n")
    assert run(["export", "dot", "--in", garbage]) == 2


def test_module_entry_point(files):
    t = files("T.tree", write_tree(NormalTree({(E, E)}), P))
    done = subprocess.run(
        [sys.executable, "-m", "biembed", "build", "gt", "--in", t], capture_output=True, text=True
    )
    assert done.returncode == 0
    assert len(read_structure(done.stdout)) == 12
