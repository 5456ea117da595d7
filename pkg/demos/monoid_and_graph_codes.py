# Graph codes, the copy-or-overwrite monoid, and sequence trees of graphs.
from biembed.gadgets import build_gx, fs_leaf_parents
from biembed.monoid import (
    GraphCode,
    act,
    act_graph_triples,
    check_action_axioms,
    compose,
    identity,
    make_elem,
    natural_action_holds,
)
from biembed.structures import FinInjection, FinStructure
from biembed.trees import TruncationParams

x = GraphCode(2, frozenset({(0, 1)}))

# move both vertices up by one, and put an edge at the free vertex 0
g = make_elem(FinInjection((1, 2), 3), [(0, 1)])
y = act(g, x)
print("g acting on an edge:", sorted(y.edges))
print("edge-faithful on the range:", natural_action_holds(g.p, x, y))

h = make_elem(FinInjection((0, 2, 3), 4), [(1, 2)])
hg = compose(h, g)
print("h(g x) == (hg) x:", act(h, act(g, x)) == act(hg, x))
print("identity is neutral:", compose(identity(3), g) == g)

report = check_action_axioms(act_graph_triples(2), compose, lambda c: identity(c.size))
print("axiom checks:", report.checked, "violations:", len(report.violations))

# a path on three vertices and its rooted sequence tree
path = FinStructure(range(3), [(0, 1), (1, 2)])
p = TruncationParams(depth=2, branch=3)
Gx = build_gx(path, p)
print("sequence tree:", len(Gx), "vertices;", len(fs_leaf_parents(path, p)), "leaves")
print("order is an equivalence:", Gx.is_equivalence())
