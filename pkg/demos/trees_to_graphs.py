# Normal trees, Lipschitz witnesses, and the ordered graphs built from them.
from biembed import (
    NormalTree,
    TruncationParams,
    build_ordered_gt,
    check_normal,
    embed_from_witness,
    extract_witness,
    find_leqmax_witness,
    find_morphism,
    render_vertex,
)
from biembed.corpus import all_normal_trees

p = TruncationParams(depth=1, branch=2, tail=1)
E = ()

S = NormalTree({(E, E), ((0,), (1,))})
T = NormalTree({(E, E), ((0,), (1,)), ((1,), (1,))})
print("S normal:", check_normal(S, p), " T normal:", check_normal(T, p))

# plain witness: any Lipschitz map moving nodes into the other tree
R = NormalTree({(E, E), ((0,), (0,)), ((0,), (1,))})
f = find_leqmax_witness(R, T, "plain", p)
print("plain witness R -> T:", f.items())
print("lex witness R -> T:", find_leqmax_witness(R, T, "lex_preserving", p))

# inside one finite box an order-keeping self-map is the identity,
# so order-keeping witnesses come from inclusions
g = find_leqmax_witness(S, T, "lex_preserving", p)
print("lex witness S -> T:", g.items())

A, B = build_ordered_gt(S, p), build_ordered_gt(T, p)
print("ordered builds:", len(A), "and", len(B), "vertices")

emb = embed_from_witness(g, S, T, "ordered_gt", p)
for v in list(A.vertices())[:6]:
    print("  ", render_vertex(v), "->", render_vertex(emb(v)))

# restricting the embedding to sequence vertices gives the witness back
print("extracted == witness:", extract_witness(emb, S, T, "ordered_gt", p) == g)

# distinct trees never give isomorphic ordered builds
trees = all_normal_trees(p)
builds = [build_ordered_gt(X, p) for X in trees]
clashes = sum(
    1
    for i in range(len(builds))
    for j in range(len(builds))
    if i != j and find_morphism(builds[i], builds[j], "isomorphism")
)
print(f"{len(trees)} trees in the box, isomorphic build pairs: {clashes}")
