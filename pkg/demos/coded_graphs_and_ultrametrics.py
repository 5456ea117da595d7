# Primed builds, their coding into the naturals, and the ultrametric on
# maximal root paths.
from biembed import (
    NormalTree,
    TruncationParams,
    build_gprime,
    embed_from_witness,
    encode_gprime,
    find_leqmax_witness,
    gprime_code_map,
    render_vertex,
)
from biembed.metrics import (
    induced_path_map,
    is_isometric_embedding,
    is_ultrametric,
    ultra_space,
    ultrametric_signature,
)
from biembed.structures import in_subgroup, random_h_element, relabel
import random

p = TruncationParams(depth=1, branch=2, tail=1)
E = ()
S = NormalTree({(E, E), ((0,), (1,))})
T = NormalTree({(E, E), ((0,), (1,)), ((1,), (1,))})

G = build_gprime(S, p)
codes = gprime_code_map(S, p)
print(len(G), "vertices; a few codes:")
for v in sorted(G.vertices(), key=codes.get)[:8]:
    print(f"  {codes[v]:4d}  {render_vertex(v)}  degree {G.degree(v)}")

# automorphisms of the coded graph that shuffle branch rays
coded = encode_gprime(S, p)
h = random_h_element(coded.vertices(), random.Random(3))
print("sampled element in H:", in_subgroup(h, "H", coded.vertices()),
      " fixes the graph:", relabel(h, coded) == coded)

U_S, U_T = ultra_space(S, p), ultra_space(T, p)
print("maximal paths:", len(U_S), "and", len(U_T))
print("ultrametric:", is_ultrametric(U_S), is_ultrametric(U_T))
print("isometric:", ultrametric_signature(U_S) == ultrametric_signature(U_T))

# a code-monotone witness gives an embedding, and the embedding an isometric one
f = find_leqmax_witness(S, T, "code_monotone", p)
emb = embed_from_witness(f, S, T, "gprime", p)
paths = induced_path_map(emb, build_gprime(T, p), U_S)
print("induced path map isometric:", is_isometric_embedding(paths, U_S, U_T))
