"""Finite-scale workbench for reductions from normal trees to ordered
combinatorial trees, graph codes, ultrametric spaces and monoid actions."""

from .gadgets import (
    build_fs_tree,
    build_g0,
    build_gprime,
    build_gt,
    build_gx,
    build_ordered_gt,
    build_strict_gt,
    encode_gprime,
    gprime_code_map,
    rp,
)
from .metrics import FinMetricSpace, find_isometric_embedding, geodesic_space, is_ultrametric, ultra_space
from .monoid import GraphCode, MonoidElem, act, compose, natural_action_holds
from .morphisms import Morphism, embed_from_witness, extract_witness, find_morphism, find_morphisms, is_morphism
from .seqs import pair, seq_code, theta, unpair
from .structures import FinInjection, FinStructure, Permutation, in_subgroup, relabel, structures_equal
from .trees import (
    LipschitzMap,
    NormalTree,
    QoTree,
    TruncationParams,
    check_normal,
    find_leqmax_witness,
    normalize,
    refine,
    slice_tree,
    verify_witness,
)
from .vertices import parse_vertex, render_vertex

__all__ = [
    "FinInjection",
    "FinMetricSpace",
    "FinStructure",
    "GraphCode",
    "LipschitzMap",
    "MonoidElem",
    "Morphism",
    "NormalTree",
    "Permutation",
    "QoTree",
    "TruncationParams",
    "act",
    "build_fs_tree",
    "build_g0",
    "build_gprime",
    "build_gt",
    "build_gx",
    "build_ordered_gt",
    "build_strict_gt",
    "check_normal",
    "compose",
    "embed_from_witness",
    "encode_gprime",
    "extract_witness",
    "find_isometric_embedding",
    "find_leqmax_witness",
    "find_morphism",
    "find_morphisms",
    "geodesic_space",
    "gprime_code_map",
    "in_subgroup",
    "is_morphism",
    "is_ultrametric",
    "natural_action_holds",
    "normalize",
    "pair",
    "parse_vertex",
    "refine",
    "relabel",
    "render_vertex",
    "rp",
    "seq_code",
    "slice_tree",
    "structures_equal",
    "theta",
    "ultra_space",
    "unpair",
    "verify_witness",
]
