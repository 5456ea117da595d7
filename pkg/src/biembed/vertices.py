"""Vertex labels for the gadget structures.

Vertices are plain tuples whose first entry is an integer tag, so that they
hash cheaply and never collide across kinds:

=========  ===========================  ==================
tag        tuple                        text form
=========  ===========================  ==================
SEQ        (SEQ, s)                     ``[0,1]``
STAR       (STAR, s)                    ``[0,1]*``
PLUS       (PLUS, s)                    ``[0,1]+``
PLUSPLUS   (PLUSPLUS, s)                ``[0,1]++``
GADGET     (GADGET, u, s, x)            ``(01;[0,1];001)``
BRANCH     (BRANCH, s, i, k)            ``([0,1]++;2;3)``
LEAF       (LEAF, n)                    ``L5``
=========  ===========================  ==================

Structures over naturals use bare ints as vertices.
"""

from __future__ import annotations

import re
from typing import Hashable, Union

from .seqs import FinSeq, format_bits, format_seq, parse_bits, parse_seq, preceq_key

SEQ, STAR, PLUS, PLUSPLUS, GADGET, BRANCH, LEAF = range(7)

Vertex = Union[int, tuple]


def vseq(s: FinSeq) -> tuple:
    return (SEQ, tuple(s))


def vstar(s: FinSeq) -> tuple:
    if not s:
        raise ValueError("the empty sequence has no star vertex")
    return (STAR, tuple(s))


def vplus(s: FinSeq) -> tuple:
    return (PLUS, tuple(s))


def vplusplus(s: FinSeq) -> tuple:
    return (PLUSPLUS, tuple(s))


def vgadget(u: FinSeq, s: FinSeq, x: FinSeq) -> tuple:
    return (GADGET, tuple(u), tuple(s), tuple(x))


def vbranch(s: FinSeq, i: int, k: int) -> tuple:
    if k < 1:
        raise ValueError("branch ray positions start at 1")
    return (BRANCH, tuple(s), i, k)


def vleaf(n: int) -> tuple:
    return (LEAF, n)


def tag(v: Vertex) -> int:
    return -1 if isinstance(v, int) else v[0]


def is_seq(v: Vertex) -> bool:
    return not isinstance(v, int) and v[0] == SEQ


def vertex_key(v: Hashable):
    """Total order on vertices: ints numerically, tagged tuples by tag and
    then length-then-lex on their sequence fields."""
    if isinstance(v, int):
        return (v,)
    return (v[0],) + tuple(preceq_key(f) if isinstance(f, tuple) else (0, (f,)) for f in v[1:])


def render_vertex(v: Vertex) -> str:
    if isinstance(v, int):
        return str(v)
    t = v[0]
    if t == SEQ:
        return format_seq(v[1])
    if t == STAR:
        return format_seq(v[1]) + "*"
    if t == PLUS:
        return format_seq(v[1]) + "+"
    if t == PLUSPLUS:
        return format_seq(v[1]) + "++"
    if t == GADGET:
        _, u, s, x = v
        return f"({format_bits(u) or '-'};{format_seq(s)};{format_bits(x) or '-'})"
    if t == BRANCH:
        _, s, i, k = v
        return f"({format_seq(s)}++;{i};{k})"
    if t == LEAF:
        return f"L{v[1]}"
    raise ValueError(f"unknown vertex {v!r}")


_SEQ = r"\[[0-9,\s]*\]"
_PATTERNS = [
    (re.compile(rf"^({_SEQ})\+\+$"), lambda m: vplusplus(parse_seq(m[1]))),
    (re.compile(rf"^({_SEQ})\+$"), lambda m: vplus(parse_seq(m[1]))),
    (re.compile(rf"^({_SEQ})\*$"), lambda m: vstar(parse_seq(m[1]))),
    (re.compile(rf"^({_SEQ})$"), lambda m: vseq(parse_seq(m[1]))),
    (
        re.compile(rf"^\(([01]+|-);({_SEQ});([01]+|-)\)$"),
        lambda m: vgadget(parse_bits(m[1]), parse_seq(m[2]), parse_bits(m[3])),
    ),
    (
        re.compile(rf"^\(({_SEQ})\+\+;(\d+);(\d+)\)$"),
        lambda m: vbranch(parse_seq(m[1]), int(m[2]), int(m[3])),
    ),
    (re.compile(r"^L(\d+)$"), lambda m: vleaf(int(m[1]))),
    (re.compile(r"^(\d+)$"), lambda m: int(m[1])),
]


def parse_vertex(text: str) -> Vertex:
    text = text.strip()
    for pattern, build in _PATTERNS:
        m = pattern.match(text)
        if m:
            return build(m)
    raise ValueError(f"cannot parse vertex {text!r}")
