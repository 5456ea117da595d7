"""Text formats for every value the package reads or writes.

All readers raise :class:`FormatError` on malformed input.  Lines starting
with ``#`` and blank lines are ignored everywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional, Union

from .metrics import FinMetricSpace
from .monoid import GraphCode, MonoidElem
from .morphisms import KINDS, Morphism
from .seqs import format_bits, format_seq, parse_bits, parse_seq
from .structures import FinInjection, FinStructure, Permutation
from .trees import LipschitzMap, NormalTree, QoTree, TruncationParams
from .vertices import parse_vertex, render_vertex, vertex_key


class FormatError(ValueError):
    pass


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def _expect_header(lines: list[str], word: str) -> list[str]:
    if not lines or lines[0].split()[0] != word:
        raise FormatError(f"expected a {word} header")
    return lines[0].split()[1:]


def _int(text: str) -> int:
    if not text.isdigit():
        raise FormatError(f"not a natural number: {text!r}")
    return int(text)


def _arrow(line: str) -> tuple[str, str]:
    parts = line.split("->")
    if len(parts) != 2:
        raise FormatError(f"expected 'a -> b': {line!r}")
    return parts[0].strip(), parts[1].strip()


def _vertex(text: str):
    try:
        return parse_vertex(text)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


# -- trees ----------------------------------------------------------------------

_BOUNDS = re.compile(r"^!bounds\s+depth=(\d+)\s+branch=(\d+)(?:\s+tail=(\d+))?$")


def format_bounds(p: TruncationParams) -> str:
    return f"!bounds depth={p.depth} branch={p.branch} tail={p.tail}"


def _seq_field(s) -> str:
    return ",".join(str(n) for n in s) or "-"


def _parse_seq_field(text: str):
    text = text.strip()
    if text == "-" or not text:
        return ()
    try:
        return parse_seq("[" + text + "]")
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def _parse_bits_field(text: str):
    try:
        return parse_bits(text)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_tree(T: Union[NormalTree, QoTree], p: Optional[TruncationParams] = None) -> str:
    out = [format_bounds(p)] if p is not None else []
    if isinstance(T, QoTree):
        out.append("!qotree")
        for u, v, s in T.sorted_nodes():
            out.append(f"{format_bits(u) or '-'}|{format_bits(v) or '-'}|{_seq_field(s)}")
    else:
        for u, s in T.sorted_nodes():
            out.append(f"{format_bits(u) or '-'}|{_seq_field(s)}")
    return "\n".join(out) + "\n"


def read_tree(text: str) -> tuple[Union[NormalTree, QoTree], Optional[TruncationParams]]:
    """Parse a tree file; ``!qotree`` marks an empty file as a QoTree."""
    params = None
    pairs, triples = [], []
    qo = False
    for line in _lines(text):
        if line.startswith("!bounds"):
            m = _BOUNDS.match(line)
            if not m:
                raise FormatError(f"bad bounds line: {line!r}")
            try:
                params = TruncationParams(int(m[1]), int(m[2]), int(m[3] or 1))
            except ValueError as exc:
                raise FormatError(str(exc)) from None
            continue
        if line == "!qotree":
            qo = True
            continue
        fields = line.split("|")
        if len(fields) == 2:
            pairs.append((_parse_bits_field(fields[0]), _parse_seq_field(fields[1])))
        elif len(fields) == 3:
            triples.append(
                (_parse_bits_field(fields[0]), _parse_bits_field(fields[1]), _parse_seq_field(fields[2]))
            )
        else:
            raise FormatError(f"bad node line: {line!r}")
    if pairs and triples:
        raise FormatError("mixed pair and triple nodes")
    try:
        if triples or qo:
            if pairs:
                raise FormatError("pair node in a QoTree file")
            tree = QoTree(frozenset(triples))
        else:
            tree = NormalTree(frozenset(pairs))
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    return tree, params


# -- structures -----------------------------------------------------------------


def write_structure(A: FinStructure) -> str:
    out = ["!structure"]
    if A.root is not None:
        out.append(f"!root {render_vertex(A.root)}")
    if A.order is not None:
        out.append("!ordered")
    out += [f"v {render_vertex(v)}" for v in A.vertices()]
    out += [f"e {render_vertex(a)} {render_vertex(b)}" for a, b in A.edge_list()]
    if A.order is not None:
        pairs = sorted(A.order, key=lambda ab: (vertex_key(ab[0]), vertex_key(ab[1])))
        out += [f"o {render_vertex(a)} {render_vertex(b)}" for a, b in pairs]
    return "\n".join(out) + "\n"


def read_structure(text: str) -> FinStructure:
    lines = _lines(text)
    _expect_header(lines, "!structure")
    root = None
    ordered = False
    domain, edges, order = [], [], []
    for line in lines[1:]:
        parts = line.split()
        head, args = parts[0], parts[1:]
        if head == "!root" and len(args) == 1:
            root = _vertex(args[0])
        elif head == "!ordered" and not args:
            ordered = True
        elif head == "v" and len(args) == 1:
            domain.append(_vertex(args[0]))
        elif head == "e" and len(args) == 2:
            edges.append((_vertex(args[0]), _vertex(args[1])))
        elif head == "o" and len(args) == 2:
            order.append((_vertex(args[0]), _vertex(args[1])))
        else:
            raise FormatError(f"bad structure line: {line!r}")
    try:
        return FinStructure(domain, edges, order if (ordered or order) else None, root)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def to_dot(A: FinStructure, with_order: bool = False) -> str:
    """Graphviz text; with ``with_order`` the order is drawn as dashed arcs
    (reflexive pairs omitted)."""
    ids = {v: f"n{i}" for i, v in enumerate(A.vertices())}
    kind, arrow = ("digraph", "->") if with_order else ("graph", "--")
    out = [f"{kind} G {{"]
    for v in A.vertices():
        label = render_vertex(v).replace('"', '\\"')
        shape = ", shape=doublecircle" if v == A.root else ""
        out.append(f'  {ids[v]} [label="{label}"{shape}];')
    for a, b in A.edge_list():
        extra = " [dir=none]" if with_order else ""
        out.append(f"  {ids[a]} {arrow} {ids[b]}{extra};")
    if with_order and A.order:
        for a in A.vertices():
            for b in A.vertices():
                if a != b and (a, b) in A.order:
                    out.append(f"  {ids[a]} -> {ids[b]} [style=dashed];")
    out.append("}")
    return "\n".join(out) + "\n"


# -- maps -----------------------------------------------------------------------


def write_permutation(p: Permutation) -> str:
    out = [f"!perm {len(p.mapping)}"]
    out += [f"{render_vertex(a)} -> {render_vertex(p(a))}" for a in sorted(p.mapping, key=vertex_key)]
    return "\n".join(out) + "\n"


def read_permutation(text: str) -> Permutation:
    lines = _lines(text)
    args = _expect_header(lines, "!perm")
    if len(args) != 1:
        raise FormatError("expected '!perm n'")
    n = _int(args[0])
    mapping = dict(tuple(map(_vertex, _arrow(line))) for line in lines[1:])
    if len(mapping) != n or len(lines) - 1 != n:
        raise FormatError(f"expected {n} assignments")
    try:
        return Permutation(mapping)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_injection(p: FinInjection) -> str:
    out = [f"!inj {p.domain_size} {p.codomain_size}"]
    out += [f"{i} -> {j}" for i, j in enumerate(p.images)]
    return "\n".join(out) + "\n"


def _injection_body(n: int, m: int, lines: list[str]) -> FinInjection:
    images: dict[int, int] = {}
    for line in lines:
        a, b = _arrow(line)
        images[_int(a)] = _int(b)
    if sorted(images) != list(range(n)):
        raise FormatError(f"injection must assign each of 0..{n - 1} once")
    try:
        return FinInjection(tuple(images[i] for i in range(n)), m)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def read_injection(text: str) -> FinInjection:
    lines = _lines(text)
    args = _expect_header(lines, "!inj")
    if len(args) != 2:
        raise FormatError("expected '!inj n m'")
    return _injection_body(_int(args[0]), _int(args[1]), lines[1:])


def write_morphism(g: Morphism) -> str:
    out = [f"!morphism {g.kind}"]
    out += [
        f"{render_vertex(a)} -> {render_vertex(g(a))}" for a in sorted(g.mapping, key=vertex_key)
    ]
    return "\n".join(out) + "\n"


def read_morphism(text: str) -> Morphism:
    lines = _lines(text)
    args = _expect_header(lines, "!morphism")
    if len(args) != 1 or args[0] not in KINDS:
        raise FormatError(f"expected '!morphism <kind>' with kind in {KINDS}")
    mapping = {}
    for line in lines[1:]:
        a, b = _arrow(line)
        mapping[_vertex(a)] = _vertex(b)
    return Morphism(args[0], mapping)


def write_lipschitz(f: LipschitzMap) -> str:
    out = ["!lipschitz"] + [f"{format_seq(s)} -> {format_seq(t)}" for s, t in f.items()]
    return "\n".join(out) + "\n"


def read_lipschitz(text: str) -> LipschitzMap:
    lines = _lines(text)
    _expect_header(lines, "!lipschitz")
    out = {}
    for line in lines[1:]:
        a, b = _arrow(line)
        try:
            s, fs = parse_seq(a), parse_seq(b)
        except ValueError as exc:
            raise FormatError(str(exc)) from None
        if len(s) != len(fs):
            raise FormatError(f"length-changing assignment {line!r}")
        out[s] = fs
    return LipschitzMap(out)


# -- graph codes and monoid elements --------------------------------------------


def _gcode_rows(x: GraphCode) -> list[str]:
    return ["".join(str(x.bit(i, j)) for j in range(i + 1, x.size)) for i in range(x.size - 1)]


def write_graph_code(x: GraphCode) -> str:
    return "\n".join([f"!gcode {x.size}"] + _gcode_rows(x)) + "\n"


def _gcode_body(n: int, rows: list[str]) -> GraphCode:
    if len(rows) != max(n - 1, 0):
        raise FormatError(f"expected {max(n - 1, 0)} rows for size {n}")
    edges = []
    for i, row in enumerate(rows):
        if len(row) != n - 1 - i or any(c not in "01" for c in row):
            raise FormatError(f"bad row {i}: {row!r}")
        edges += [(i, i + 1 + k) for k, c in enumerate(row) if c == "1"]
    return GraphCode(n, frozenset(edges))


def read_graph_code(text: str) -> GraphCode:
    lines = _lines(text)
    args = _expect_header(lines, "!gcode")
    if len(args) != 1:
        raise FormatError("expected '!gcode n'")
    return _gcode_body(_int(args[0]), lines[1:])


def write_monoid_elem(g: MonoidElem) -> str:
    out = [f"!melem {g.domain_size} {g.codomain_size}"]
    out += [f"{i} -> {j}" for i, j in enumerate(g.p.images)]
    out.append("u " + ("".join(str(b) for b in g.u) or "-"))
    out.append(f"!gcode {g.v.size}")
    out += _gcode_rows(g.v)
    return "\n".join(out) + "\n"


def read_monoid_elem(text: str) -> MonoidElem:
    lines = _lines(text)
    args = _expect_header(lines, "!melem")
    if len(args) != 2:
        raise FormatError("expected '!melem n m'")
    n, m = _int(args[0]), _int(args[1])
    body = lines[1:]
    try:
        u_at = next(i for i, line in enumerate(body) if line.startswith("u "))
    except StopIteration:
        raise FormatError("missing u line") from None
    p = _injection_body(n, m, body[:u_at])
    u_text = body[u_at][2:].strip()
    u = () if u_text == "-" else tuple(_int(c) for c in u_text)
    rest = body[u_at + 1 :]
    gargs = _expect_header(rest, "!gcode")
    if gargs != [str(m)]:
        raise FormatError("v block must have the codomain size")
    v = _gcode_body(m, rest[1:])
    try:
        return MonoidElem(p, u, v)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


# -- metrics --------------------------------------------------------------------


def _dyadic(d: Fraction) -> tuple[int, int]:
    den = d.denominator
    if den & (den - 1):
        raise ValueError(f"distance {d} is not dyadic")
    return d.numerator, den.bit_length() - 1


def write_metric(M: FinMetricSpace) -> str:
    n = len(M)
    out = [f"!metric {n}"]
    for i in range(n):
        for j in range(i + 1, n):
            num, exp = _dyadic(M.dist[i][j])
            out.append(f"{i} {j} {num} {exp}")
    return "\n".join(out) + "\n"


def read_metric(text: str) -> FinMetricSpace:
    """Points come back as ``0..n-1``; missing pairs are an error."""
    lines = _lines(text)
    args = _expect_header(lines, "!metric")
    if len(args) != 1:
        raise FormatError("expected '!metric n'")
    n = _int(args[0])
    dist = [[Fraction(0)] * n for _ in range(n)]
    seen = set()
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 4:
            raise FormatError(f"bad metric line: {line!r}")
        i, j, num, exp = map(_int, parts)
        if not (i < n and j < n) or i == j:
            raise FormatError(f"bad point pair in {line!r}")
        dist[i][j] = dist[j][i] = Fraction(num, 2**exp)
        seen.add((min(i, j), max(i, j)))
    if len(seen) != n * (n - 1) // 2:
        raise FormatError("distance table is incomplete")
    try:
        return FinMetricSpace(range(n), dist)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
