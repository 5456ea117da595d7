"""Finite sequences, pairing functions and the orders used by the gadget builds.

Sequences are plain tuples of non-negative ints.  Binary sequences are the
same tuples restricted to entries in {0, 1}.
"""

from __future__ import annotations

from itertools import product
from math import isqrt
from typing import Iterator, Tuple

FinSeq = Tuple[int, ...]

EMPTY: FinSeq = ()


def pair(n: int, m: int) -> int:
    """Cantor pairing of two naturals."""
    if n < 0 or m < 0:
        raise ValueError(f"pair expects naturals, got ({n}, {m})")
    return (n + m) * (n + m + 1) // 2 + n


def unpair(k: int) -> tuple[int, int]:
    """Inverse of :func:`pair`."""
    if k < 0:
        raise ValueError(f"unpair expects a natural, got {k}")
    w = (isqrt(8 * k + 1) - 1) // 2
    n = k - w * (w + 1) // 2
    return n, w - n


def is_binary(u: FinSeq) -> bool:
    return all(b in (0, 1) for b in u)


def theta(u: FinSeq) -> int:
    """Position of a binary sequence in the length-then-lex enumeration."""
    if not is_binary(u):
        raise ValueError(f"theta expects a binary sequence, got {u!r}")
    value = 0
    for b in u:
        value = 2 * value + b
    return (1 << len(u)) - 1 + value


def theta_inverse(k: int) -> FinSeq:
    if k < 0:
        raise ValueError(f"theta_inverse expects a natural, got {k}")
    length = (k + 1).bit_length() - 1
    value = k - ((1 << length) - 1)
    return tuple((value >> (length - 1 - i)) & 1 for i in range(length))


def seq_code(s: FinSeq) -> int:
    """Bijective code of a sequence: the empty sequence is 0 and
    ``code(s + (n,)) = pair(code(s), n) + 1``."""
    code = 0
    for n in s:
        code = pair(code, n) + 1
    return code


def seq_decode(k: int) -> FinSeq:
    if k < 0:
        raise ValueError(f"seq_decode expects a natural, got {k}")
    items: list[int] = []
    while k:
        k, n = unpair(k - 1)
        items.append(n)
    return tuple(reversed(items))


def seq_add(s: FinSeq, t: FinSeq) -> FinSeq:
    if len(s) != len(t):
        raise ValueError(f"length mismatch: {len(s)} != {len(t)}")
    return tuple(a + b for a, b in zip(s, t))


def pointwise_leq(s: FinSeq, t: FinSeq) -> bool:
    if len(s) != len(t):
        raise ValueError(f"length mismatch: {len(s)} != {len(t)}")
    return all(a <= b for a, b in zip(s, t))


def lex_leq(s: FinSeq, t: FinSeq) -> bool:
    return tuple(s) <= tuple(t)


def preceq_key(s: FinSeq) -> tuple[int, FinSeq]:
    """Sort key realising the length-then-lex order on sequences."""
    return len(s), tuple(s)


def preceq(s: FinSeq, t: FinSeq) -> bool:
    return preceq_key(s) <= preceq_key(t)


def zeros(n: int) -> FinSeq:
    return (0,) * n


def predecessor(s: FinSeq) -> FinSeq:
    if not s:
        raise ValueError("the empty sequence has no predecessor")
    return s[:-1]


def is_prefix(s: FinSeq, t: FinSeq) -> bool:
    return len(s) <= len(t) and tuple(t[: len(s)]) == tuple(s)


def seqs_of_length(n: int, branch: int) -> Iterator[FinSeq]:
    """All sequences of length ``n`` with entries below ``branch``, lex order."""
    return product(range(branch), repeat=n)


def all_seqs(depth: int, branch: int) -> list[FinSeq]:
    """The truncated universe: sequences of length <= depth, in preceq order."""
    return [s for n in range(depth + 1) for s in seqs_of_length(n, branch)]


def binary_seqs(n: int) -> Iterator[FinSeq]:
    return product((0, 1), repeat=n)


def format_seq(s: FinSeq) -> str:
    return "[" + ",".join(str(n) for n in s) + "]"


def parse_seq(text: str) -> FinSeq:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"not a sequence literal: {text!r}")
    body = text[1:-1].strip()
    if not body:
        return ()
    return tuple(_natural(part) for part in body.split(","))


def format_bits(u: FinSeq) -> str:
    return "".join(str(b) for b in u)


def parse_bits(text: str) -> FinSeq:
    text = text.strip()
    if text in ("", "-"):
        return ()
    if any(c not in "01" for c in text):
        raise ValueError(f"not a binary string: {text!r}")
    return tuple(int(c) for c in text)


def _natural(text: str) -> int:
    text = text.strip()
    if not text.isdigit():
        raise ValueError(f"not a natural number: {text!r}")
    return int(text)
