"""Set systems over the ground set {1, ..., n}.

Edges and vertex sets are plain Python ints used as bit-vectors: element
``i`` (1-based) is present iff bit ``i - 1`` is set. The solver kernels see
the same edges as a ``(num_edges, words)`` array of ``uint64``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from . import _kernels

MAX_N = 1024
WORD_BITS = 64


class SetSystemError(ValueError):
    pass


class EmptyEdge(SetSystemError):
    pass


class ElementOutOfRange(SetSystemError):
    pass


class ParseError(SetSystemError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def to_bits(elements) -> int:
    bits = 0
    for e in elements:
        bits |= 1 << (e - 1)
    return bits


def to_elements(bits: int) -> list[int]:
    out = []
    i = 1
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return out


def num_words(n: int) -> int:
    return max(1, (n + WORD_BITS - 1) // WORD_BITS)


def pack_words(values, n: int) -> np.ndarray:
    """Bit-vectors (ints) -> ``uint64`` array of shape ``(len(values), words)``."""
    w = num_words(n)
    out = np.zeros((len(values), w), dtype=np.uint64)
    mask = (1 << WORD_BITS) - 1
    for row, v in enumerate(values):
        for j in range(w):
            out[row, j] = (v >> (WORD_BITS * j)) & mask
    return out


def unpack_words(row) -> int:
    bits = 0
    for j, word in enumerate(row):
        bits |= int(word) << (WORD_BITS * j)
    return bits


@dataclass(frozen=True)
class SetSystem:
    """Ground size ``n`` and a canonical tuple of distinct nonempty edges.

    Build instances with :func:`build` or :meth:`from_bits`; the
    constructor trusts its input.
    """

    n: int
    edges: tuple[int, ...]
    _words: np.ndarray | None = field(default=None, repr=False, compare=False)

    @classmethod
    def from_bits(cls, n, edges) -> "SetSystem":
        if not 1 <= n <= MAX_N:
            raise ValueError(f"ground size must be in 1..{MAX_N}, got {n}")
        universe = (1 << n) - 1
        for e in edges:
            if e == 0:
                raise EmptyEdge("edges must be nonempty; the empty set cannot be hit")
            if e & ~universe:
                raise ElementOutOfRange(f"edge {to_elements(e)} has elements above n={n}")
        return cls(n, tuple(sorted(set(edges))))

    @property
    def universe(self) -> int:
        return (1 << self.n) - 1

    @property
    def words(self) -> np.ndarray:
        if self._words is None:
            object.__setattr__(self, "_words", pack_words(self.edges, self.n))
        return self._words

    def __len__(self):
        return len(self.edges)

    def edge_lists(self) -> list[list[int]]:
        return [to_elements(e) for e in self.edges]


def build(n, raw_edges) -> SetSystem:
    """Build a system from 1-based element lists; duplicates are merged."""
    if not 1 <= n <= MAX_N:
        raise ValueError(f"ground size must be in 1..{MAX_N}, got {n}")
    bits = []
    for raw in raw_edges:
        raw = list(raw)
        if not raw:
            raise EmptyEdge("edges must be nonempty; the empty set cannot be hit")
        for e in raw:
            if not 1 <= e <= n:
                raise ElementOutOfRange(f"element {e} outside 1..{n}")
        bits.append(to_bits(raw))
    return SetSystem.from_bits(n, bits)


def complement(sys: SetSystem, h: int) -> int:
    return sys.universe & ~h


def is_hitting(sys: SetSystem, h: int) -> bool:
    return all(e & h for e in sys.edges)


def is_independent(sys: SetSystem, s: int) -> bool:
    return not any(e & ~s == 0 for e in sys.edges)


def is_minimal_hitting(sys: SetSystem, h: int) -> bool:
    if not is_hitting(sys, h):
        return False
    rest = h
    while rest:
        low = rest & -rest
        rest ^= low
        if is_hitting(sys, h ^ low):
            return False
    return True


def is_maximal_independent(sys: SetSystem, s: int) -> bool:
    if not is_independent(sys, s):
        return False
    rest = sys.universe & ~s
    while rest:
        low = rest & -rest
        rest ^= low
        if is_independent(sys, s | low):
            return False
    return True


def reduce(sys: SetSystem) -> SetSystem:
    """Drop every edge that strictly contains another edge.

    Minimum hitting set size is unchanged: whatever hits the smaller edge
    hits the larger one too.
    """
    if len(sys.edges) < 2:
        return sys
    keep = _kernels.antichain_mask(sys.words)
    edges = tuple(e for e, k in zip(sys.edges, keep) if k)
    if len(edges) == len(sys.edges):
        return sys
    return SetSystem(sys.n, edges)


def format_text(sys: SetSystem) -> str:
    lines = [f"n {sys.n}"]
    lines.extend(" ".join(map(str, to_elements(e))) for e in sys.edges)
    return "\n".join(lines) + "\n"


def parse_text(text: str) -> SetSystem:
    """Parse the ``n <int>`` header plus one edge per line format.

    ``#`` lines are comments. A blank line before the final newline is an
    error (it would denote an empty edge).
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    n = None
    edges = []
    for lineno, line in enumerate(lines, start=1):
        if line.startswith("#"):
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 2 or tokens[0] != "n":
                raise ParseError("expected header 'n <integer>'", lineno)
            try:
                n = int(tokens[1])
            except ValueError:
                raise ParseError(f"bad ground size {tokens[1]!r}", lineno) from None
            if not 1 <= n <= MAX_N:
                raise ParseError(f"ground size must be in 1..{MAX_N}", lineno)
            continue
        if not tokens:
            raise ParseError("blank edge line (empty edges are not allowed)", lineno)
        try:
            elems = [int(t) for t in tokens]
        except ValueError:
            raise ParseError(f"non-integer element in {line!r}", lineno) from None
        if any(b <= a for a, b in zip(elems, elems[1:])):
            raise ParseError("elements must be strictly ascending", lineno)
        if elems[0] < 1 or elems[-1] > n:
            raise ParseError(f"element outside 1..{n}", lineno)
        edges.append(to_bits(elems))
    if n is None:
        raise ParseError("missing header 'n <integer>'", 1)
    return SetSystem.from_bits(n, edges)


def read_text(path) -> SetSystem:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_text(fh.read())


def write_text(sys: SetSystem, path) -> None:
    path = os.fspath(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_text(sys))
