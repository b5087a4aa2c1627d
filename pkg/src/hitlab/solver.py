"""Exact minimum hitting sets, with the bounds and oracle around them."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from . import _kernels
from .setsystem import (
    SetSystem,
    complement,
    pack_words,
    reduce,
    to_elements,
    unpack_words,
)

DEFAULT_NODE_BUDGET = 10**8
EXHAUSTIVE_MAX_N = 20
MAX_COUNT_SUBSETS = 10**6
_CELLS = 1 << 22


class Status(str, enum.Enum):
    OPTIMAL = "optimal"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class SolveResult:
    size: int
    witness: int
    nodes: int
    status: Status

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL

    def witness_elements(self) -> list[int]:
        return to_elements(self.witness)

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "witness": self.witness_elements(),
            "nodes": self.nodes,
            "status": self.status.value,
        }


def _incidence(sys: SetSystem) -> np.ndarray:
    """Boolean ``(num_edges, n)`` matrix; column j is element j + 1."""
    raw = np.ascontiguousarray(sys.words.astype("<u8")).view(np.uint8)
    bits = np.unpackbits(raw, axis=1, bitorder="little")
    return bits[:, : sys.n].astype(bool)


def greedy_hitting(sys: SetSystem) -> int:
    """Add the element hitting most uncovered edges until all are hit.

    Ties go to the lowest element.
    """
    if not sys.edges:
        return 0
    inc = _incidence(sys)
    uncovered = np.ones(len(sys.edges), dtype=bool)
    h = 0
    while uncovered.any():
        counts = inc[uncovered].sum(axis=0)
        j = int(np.argmax(counts))
        h |= 1 << j
        uncovered &= ~inc[:, j]
    return h


def packing_lower_bound(sys: SetSystem) -> int:
    """Number of pairwise disjoint edges taken greedily in canonical order."""
    used = 0
    count = 0
    for e in sys.edges:
        if not e & used:
            used |= e
            count += 1
    return count


def solve_min_hitting(sys: SetSystem, node_budget: int | None = None) -> SolveResult:
    """Minimum hitting set by branch and bound.

    The system is reduced to an antichain first; singleton edges then name
    elements that every hitting set contains. The rest goes to the compiled
    search, seeded with the greedy solution as incumbent. If the node budget
    runs out the result carries the best hitting set seen and status
    ``BUDGET_EXCEEDED``.
    """
    if node_budget is None:
        node_budget = DEFAULT_NODE_BUDGET
    red = reduce(sys)
    forced = 0
    rest = []
    for e in red.edges:
        if e & (e - 1) == 0:
            forced |= e
        else:
            rest.append(e)
    # reduce() already dropped every edge containing a forced element
    if not rest:
        return SolveResult(forced.bit_count(), forced, 1, Status.OPTIMAL)
    residual = SetSystem(sys.n, tuple(rest))
    start = greedy_hitting(residual)
    start_size = start.bit_count()
    best_words, best_size, nodes, finished = _kernels.branch_and_bound(
        residual.words, pack_words([start], sys.n)[0], start_size, node_budget
    )
    witness = forced | unpack_words(best_words)
    status = Status.OPTIMAL if finished else Status.BUDGET_EXCEEDED
    return SolveResult(forced.bit_count() + int(best_size), witness, int(nodes), status)


@lru_cache(maxsize=64)
def _subset_masks(n: int, m: int) -> np.ndarray:
    """All m-subsets of an n-set (n <= 64) as bitmasks, in lexicographic order."""
    masks = np.fromiter(
        (sum(1 << i for i in c) for c in combinations(range(n), m)),
        dtype=np.uint64,
        count=-1,
    )
    masks.flags.writeable = False
    return masks


def _hitting_flags(masks, edges):
    """Yield ``(offset, flags)`` blocks; ``flags[i]`` says whether masks[offset+i] hits every edge."""
    chunk = max(1, _CELLS // len(edges))
    for lo in range(0, len(masks), chunk):
        block = masks[lo : lo + chunk]
        yield lo, ((block[:, None] & edges[None, :]) != 0).all(axis=1)


def exhaustive_min_hitting(sys: SetSystem) -> SolveResult:
    """Scan sizes 0, 1, 2, ... and subsets in lexicographic order.

    Optimal by construction; only for ``n <= 20``.
    """
    if sys.n > EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive search refused for n={sys.n} > {EXHAUSTIVE_MAX_N}")
    if not sys.edges:
        return SolveResult(0, 0, 1, Status.OPTIMAL)
    edges = np.array(sys.edges, dtype=np.uint64)
    checked = 0
    for m in range(sys.n + 1):
        masks = _subset_masks(sys.n, m)
        for lo, flags in _hitting_flags(masks, edges):
            found = np.flatnonzero(flags)
            if found.size:
                checked += int(found[0]) + 1
                return SolveResult(m, int(masks[lo + found[0]]), checked, Status.OPTIMAL)
            checked += len(flags)
    raise AssertionError("the full ground set always hits a system of nonempty edges")


def max_independent_size(sys: SetSystem, node_budget: int | None = None) -> tuple[int, int]:
    """Largest independent set, as ``(size, witness)``.

    The complement of a minimum hitting set is a maximum independent set.
    """
    res = solve_min_hitting(sys, node_budget)
    if not res.optimal:
        raise RuntimeError(f"solver budget exceeded after {res.nodes} nodes")
    return sys.n - res.size, complement(sys, res.witness)


def count_hitting_sets(sys: SetSystem, m: int) -> int:
    """Number of size-m hitting sets, by enumerating all ``C(n, m)`` subsets."""
    total = comb(sys.n, m)
    if total > MAX_COUNT_SUBSETS:
        raise ValueError(f"C({sys.n}, {m}) = {total} subsets exceeds {MAX_COUNT_SUBSETS}")
    if not sys.edges:
        return total
    if sys.n <= 64:
        edges = np.array(sys.edges, dtype=np.uint64)
        return sum(int(f.sum()) for _, f in _hitting_flags(_subset_masks(sys.n, m), edges))
    count = 0
    for c in combinations(range(sys.n), m):
        h = sum(1 << i for i in c)
        if all(e & h for e in sys.edges):
            count += 1
    return count
