"""Brute-force references, written without touching the package's search code."""

import random
from itertools import combinations

import numpy as np

from hitlab.setsystem import SetSystem


def random_system(rng: random.Random, n: int, p: float) -> SetSystem:
    edges = [s for s in range(1, 1 << n) if rng.random() < p]
    return SetSystem.from_bits(n, edges)


def brute_min_hitting_size(n, edges):
    for m in range(n + 1):
        for c in combinations(range(n), m):
            h = sum(1 << i for i in c)
            if all(e & h for e in edges):
                return m
    raise AssertionError("unreachable for nonempty edges")


def brute_max_independent_size(n, edges):
    subsets = np.arange(1 << n, dtype=np.int64)
    contains_edge = np.zeros(1 << n, dtype=bool)
    for e in edges:
        contains_edge |= (subsets & e) == e
    sizes = np.array([bin(s).count("1") for s in range(1 << n)])
    return int(sizes[~contains_edge].max())


def oracle_instances(count=200, seed=20240601):
    """The fixed instance family used by the oracle and duality checks."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(4, 14)
        p = rng.choice([0.05, 0.1, 0.3, 0.5])
        out.append((n, p, random_system(rng, n, p)))
    return out
