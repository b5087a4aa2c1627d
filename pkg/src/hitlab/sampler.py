"""Drawing R(n, p): every nonempty subset of [n] kept independently w.p. p.

Randomness comes from numpy's PCG64 bit generator, seeded with a 64-bit
integer derived per trial by :func:`trial_seed`. Changing the generator
or the order in which draws are consumed changes every sampled instance,
so both are fixed for a major version.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import ln_one_minus_p
from .setsystem import MAX_N, SetSystem, num_words

MAX_EXPECTED_EDGES = 10**8
POISSON_MIN_N = 64
_MASK64 = (1 << 64) - 1
_CHUNK = 1 << 16


class InstanceTooLarge(ValueError):
    def __init__(self, mu):
        self.mu = mu
        super().__init__(
            f"expected edge count {mu:.6g} exceeds the limit of {MAX_EXPECTED_EDGES:.0e}"
        )


@dataclass(frozen=True)
class Dense:
    """p = 2**(-beta * n)."""

    beta: float

    def __post_init__(self):
        if not 0 < self.beta < 1:
            raise ValueError(f"beta must lie in (0, 1), got {self.beta}")


@dataclass(frozen=True)
class Sparse:
    """p = n**alpha / 2**n."""

    alpha: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")


@dataclass(frozen=True)
class ExplicitLgP:
    lg_p: float

    def __post_init__(self):
        if not self.lg_p <= 0:
            raise ValueError(f"lg_p must be <= 0, got {self.lg_p}")


Regime = Dense | Sparse | ExplicitLgP


def lg_p_of(regime: Regime, n: int) -> float:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if isinstance(regime, Dense):
        return -regime.beta * n
    if isinstance(regime, Sparse):
        return min(0.0, regime.alpha * math.log2(n) - n)
    return float(regime.lg_p)


def trial_seed(master: int, index: int) -> int:
    """Per-trial seed: golden-ratio offset of the master, then a 64-bit finalizer."""
    z = (master ^ (index * 0x9E3779B97F4A7C15)) & _MASK64
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & _MASK64
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & _MASK64
    z ^= z >> 31
    return z


def expected_edges(n: int, lg_p: float) -> float:
    """``(2**n - 1) * p``, formed in log domain; ``inf`` past float range."""
    lg_mu = lg_p + n + math.log2(-math.expm1(-n * math.log(2.0)))
    return 2.0 ** lg_mu if lg_mu < 1024 else math.inf


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed & _MASK64))


def _geometric_skip(n, lg_p, rng):
    """Exact Bernoulli(p) selection over subset indices 1 .. 2**n - 1.

    The gap to the next kept index is ``floor(ln U / ln(1-p))``.
    """
    last = (1 << n) - 1
    if lg_p == 0:
        return list(range(1, last + 1))
    log_q = ln_one_minus_p(lg_p)
    if log_q == 0:
        return []
    mu = expected_edges(n, lg_p)
    chunk = int(min(_CHUNK, max(16, 1.1 * mu + 16)))
    edges = []
    idx = 0
    while True:
        # 1 - random() lies in (0, 1]
        gaps = np.floor(np.log1p(-rng.random(chunk)) / log_q).tolist()
        for g in gaps:
            if g >= last:
                return edges
            idx += int(g) + 1
            if idx > last:
                return edges
            edges.append(idx)


def _poissonized(n, mu, rng):
    """Poisson(mu) many distinct uniform nonempty subsets.

    Collisions and the empty set are redrawn, which keeps the accepted
    subsets uniform among distinct ones given their number.
    """
    k = min(int(rng.poisson(mu)), (1 << n) - 1)
    w = num_words(n)
    top_mask = np.uint64((1 << (n - 64 * (w - 1))) - 1)
    seen = set()
    edges = []
    while len(edges) < k:
        block = rng.integers(0, _MASK64, size=(k - len(edges), w), dtype=np.uint64, endpoint=True)
        block[:, -1] &= top_mask
        for row in block.tolist():
            bits = 0
            for j, word in enumerate(row):
                bits |= word << (64 * j)
            if bits and bits not in seen:
                seen.add(bits)
                edges.append(bits)
    return edges


def sample_system(n: int, regime: Regime, seed: int, method: str | None = None) -> SetSystem:
    """Draw one instance of R(n, p) with ``p = 2**lg_p_of(regime, n)``.

    ``method`` defaults to geometric skipping (``"skip"``) for n < 64 and the
    Poissonized uniform draw (``"poisson"``) from n = 64 on; either can be
    forced for n <= 63. The Poissonized draw differs from the exact model
    by at most ``mu * p`` in total variation.
    """
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must be in 1..{MAX_N}, got {n}")
    lg_p = lg_p_of(regime, n)
    if method is None:
        method = "poisson" if n >= POISSON_MIN_N else "skip"
    if method == "skip" and n >= POISSON_MIN_N:
        raise ValueError("geometric skipping needs subset indices below 2**63 (n <= 63)")
    if method not in ("skip", "poisson"):
        raise ValueError(f"unknown sampling method {method!r}")
    mu = expected_edges(n, lg_p)
    if mu > MAX_EXPECTED_EDGES:
        raise InstanceTooLarge(mu)
    rng = make_rng(seed)
    if method == "skip":
        edges = _geometric_skip(n, lg_p, rng)
    else:
        edges = _poissonized(n, mu, rng)
    return SetSystem.from_bits(n, edges)
