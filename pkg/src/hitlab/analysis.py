"""Expected hitting-set counts, threshold windows and second-moment terms.

``lambda_m`` is the expected number of size-m hitting sets of R(n, p):
``C(n, m) * (1 - p)**(2**(n - m) - 1)``, the exponent counting the nonempty
subsets of the complement. All of it is computed as ``lg lambda_m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .numerics import exp2, hit_penalty, lg_binomial, lg_sum


@dataclass(frozen=True)
class ExpectationCurve:
    n: int
    lg_p: float
    values: tuple[float, ...]  # values[m] = lg lambda_m, m = 0..n

    def __getitem__(self, m):
        return self.values[m]


@dataclass(frozen=True)
class Window:
    h_hat: int
    support: tuple[int, ...]

    def to_dict(self):
        return {"h_hat": self.h_hat, "support": list(self.support)}


@dataclass(frozen=True)
class AsymptoticPrediction:
    h: int
    phi: float
    delta: float | None = None

    def to_dict(self):
        return {"h": self.h, "phi": self.phi, "delta": self.delta}


@dataclass(frozen=True)
class MomentDiagnostics:
    m: int
    s0: float
    pair_sum: float
    sigma1: float
    sigma2: float
    cond8: bool
    cheby_bound: float
    lg_terms: tuple[float, ...]  # lg of the pair-sum term for s = 1..m

    def to_dict(self):
        return {
            "m": self.m,
            "s0": self.s0,
            "S": self.pair_sum,
            "sigma1": self.sigma1,
            "sigma2": self.sigma2,
            "cond8": self.cond8,
            "cheby_bound": self.cheby_bound,
        }


def lg_lambda(n: int, m: int, lg_p: float) -> float:
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    return lg_binomial(n, m) + hit_penalty(lg_p, n - m)


def curve(n: int, lg_p: float) -> ExpectationCurve:
    return ExpectationCurve(n, lg_p, tuple(lg_lambda(n, m, lg_p) for m in range(n + 1)))


def finite_window(c: ExpectationCurve) -> Window:
    """Smallest m with ``lambda_m >= 1``, plus the next size up.

    ``lambda_n = 1`` always, so the minimum exists.
    """
    h_hat = next(m for m, v in enumerate(c.values) if v >= 0)
    return Window(h_hat, tuple(m for m in (h_hat, h_hat + 1) if m <= c.n))


def dense_delta(beta: float) -> float:
    return beta ** (-beta) * (1 - beta) ** (beta - 1)


def dense_h(n: int, beta: float) -> AsymptoticPrediction:
    """Leading-order hitting number for p = 2**(-beta n), lower-order terms dropped."""
    if not 0 < beta < 1:
        raise ValueError(f"beta must lie in (0, 1), got {beta}")
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    delta = dense_delta(beta)
    arg = n * math.log(delta)
    if arg <= 1:
        raise ValueError(f"n ln(delta) = {arg:.4g} <= 1; correction term undefined or negative")
    phi = math.log2(arg)
    return AsymptoticPrediction(math.floor((1 - beta) * n - phi) + 1, phi, delta)


def dense_i(n: int, beta: float) -> int:
    """Predicted maximum independent set size, ``n - 2 - (h - 1)``."""
    return n - 2 - (dense_h(n, beta).h - 1)


def sparse_h(n: int, alpha: float) -> AsymptoticPrediction:
    """Leading-order hitting number for p = n**alpha / 2**n."""
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    scale = alpha * math.log2(n)
    arg = scale * math.log(n)
    if arg <= 1:
        raise ValueError(f"alpha lg n ln n = {arg:.4g} <= 1; correction term undefined or negative")
    phi = math.log2(arg)
    return AsymptoticPrediction(math.floor(scale - phi) + 1, phi)


def second_moment(n: int, m: int, lg_lambda_m: float) -> MomentDiagnostics:
    """Pair-sum diagnostics for the count of size-m hitting sets.

    ``pair_sum`` is ``sum_{s>=1} C(m,s) C(n-m,s) C(n,m)**(2**-s - 1)``, where
    s is how many elements two m-sets do not share. It is split at
    ``s0 = 2 lg(m ln n)`` into the tail ``sigma1`` (s >= ceil(s0)) and the
    head ``sigma2``. ``cheby_bound = 1/lambda - 1 + pair_sum`` bounds
    ``P(X_m = 0)`` and ``Var(X_m)/lambda**2`` once ``lambda >= 1``.
    """
    if not 1 <= m <= n - 1:
        raise ValueError(f"need 1 <= m <= n - 1, got m={m}, n={n}")
    lg_nm = lg_binomial(n, m)
    lg_terms = []
    for s in range(1, m + 1):
        if s > n - m:
            lg_terms.append(-math.inf)
            continue
        lg_terms.append(lg_binomial(m, s) + lg_binomial(n - m, s) + (2.0 ** -s - 1) * lg_nm)
    ln_n = math.log(n)
    s0 = 2 * math.log2(m * ln_n)
    split = math.ceil(s0)
    head = [t for s, t in enumerate(lg_terms, start=1) if s < split]
    tail = [t for s, t in enumerate(lg_terms, start=1) if s >= split]
    pair_sum = exp2(lg_sum(lg_terms))
    sigma1 = exp2(lg_sum(tail))
    sigma2 = exp2(lg_sum(head))
    cond8 = math.log(m) < (1 - 8 * math.log2(m * ln_n) / m) * ln_n
    inv_lambda = exp2(-lg_lambda_m)
    cheby = max(0.0, inv_lambda - 1 + pair_sum)
    return MomentDiagnostics(m, s0, pair_sum, sigma1, sigma2, cond8, cheby, tuple(lg_terms))
