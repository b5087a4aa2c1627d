"""Base-2 log-domain arithmetic.

Every probability in this package travels as ``lg_p = log2(p)`` so that
values like ``p = n**alpha / 2**n`` with ``n`` in the thousands stay
representable. ``lg`` always means ``log2``.
"""

import math
from functools import lru_cache

LN2 = math.log(2.0)
NEG_INF = float("-inf")

# exact big-integer binomials below these sizes, log-gamma above
_EXACT_N = 4096
_EXACT_K = 1024
_SERIES_RTOL = 1e-18


@lru_cache(maxsize=1 << 16)
def lg_binomial(n: int, m: int) -> float:
    """Return ``lg C(n, m)``.

    Exact (big integer, then ``math.log2``) whenever the coefficient is
    cheap to form; otherwise via log-gamma, where the value is large
    enough that the cancellation error stays below 1e-12 relative.
    """
    if n < 0 or m < 0:
        raise ValueError(f"lg_binomial needs nonnegative arguments, got ({n}, {m})")
    if m > n:
        raise ValueError(f"lg_binomial: m={m} exceeds n={n}")
    k = min(m, n - m)
    if k == 0:
        return 0.0
    if n <= _EXACT_N or k <= _EXACT_K:
        return math.log2(math.comb(n, k))
    return (math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)) / LN2


def _neg_log1m_over_p(lg_p: float) -> float:
    """``-ln(1-p)/p`` for ``p = 2**lg_p``, i.e. ``1 + p/2 + p**2/3 + ...``."""
    p = 2.0 ** lg_p
    if p >= 0.5:
        # the series needs too many terms near p=1; expm1 keeps 1-p exact here
        return -math.log(-math.expm1(lg_p * LN2)) / p
    total = 1.0
    power = 1.0
    j = 1
    while True:
        power *= p
        j += 1
        term = power / j
        if term < _SERIES_RTOL * total:
            return total
        total += term


def ln_one_minus_p(lg_p: float) -> float:
    """``ln(1 - p)`` for ``p = 2**lg_p``; ``-0.0`` once p underflows."""
    if lg_p > 0:
        raise ValueError(f"lg_p must be <= 0 (p <= 1), got {lg_p}")
    if lg_p == 0:
        return NEG_INF
    return -(2.0 ** lg_p) * _neg_log1m_over_p(lg_p)


def hit_penalty(lg_p: float, k: int) -> float:
    """Return ``(2**k - 1) * lg(1 - p)`` with p given as ``lg_p``.

    This is the log-probability that none of the ``2**k - 1`` nonempty
    subsets of a k-set was picked. The product ``2**k * p`` is formed as
    ``2**(k + lg_p)`` so nothing underflows for tiny p. Returns ``-inf``
    when the magnitude exceeds the float range (p extremely close to 1).
    """
    if lg_p > 0:
        raise ValueError(f"lg_p must be <= 0 (p <= 1), got {lg_p}")
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if k == 0:
        return 0.0
    if lg_p == 0:
        return NEG_INF
    # (2**k - 1) * p = 2**(k + lg_p) * (1 - 2**-k)
    lg_mag = k + lg_p + math.log2(-math.expm1(-k * LN2)) + math.log2(_neg_log1m_over_p(lg_p)) - math.log2(LN2)
    if lg_mag >= 1024:
        return NEG_INF
    return -(2.0 ** lg_mag)


def exp2(x: float) -> float:
    """``2**x`` that saturates to ``inf`` instead of raising."""
    return 2.0 ** x if x < 1024 else math.inf


def lg_sum(terms) -> float:
    """``lg(sum(2**t for t in terms))``, stable and compensated."""
    terms = [float(t) for t in terms]
    if not terms:
        return NEG_INF
    top = max(terms)
    if top == NEG_INF:
        return NEG_INF
    if math.isinf(top):
        return top
    return top + math.log2(math.fsum(2.0 ** (t - top) for t in terms))
