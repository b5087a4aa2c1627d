"""Seeded Monte Carlo runs of the hitting number of R(n, p).

Trial ``i`` samples with ``trial_seed(master_seed, i)`` and is solved exactly.
Records come back in index order whatever the worker count, so the CSV is
a function of the configuration alone (the ``ms`` timing column aside,
which can be switched off).
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from math import comb
from pathlib import Path

from .analysis import (
    AsymptoticPrediction,
    Window,
    curve,
    dense_h,
    finite_window,
    lg_lambda,
    second_moment,
    sparse_h,
)
from .sampler import (
    MAX_EXPECTED_EDGES,
    Dense,
    InstanceTooLarge,
    Regime,
    Sparse,
    expected_edges,
    lg_p_of,
    sample_system,
    trial_seed,
)
from .numerics import exp2
from .setsystem import MAX_N
from .solver import DEFAULT_NODE_BUDGET, MAX_COUNT_SUBSETS, count_hitting_sets, solve_min_hitting

log = logging.getLogger(__name__)

CSV_COLUMNS = ["index", "seed", "edge_count", "h_size", "nodes", "status", "ms"]


class ExperimentAborted(RuntimeError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    regime: Regime
    trials: int
    master_seed: int = 0
    node_budget: int = DEFAULT_NODE_BUDGET
    workers: int = 1
    output_path: Path | None = None
    count_xm: int | None = None
    timing: bool = True

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise ValueError(f"n must be in 1..{MAX_N}, got {self.n}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.master_seed < 1 << 64:
            raise ValueError("master seed must be a 64-bit unsigned integer")
        if self.node_budget < 1 or self.workers < 1:
            raise ValueError("node budget and worker count must be positive")
        if self.count_xm is not None:
            if not 0 <= self.count_xm <= self.n:
                raise ValueError(f"--count-xm must be in 0..n, got {self.count_xm}")
            if comb(self.n, self.count_xm) > MAX_COUNT_SUBSETS:
                raise ValueError(
                    f"counting X_{self.count_xm} needs C({self.n}, {self.count_xm}) "
                    f"<= {MAX_COUNT_SUBSETS} subsets per trial"
                )

    @property
    def lg_p(self) -> float:
        return lg_p_of(self.regime, self.n)


@dataclass(frozen=True)
class TrialRecord:
    index: int
    seed: int
    edge_count: int
    h_size: int
    nodes: int
    status: str
    ms: float
    x_m: int | None = None


@dataclass
class Summary:
    trials: int
    histogram: dict[int, int]
    mode: int
    two_point_mass: float
    two_point_base: int
    window_finite: Window
    prediction_asymptotic: AsymptoticPrediction | None
    h_hat_gap: int | None
    in_window_fraction: float
    xm: dict | None = field(default=None)

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "histogram": {str(k): v for k, v in self.histogram.items()},
            "mode": self.mode,
            "two_point_mass": self.two_point_mass,
            "two_point_base": self.two_point_base,
            "window_finite": self.window_finite.to_dict(),
            "prediction_asymptotic": (
                None if self.prediction_asymptotic is None else self.prediction_asymptotic.to_dict()
            ),
            "agreement": {
                "h_hat_gap": self.h_hat_gap,
                "in_window_fraction": self.in_window_fraction,
            },
            "xm": self.xm,
        }


def regime_to_dict(regime: Regime) -> dict:
    if isinstance(regime, Dense):
        return {"kind": "dense", "beta": regime.beta}
    if isinstance(regime, Sparse):
        return {"kind": "sparse", "alpha": regime.alpha}
    return {"kind": "lg_p", "lg_p": regime.lg_p}


def asymptotic_prediction(n: int, regime: Regime) -> AsymptoticPrediction | None:
    """Leading-order prediction for the dense and sparse families, else None."""
    try:
        if isinstance(regime, Dense):
            return dense_h(n, regime.beta)
        if isinstance(regime, Sparse):
            return sparse_h(n, regime.alpha)
    except ValueError:
        # n too small for the correction term to be defined
        return None
    return None


def run_trial(n, regime, master_seed, node_budget, count_xm, index) -> TrialRecord:
    seed = trial_seed(master_seed, index)
    t0 = time.perf_counter()
    sys = sample_system(n, regime, seed)
    res = solve_min_hitting(sys, node_budget)
    ms = (time.perf_counter() - t0) * 1000.0
    x_m = count_hitting_sets(sys, count_xm) if count_xm is not None else None
    return TrialRecord(index, seed, len(sys.edges), res.size, res.nodes, res.status.value, ms, x_m)


def xm_statistics(n: int, lg_p: float, m: int, counts) -> dict:
    """Sample moments of X_m next to lambda_m and the second-moment bound."""
    t = len(counts)
    mean = math.fsum(counts) / t
    var = math.fsum((c - mean) ** 2 for c in counts) / (t - 1) if t > 1 else 0.0
    lg_lam = lg_lambda(n, m, lg_p)
    out = {
        "m": m,
        "mean": mean,
        "var": var,
        "stderr": math.sqrt(var / t),
        "zero_fraction": sum(1 for c in counts if c == 0) / t,
        "lg_lambda": lg_lam,
        "lambda": exp2(lg_lam),
        "var_over_mean_sq": var / mean**2 if mean > 0 else None,
        "S": None,
        "cheby_bound": None,
    }
    if 1 <= m <= n - 1:
        diag = second_moment(n, m, lg_lam)
        out["S"] = diag.pair_sum
        out["cheby_bound"] = diag.cheby_bound
    return out


def summarize(records, window: Window, prediction: AsymptoticPrediction | None = None,
              xm: dict | None = None) -> Summary:
    """Aggregate trial records against the finite window and the asymptotic h."""
    records = list(records)
    if not records:
        raise ValueError("no records to summarize")
    t = len(records)
    hist: dict[int, int] = {}
    for r in records:
        hist[r.h_size] = hist.get(r.h_size, 0) + 1
    hist = dict(sorted(hist.items()))
    # keys are ascending, so max() settles ties on the smaller size
    mode = max(hist, key=lambda k: hist[k])
    base = max(hist, key=lambda k: hist[k] + hist.get(k + 1, 0))
    mass = (hist[base] + hist.get(base + 1, 0)) / t
    inside = sum(hist.get(k, 0) for k in window.support) / t
    gap = abs(window.h_hat - prediction.h) if prediction is not None else None
    return Summary(t, hist, mode, mass, base, window, prediction, gap, inside, xm)


def run_experiment(config: ExperimentConfig):
    """Run all trials; returns ``(records, summary)``.

    Raises :class:`ExperimentAborted` if any trial hits the node budget and
    :class:`InstanceTooLarge` before starting if instances would be too big.
    """
    lg_p = config.lg_p
    mu = expected_edges(config.n, lg_p)
    if mu > MAX_EXPECTED_EDGES:
        raise InstanceTooLarge(mu)
    job = partial(run_trial, config.n, config.regime, config.master_seed,
                  config.node_budget, config.count_xm)
    indices = range(config.trials)
    if config.workers == 1:
        results = map(job, indices)
        records = _collect(results, config)
    else:
        chunk = max(1, config.trials // (config.workers * 8))
        pool = ProcessPoolExecutor(max_workers=config.workers)
        try:
            records = _collect(pool.map(job, indices, chunksize=chunk), config)
        except BaseException:
            pool.shutdown(wait=False, cancel_futures=True)
            raise
        pool.shutdown()
    window = finite_window(curve(config.n, lg_p))
    prediction = asymptotic_prediction(config.n, config.regime)
    xm = None
    if config.count_xm is not None:
        xm = xm_statistics(config.n, lg_p, config.count_xm, [r.x_m for r in records])
    summary = summarize(records, window, prediction, xm)
    if config.output_path is not None:
        write_outputs(config, records, summary)
    return records, summary


def _collect(results, config):
    records = []
    for r in results:
        if r.status != "optimal":
            raise ExperimentAborted(
                f"trial {r.index} (seed 0x{r.seed:016x}) exceeded the node budget of "
                f"{config.node_budget} nodes; censored minima would bias the histogram"
            )
        records.append(r)
        if (r.index + 1) % 100 == 0:
            log.info("%d/%d trials done", r.index + 1, config.trials)
    return records


def csv_text(records, timing: bool = True, count_xm: int | None = None) -> str:
    """CSV with a header row, LF line ends; ``ms`` is left blank without timing."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = list(CSV_COLUMNS)
    if count_xm is not None:
        header.append(f"x_{count_xm}")
    writer.writerow(header)
    for r in records:
        row = [r.index, f"0x{r.seed:016x}", r.edge_count, r.h_size, r.nodes, r.status,
               f"{r.ms:.3f}" if timing else ""]
        if count_xm is not None:
            row.append(r.x_m)
        writer.writerow(row)
    return buf.getvalue()


def summary_json(config: ExperimentConfig, summary: Summary) -> str:
    doc = {
        "config": {
            "n": config.n,
            "regime": regime_to_dict(config.regime),
            "lg_p": config.lg_p,
            "trials": config.trials,
            "master_seed": f"0x{config.master_seed:016x}",
            "node_budget": config.node_budget,
            "count_xm": config.count_xm,
        },
        "summary": summary.to_dict(),
    }
    return json.dumps(doc, indent=2) + "\n"


def summary_path(csv_path) -> Path:
    return Path(csv_path).with_suffix(".json")


def write_outputs(config: ExperimentConfig, records, summary: Summary) -> None:
    path = Path(config.output_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(csv_text(records, config.timing, config.count_xm))
    with open(summary_path(path), "w", encoding="utf-8", newline="") as fh:
        fh.write(summary_json(config, summary))
