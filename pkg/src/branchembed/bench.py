"""Monte Carlo benchmark: embedding quality over random data matrices.

Each trial draws a fresh standard-normal matrix, clusters it under every
configured (dissimilarity, linkage) condition, embeds the dendrogram with
every configured angle strategy, reclusters the 2-D result under the same
condition (its dissimilarity kind on the coordinates, its linkage), and
records the cophenetic and kinship correlations.  The output table holds
per-cell means over all trials, conditions as rows and strategies as
columns.

Ward is only meaningful on Euclidean distances, so a (correlation, ward)
condition is rejected up front.  Trial t uses the data stream seeded with
``seed + t``; the random angle strategy gets an unrelated per-trial stream
so angles never correlate with data.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cluster import (
    DISSIMILARITY_KINDS,
    LINKAGE_METHODS,
    correlation_dissimilarity,
    euclidean_dissimilarity,
    linkage,
)
from .datasets import RngSpec, gaussian_matrix
from .dendrogram import _pair_matrices
from .embed import AngleStrategy, branching_embed
from .errors import BranchEmbedError
from .metrics import _pearson_vec, convert_dendrogram

DEFAULT_CONDITIONS = (
    ("euclidean", "single"),
    ("euclidean", "complete"),
    ("euclidean", "average"),
    ("euclidean", "ward"),
    ("correlation", "single"),
    ("correlation", "complete"),
    ("correlation", "average"),
)

DEFAULT_THETAS = (0.0, 15.0, 30.0, 45.0, 60.0, 75.0, 90.0)

# Offset decorrelating per-trial angle streams from per-trial data streams.
_ANGLE_STREAM_OFFSET = 0x5851F42D4C957F2D


def default_strategies(swap: bool = True) -> tuple[AngleStrategy, ...]:
    """The standard strategy sweep: random, fixed 0..90 in 15 degree steps,
    then even.  ``swap`` applies to every fixed strategy."""
    fixed = tuple(AngleStrategy.fixed(t, swap=swap) for t in DEFAULT_THETAS)
    return (AngleStrategy.random(0),) + fixed + (AngleStrategy.even(),)


@dataclass(frozen=True)
class BenchConfig:
    trials: int = 200
    rows: int = 100
    cols: int = 5
    conditions: tuple = DEFAULT_CONDITIONS
    strategies: tuple = field(default_factory=default_strategies)
    seed: int = 0

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.rows < 3:
            raise ValueError("need at least 3 rows")
        if self.cols < 1:
            raise ValueError("need at least 1 column")
        object.__setattr__(self, "conditions", tuple(self.conditions))
        object.__setattr__(self, "strategies", tuple(self.strategies))
        for kind, method in self.conditions:
            if kind not in DISSIMILARITY_KINDS:
                raise ValueError(f"unknown dissimilarity {kind!r}")
            if method not in LINKAGE_METHODS:
                raise ValueError(f"unknown linkage method {method!r}")
            if kind == "correlation" and method == "ward":
                raise ValueError(
                    "ward requires Euclidean dissimilarities; "
                    "the (correlation, ward) condition is not benchmarked"
                )
            if kind == "correlation" and self.cols < 2:
                raise ValueError("correlation needs at least 2 columns")


@dataclass(frozen=True)
class BenchTable:
    """Mean scores per (condition, strategy) cell, plus failure counts."""

    conditions: tuple
    strategy_labels: tuple
    mean_r_c: np.ndarray
    mean_r_k: np.ndarray
    failures: np.ndarray
    trials: int

    def cell(self, kind: str, method: str, label: str, metric: str) -> float:
        """One mean by name; ``metric`` is 'r_c' or 'r_k'."""
        row = self.conditions.index((kind, method))
        col = self.strategy_labels.index(label)
        if metric == "r_c":
            return float(self.mean_r_c[row, col])
        if metric == "r_k":
            return float(self.mean_r_k[row, col])
        raise ValueError(f"unknown metric {metric!r}")

    def to_csv(self) -> str:
        out = io.StringIO()
        header = "metric,dissimilarity,linkage," + ",".join(self.strategy_labels)
        out.write(header + "\n")
        blocks = (
            ("r_c", self.mean_r_c, "{:.6f}"),
            ("r_k", self.mean_r_k, "{:.6f}"),
            ("failures", self.failures, "{:d}"),
        )
        for name, table, fmt in blocks:
            for row, (kind, method) in enumerate(self.conditions):
                cells = ",".join(fmt.format(v) for v in table[row].tolist())
                out.write(f"{name},{kind},{method},{cells}\n")
        return out.getvalue()


def _dissimilarity(kind: str, data: np.ndarray):
    if kind == "euclidean":
        return euclidean_dissimilarity(data)
    return correlation_dissimilarity(data)


def run_table_experiment(cfg: BenchConfig) -> BenchTable:
    """Run the full sweep and return the mean-score table.

    Sums are accumulated in trial order, so a given config is exactly
    reproducible.  A failed cell evaluation (degenerate correlation input,
    for example) increments the cell's failure count and is excluded from
    its mean; a cell that never succeeds reports NaN.
    """
    n_cond = len(cfg.conditions)
    n_strat = len(cfg.strategies)
    sum_rc = np.zeros((n_cond, n_strat))
    sum_rk = np.zeros((n_cond, n_strat))
    counts = np.zeros((n_cond, n_strat), dtype=np.int64)
    failures = np.zeros((n_cond, n_strat), dtype=np.int64)
    base = RngSpec(cfg.seed)

    for trial in range(cfg.trials):
        data = gaussian_matrix(cfg.rows, cfg.cols, base.stream(trial))
        angle_seed = (cfg.seed + _ANGLE_STREAM_OFFSET + trial) & ((1 << 64) - 1)
        for ci, (kind, method) in enumerate(cfg.conditions):
            try:
                original = linkage(_dissimilarity(kind, data), method)
                orig_coph, orig_kin = _pair_matrices(original, True, True)
            except BranchEmbedError:
                failures[ci, :] += 1
                continue
            for si, strategy in enumerate(cfg.strategies):
                if strategy.kind == "random":
                    strategy = AngleStrategy.random(angle_seed + strategy.seed)
                try:
                    emb = branching_embed(original, strategy)
                    converted = convert_dendrogram(emb, method, kind)
                    conv_coph, conv_kin = _pair_matrices(converted, True, True)
                    sum_rc[ci, si] += _pearson_vec(orig_coph, conv_coph)
                    sum_rk[ci, si] += _pearson_vec(orig_kin, conv_kin)
                    counts[ci, si] += 1
                except BranchEmbedError:
                    failures[ci, si] += 1

    with np.errstate(invalid="ignore"):
        mean_rc = sum_rc / counts
        mean_rk = sum_rk / counts
    return BenchTable(
        conditions=cfg.conditions,
        strategy_labels=tuple(s.label() for s in cfg.strategies),
        mean_r_c=mean_rc,
        mean_r_k=mean_rk,
        failures=failures,
        trials=cfg.trials,
    )
