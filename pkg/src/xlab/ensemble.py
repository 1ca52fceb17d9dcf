"""Monte-Carlo experiments over the random bipartite-graph code ensemble.

A trial draws a local parity check H (uniform for the random-local variant,
fixed for fixed-local) and a uniform permutation pi of the N edge slots; the
code is the kernel of [H1; pi(H1)] with H1 the n-fold block repetition of H.
Trials derive their RNG streams from (seed, trial_index), so runs are
reproducible and trials can be distributed across workers.
"""
from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import gf2, localcode, tanner
from .errors import ValidationError
from .gf2 import BitMatrix, BitVector
from .graph import BipartiteGraph
from .localcode import LocalCode
from .tanner import ExpanderCode


def worker_count() -> int:
    """Worker cap from XLAB_THREADS (default 1 = serial)."""
    raw = os.environ.get("XLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass(frozen=True)
class EnsembleConfig:
    variant: str  # "random-local" | "fixed-local"
    n: int
    delta: int
    trials: int
    seed: int
    r0: Fraction | None = None  # random-local: local code rate
    code_name: str | None = None  # fixed-local: catalog name

    def __post_init__(self) -> None:
        if self.variant not in ("random-local", "fixed-local"):
            raise ValidationError(f"unknown ensemble variant {self.variant!r}")
        if self.n < 1 or self.delta < 1 or self.trials < 1:
            raise ValidationError("need n, delta, trials >= 1")
        if self.variant == "random-local":
            if self.r0 is None:
                raise ValidationError("random-local needs r0")
            if not 0 < self.r0 < 1:
                raise ValidationError(f"r0 {self.r0} outside (0, 1)")
            rows = (1 - self.r0) * self.delta
            if rows.denominator != 1 or rows < 1:
                raise ValidationError(
                    f"(1 - r0) * delta = {rows} must be a positive integer"
                )
        elif self.code_name is None:
            raise ValidationError("fixed-local needs a code name")

    @property
    def n_bits(self) -> int:
        return self.n * self.delta

    def local_rate(self) -> float:
        if self.variant == "random-local":
            return float(self.r0)
        code = localcode.catalog_get(self.code_name)
        return code.rate

    def to_json_dict(self) -> dict:
        out = {
            "variant": self.variant,
            "n": self.n,
            "delta": self.delta,
            "trials": self.trials,
            "seed": self.seed,
            "n_bits": self.n_bits,
        }
        if self.r0 is not None:
            out["r0"] = [self.r0.numerator, self.r0.denominator]
        if self.code_name is not None:
            out["code"] = self.code_name
        return out


def _local_code_for_trial(cfg: EnsembleConfig, rng: np.random.Generator) -> LocalCode:
    if cfg.variant == "fixed-local":
        return localcode.catalog_get(cfg.code_name)
    rows = int((1 - cfg.r0) * cfg.delta)
    while True:
        bits = rng.integers(0, 2, size=(rows, cfg.delta))
        parity_rows = tuple(
            sum(int(b) << i for i, b in enumerate(row)) for row in bits
        )
        parity = BitMatrix(parity_rows, cfg.delta)
        gen_rows = gf2.nullspace_basis(parity)
        if gen_rows:
            name = f"uniform[{cfg.delta},{cfg.delta - len(parity_rows)}]"
            return LocalCode(name, cfg.delta, 1, tuple(gen_rows), parity)
        # H spanned everything (only possible when rows >= delta); redraw.


def sample_code(cfg: EnsembleConfig, trial_index: int) -> ExpanderCode:
    """Deterministic trial draw: uniform H (or the fixed code) plus uniform pi.

    pi both defines the bipartite graph and carries the right-vertex slot
    order, so the built parity is exactly [H1; pi(H1)].
    """
    if not 0 <= trial_index < cfg.trials:
        raise ValidationError(f"trial index {trial_index} outside [0, {cfg.trials})")
    ss = np.random.SeedSequence(entropy=cfg.seed, spawn_key=(trial_index,))
    rng = np.random.default_rng(ss)
    code = _local_code_for_trial(cfg, rng)
    n, delta = cfg.n, cfg.delta
    n_edges = n * delta
    pi = rng.permutation(n_edges)
    # Right block w, slot c sits on edge pi[w*delta + c].
    adj_rows = [[0] * delta for _ in range(n)]
    slots = []
    for w in range(n):
        block = [int(pi[w * delta + c]) for c in range(delta)]
        slots.append(tuple(block))
        for e in block:
            adj_rows[e // delta][e % delta] = w
    graph = BipartiteGraph(n, delta, tuple(tuple(r) for r in adj_rows))
    return tanner.build_multiedge(graph, code, code, 1, right_slots=tuple(slots))


@dataclass(frozen=True)
class EnsembleReport:
    config: EnsembleConfig
    a_bar: tuple[float, ...]  # mean codeword count per weight, length N+1
    a_stderr: tuple[float, ...]
    min_distance_hist: dict[int, int]
    overlay: str  # "sp1sp2" | "chernov"
    normalized_points: tuple[tuple[float, float], ...]

    def to_json_dict(self) -> dict:
        nine = lambda x: float(f"{x:.9g}")
        return {
            "config": self.config.to_json_dict(),
            "a_bar": [nine(x) for x in self.a_bar],
            "a_bar_stderr": [nine(x) for x in self.a_stderr],
            "min_distance_hist": {str(d): c for d, c in sorted(self.min_distance_hist.items())},
            "overlay": self.overlay,
            "normalized_points": [[nine(a), nine(b)] for a, b in self.normalized_points],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True) + "\n"


def _trial_counts(cfg: EnsembleConfig, trial_index: int) -> tuple[int, ...]:
    code = sample_code(cfg, trial_index)
    basis = gf2.nullspace_basis(code.parity)
    return gf2.weight_distribution(basis, code.n_bits)


def _collect_counts(cfg: EnsembleConfig) -> np.ndarray:
    workers = worker_count()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_trial_counts, [cfg] * cfg.trials, range(cfg.trials)))
    else:
        rows = [_trial_counts(cfg, t) for t in range(cfg.trials)]
    return np.asarray(rows, dtype=float)


def _overlay_name(cfg: EnsembleConfig) -> str:
    return "sp1sp2" if cfg.variant == "random-local" else "chernov"


def empirical_spectrum(cfg: EnsembleConfig) -> EnsembleReport:
    """Average weight distribution over the trials, with normalized log points."""
    counts = _collect_counts(cfg)
    a_bar = counts.mean(axis=0)
    stderr = counts.std(axis=0, ddof=1) / math.sqrt(cfg.trials) if cfg.trials > 1 else np.zeros_like(a_bar)
    n_bits = cfg.n_bits
    points = []
    for w in range(n_bits + 1):
        if a_bar[w] > 0.0:
            points.append((w / n_bits, math.log2(a_bar[w]) / n_bits))
    hist = _min_distance_hist(counts, n_bits)
    return EnsembleReport(
        cfg,
        tuple(float(x) for x in a_bar),
        tuple(float(x) for x in stderr),
        hist,
        _overlay_name(cfg),
        tuple(points),
    )


def _min_distance_hist(counts: np.ndarray, n_bits: int) -> dict[int, int]:
    hist: dict[int, int] = {}
    for row in counts:
        nz = np.nonzero(row[1:])[0]
        d = int(nz[0]) + 1 if nz.size else n_bits + 1  # trivial code sentinel
        hist[d] = hist.get(d, 0) + 1
    return hist


def empirical_min_distance(cfg: EnsembleConfig) -> EnsembleReport:
    """Same trials as empirical_spectrum but summarized by minimum distance."""
    return empirical_spectrum(cfg)


def min_distance_quantiles(report: EnsembleReport) -> dict[str, int]:
    """Min / median / max of the per-trial minimum distances."""
    values: list[int] = []
    for d, c in sorted(report.min_distance_hist.items()):
        values.extend([d] * c)
    return {
        "min": values[0],
        "median": values[len(values) // 2],
        "max": values[-1],
    }
