"""Balanced regular bipartite graphs with a fixed left-major edge ordering.

A graph on n+n vertices with left degree delta stores, per left vertex v,
the ordered tuple of right endpoints; edge j of v has global id v*delta + j.
Graphs are generated as unions of delta independent uniform permutations
(each permutation contributes one perfect matching), so right degrees are
exactly delta and multi-edges can occur unless `simple` is requested.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    AlphaTooSmallError,
    NoConvergenceError,
    RetryExhaustedError,
    ValidationError,
)

DENSE_EIGENSOLVE_LIMIT = 2000
_POWER_ITERATION_CAP = 20000


@dataclass(frozen=True)
class BipartiteGraph:
    """n-by-n bipartite multigraph, delta-regular on both sides."""

    n: int
    delta: int
    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 1 or self.delta < 1:
            raise ValidationError("need n >= 1 and delta >= 1")
        if len(self.adj) != self.n:
            raise ValidationError("adjacency size != n")
        right_deg = [0] * self.n
        for row in self.adj:
            if len(row) != self.delta:
                raise ValidationError("left degree != delta")
            for w in row:
                if not 0 <= w < self.n:
                    raise ValidationError(f"right vertex {w} out of range")
                right_deg[w] += 1
        if any(d != self.delta for d in right_deg):
            raise ValidationError("right degrees are not all delta")

    @property
    def n_edges(self) -> int:
        return self.n * self.delta

    def edge_endpoints(self, edge_id: int) -> tuple[int, int]:
        v, j = divmod(edge_id, self.delta)
        return v, self.adj[v][j]

    def right_edge_lists(self) -> list[list[int]]:
        """Edge ids incident to each right vertex, ascending (left-major order)."""
        out: list[list[int]] = [[] for _ in range(self.n)]
        for v in range(self.n):
            base = v * self.delta
            for j, w in enumerate(self.adj[v]):
                out[w].append(base + j)
        return out

    def is_simple(self) -> bool:
        return all(len(set(row)) == len(row) for row in self.adj)

    def biadjacency(self) -> np.ndarray:
        m = np.zeros((self.n, self.n))
        for v in range(self.n):
            for w in self.adj[v]:
                m[v, w] += 1.0
        return m

    def to_json_dict(self) -> dict:
        return {
            "edge_order": "left-major",
            "n": self.n,
            "delta": self.delta,
            "adj": [list(row) for row in self.adj],
        }


@dataclass(frozen=True)
class ModifiedGraph:
    """Left side V0 shared by two regular bipartite graphs onto V1 and V2.

    Per left vertex, edge ids place the delta1 edges into V1 first, then the
    delta2 edges into V2: edge (v, j) has id v*(delta1+delta2) + j.
    """

    n: int
    delta1: int
    delta2: int
    adj1: tuple[tuple[int, ...], ...]
    adj2: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        # Delegate the regularity checks to the two component graphs.
        BipartiteGraph(self.n, self.delta1, self.adj1)
        BipartiteGraph(self.n, self.delta2, self.adj2)

    @property
    def delta(self) -> int:
        return self.delta1 + self.delta2

    @property
    def n_edges(self) -> int:
        return self.n * self.delta

    def subgraph1(self) -> BipartiteGraph:
        return BipartiteGraph(self.n, self.delta1, self.adj1)

    def subgraph2(self) -> BipartiteGraph:
        return BipartiteGraph(self.n, self.delta2, self.adj2)

    def to_json_dict(self) -> dict:
        return {
            "edge_order": "left-major",
            "n": self.n,
            "delta1": self.delta1,
            "delta2": self.delta2,
            "adj1": [list(row) for row in self.adj1],
            "adj2": [list(row) for row in self.adj2],
        }


def graph_from_json_dict(data: dict) -> BipartiteGraph | ModifiedGraph:
    if "adj1" in data:
        return ModifiedGraph(
            int(data["n"]),
            int(data["delta1"]),
            int(data["delta2"]),
            tuple(tuple(int(w) for w in row) for row in data["adj1"]),
            tuple(tuple(int(w) for w in row) for row in data["adj2"]),
        )
    return BipartiteGraph(
        int(data["n"]),
        int(data["delta"]),
        tuple(tuple(int(w) for w in row) for row in data["adj"]),
    )


def save_graph(g: BipartiteGraph | ModifiedGraph, path: str | Path) -> None:
    Path(path).write_text(json.dumps(g.to_json_dict(), sort_keys=True) + "\n")


def load_graph(path: str | Path) -> BipartiteGraph | ModifiedGraph:
    return graph_from_json_dict(json.loads(Path(path).read_text()))


def random_regular(n: int, delta: int, seed: int, simple: bool = False) -> BipartiteGraph:
    """Union of delta independent uniform permutation matchings.

    With simple=True each permutation is redrawn (cap 1000) until it creates
    no repeated edge against the earlier ones.
    """
    if n < 1 or delta < 1:
        raise ValidationError("need n >= 1 and delta >= 1")
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed))
    cols: list[np.ndarray] = []
    for _ in range(delta):
        if not simple:
            cols.append(rng.permutation(n))
            continue
        for _attempt in range(1000):
            perm = rng.permutation(n)
            if all(not np.any(perm == c) for c in cols):
                cols.append(perm)
                break
        else:
            raise RetryExhaustedError(
                f"no simple {delta}-regular graph on n={n} after 1000 retries"
            )
    adj = tuple(tuple(int(cols[j][v]) for j in range(delta)) for v in range(n))
    return BipartiteGraph(n, delta, adj)


def split_modified(
    n: int, delta1: int, delta2: int, seed: int, simple: bool = False
) -> ModifiedGraph:
    """Two independent regular bipartite graphs sharing the left vertex set."""
    g1 = random_regular(n, delta1, seed=_spawn_seed(seed, 0), simple=simple)
    g2 = random_regular(n, delta2, seed=_spawn_seed(seed, 1), simple=simple)
    return ModifiedGraph(n, delta1, delta2, g1.adj, g2.adj)


def _spawn_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence(entropy=seed, spawn_key=(index,)).generate_state(1)[0])


@dataclass(frozen=True)
class SpectralData:
    lambda1: float
    lambda2: float
    tol: float

    def is_ramanujan(self, delta: int, tol: float = 1e-9) -> bool:
        return self.lambda2 <= 2.0 * np.sqrt(delta - 1.0) + tol


def second_eigenvalue(g: BipartiteGraph, tol: float = 1e-9) -> SpectralData:
    """Second singular value of the biadjacency matrix (with multiplicities).

    Dense SVD up to DENSE_EIGENSOLVE_LIMIT vertices per side, power iteration
    with deflation beyond that.
    """
    m = g.biadjacency()
    if g.n == 1:
        return SpectralData(float(m[0, 0]), 0.0, tol)
    if g.n <= DENSE_EIGENSOLVE_LIMIT:
        s = np.linalg.svd(m, compute_uv=False)
        return SpectralData(float(s[0]), float(s[1]), tol)
    return SpectralData(float(g.delta), _second_singular_power(m, tol), tol)


def _second_singular_power(m: np.ndarray, tol: float) -> float:
    """Power iteration on M^T M with deflation of the top singular pair."""
    n = m.shape[0]
    # Regular graph: the top right-singular vector is all-ones with value delta.
    top = np.full(n, 1.0 / np.sqrt(n))
    gram = m.T @ m
    rng = np.random.default_rng(0)
    v = rng.standard_normal(n)
    v -= top * (top @ v)
    v /= np.linalg.norm(v)
    prev = 0.0
    for _ in range(_POWER_ITERATION_CAP):
        v = gram @ v
        v -= top * (top @ v)
        norm = np.linalg.norm(v)
        if norm == 0.0:
            return 0.0
        v /= norm
        cur = float(v @ (gram @ v))
        if abs(cur - prev) <= tol * max(1.0, cur):
            return float(np.sqrt(max(cur, 0.0)))
        prev = cur
    raise NoConvergenceError("power iteration did not converge")


def is_ramanujan(g: BipartiteGraph, spectral: SpectralData | None = None, tol: float = 1e-9) -> bool:
    if spectral is None:
        spectral = second_eigenvalue(g)
    return spectral.is_ramanujan(g.delta, tol)


def component_count(g: BipartiteGraph) -> int:
    """Connected components of the bipartite graph (both sides)."""
    seen_l = [False] * g.n
    seen_r = [False] * g.n
    right_lists = g.right_edge_lists()
    comps = 0
    for start in range(g.n):
        if seen_l[start]:
            continue
        comps += 1
        stack = [("L", start)]
        seen_l[start] = True
        while stack:
            side, v = stack.pop()
            if side == "L":
                for w in g.adj[v]:
                    if not seen_r[w]:
                        seen_r[w] = True
                        stack.append(("R", w))
            else:
                for e in right_lists[v]:
                    u = e // g.delta
                    if not seen_l[u]:
                        seen_l[u] = True
                        stack.append(("L", u))
    return comps


def degrees_into(g: BipartiteGraph, left_subset: set[int] | frozenset[int]) -> tuple[int, ...]:
    """deg_S(w) for every right vertex w, counting multi-edges."""
    deg = [0] * g.n
    for v in left_subset:
        for w in g.adj[v]:
            deg[w] += 1
    return tuple(deg)


def degrees_from(g: BipartiteGraph, right_subset: set[int] | frozenset[int]) -> tuple[int, ...]:
    """deg_T(v) for every left vertex v, counting multi-edges."""
    deg = [0] * g.n
    for v in range(g.n):
        for w in g.adj[v]:
            if w in right_subset:
                deg[v] += 1
    return tuple(deg)


@dataclass(frozen=True)
class MixingQuery:
    """One excess-degree query: who exceeds (1+alpha) * sigma * delta."""

    subset: frozenset[int]
    sigma: float
    alpha: float
    deg_s: tuple[int, ...]
    excess_set: frozenset[int]
    typical_set: frozenset[int]
    bound: float
    holds: bool


def mixing_excess_check(
    g: BipartiteGraph,
    left_subset: set[int] | frozenset[int],
    alpha: float,
    spectral: SpectralData | None = None,
) -> MixingQuery:
    """Check |U| <= lambda*|S| / (2*sigma*delta*alpha - lambda) exactly.

    U collects the right vertices with deg_S at least (1+alpha)*sigma*delta;
    the typical set keeps those within a factor (1 +/- alpha) of sigma*delta.
    """
    s = frozenset(left_subset)
    if not s:
        raise ValidationError("subset S must be nonempty")
    if spectral is None:
        spectral = second_eigenvalue(g)
    lam = spectral.lambda2
    sigma = len(s) / g.n
    if alpha <= lam / (2.0 * sigma * g.delta):
        raise AlphaTooSmallError(
            f"alpha={alpha} <= lambda/(2*sigma*delta)={lam / (2 * sigma * g.delta)}"
        )
    deg = degrees_into(g, s)
    hi = (1.0 + alpha) * sigma * g.delta
    lo = (1.0 - alpha) * sigma * g.delta
    excess = frozenset(w for w in range(g.n) if deg[w] >= hi)
    typical = frozenset(w for w in range(g.n) if lo <= deg[w] <= hi)
    bound = lam * len(s) / (2.0 * sigma * g.delta * alpha - lam)
    return MixingQuery(
        s, sigma, alpha, deg, excess, typical, bound, len(excess) <= bound + 1e-9
    )


@dataclass(frozen=True)
class ExpansionCheck:
    verdict: str  # "holds" | "violated" | "hypothesis-unmet"
    size_s: int
    bound: float


def expansion_check(
    g: BipartiteGraph,
    left_subset: set[int] | frozenset[int],
    right_subset: set[int] | frozenset[int],
    alpha0: float,
    alpha1: float,
    spectral: SpectralData | None = None,
) -> ExpansionCheck:
    """Check |S| >= alpha1*n*(1 - lambda/(delta*alpha0))*(1 - lambda/(2*delta*alpha1)).

    The hypothesis (every S vertex sends >= alpha0*delta edges into T and
    every T vertex receives >= alpha1*delta from S) is verified first.
    """
    s = frozenset(left_subset)
    t = frozenset(right_subset)
    if not s or not t:
        return ExpansionCheck("hypothesis-unmet", len(s), 0.0)
    deg_t = degrees_from(g, t)
    deg_s = degrees_into(g, s)
    if any(deg_t[v] < alpha0 * g.delta - 1e-12 for v in s):
        return ExpansionCheck("hypothesis-unmet", len(s), 0.0)
    if any(deg_s[w] < alpha1 * g.delta - 1e-12 for w in t):
        return ExpansionCheck("hypothesis-unmet", len(s), 0.0)
    if spectral is None:
        spectral = second_eigenvalue(g)
    lam = spectral.lambda2
    bound = (
        alpha1
        * g.n
        * (1.0 - lam / (g.delta * alpha0))
        * (1.0 - lam / (2.0 * g.delta * alpha1))
    )
    verdict = "holds" if len(s) >= bound - 1e-9 else "violated"
    return ExpansionCheck(verdict, len(s), bound)


def complete_bipartite(n: int) -> BipartiteGraph:
    """K_{n,n}: every left vertex adjacent to every right vertex once."""
    row = tuple(range(n))
    return BipartiteGraph(n, n, tuple(row for _ in range(n)))


def single_cycle(n: int) -> BipartiteGraph:
    """The unique 2n-cycle as a 2-regular bipartite graph."""
    if n < 2:
        raise ValidationError("cycle needs n >= 2")
    return BipartiteGraph(n, 2, tuple((v, (v + 1) % n) for v in range(n)))
