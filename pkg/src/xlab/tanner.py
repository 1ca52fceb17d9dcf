"""Assembly of codes on bipartite graphs in the three variants.

Bit layout: edge with global id e carries bits [e*t, (e+1)*t).  Left-vertex
projections are therefore contiguous bit ranges; right-vertex projections
gather t-bit blocks in slot order.  The default slot order of a right vertex
lists its incident edges by ascending global id; an explicit per-vertex slot
assignment may override it (used by the random-code ensemble, where the
right side inherits the column permutation).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import gf2, localcode
from .errors import NotInformationSetError, ValidationError
from .gf2 import BitMatrix, BitVector
from .graph import BipartiteGraph, ModifiedGraph, graph_from_json_dict
from .localcode import LocalCode


@dataclass(frozen=True)
class ExpanderCode:
    """A built code: graph + local codes + derived parity matrix and rate."""

    variant: str  # "basic" | "multiedge" | "modified"
    t: int
    graph: BipartiteGraph | ModifiedGraph
    code_a: LocalCode
    code_b: LocalCode
    code_aux: LocalCode | None
    info_set: tuple[int, ...] | None
    right_slots: tuple[tuple[int, ...], ...]
    parity: BitMatrix
    n_bits: int
    dimension: int

    @property
    def rate(self) -> float:
        return self.dimension / self.n_bits

    @property
    def n(self) -> int:
        return self.graph.n

    def rate_floor(self) -> float:
        """Counting bound on the rate from the construction."""
        r0 = self.code_a.rate
        r1 = self.code_b.rate
        if self.variant == "modified":
            assert self.code_aux is not None
            return r0 * r1 - r0 * (1.0 - self.code_aux.rate)
        return r0 + r1 - 1.0

    def to_json_dict(self) -> dict:
        out = {
            "variant": self.variant,
            "t": self.t,
            "graph": self.graph.to_json_dict(),
            "code_a": self.code_a.to_json_dict(),
            "code_b": self.code_b.to_json_dict(),
        }
        if self.code_aux is not None:
            out["code_aux"] = self.code_aux.to_json_dict()
        if self.info_set is not None:
            out["info_set"] = list(self.info_set)
        return out


def _slice_bits(bits: int, start: int, width: int) -> int:
    return (bits >> start) & ((1 << width) - 1)


def _scatter_parity_rows(
    parity: BitMatrix, slot_edges: list[int] | tuple[int, ...], t: int
) -> list[int]:
    """Map local parity rows onto global bit columns via the slot->edge table."""
    rows = []
    for h in parity.rows:
        bits = 0
        p = h
        while p:
            pos = (p & -p).bit_length() - 1
            p &= p - 1
            symbol, r = divmod(pos, t)
            bits |= 1 << (slot_edges[symbol] * t + r)
        rows.append(bits)
    return rows


def build_multiedge(
    g: BipartiteGraph,
    code_a: LocalCode,
    code_b: LocalCode,
    t: int,
    right_slots: tuple[tuple[int, ...], ...] | None = None,
) -> ExpanderCode:
    """Code with t bits per edge: A on every left vertex, B on every right one."""
    if code_a.t != t or code_b.t != t:
        raise ValidationError("local codes must carry t bits per symbol")
    if code_a.symbols != g.delta or code_b.symbols != g.delta:
        raise ValidationError(
            f"local codes must have {g.delta} symbols, got "
            f"{code_a.symbols} and {code_b.symbols}"
        )
    n_bits = g.n_edges * t
    if right_slots is None:
        right_slots = tuple(tuple(es) for es in g.right_edge_lists())
    rows: list[int] = []
    shift = g.delta * t
    for v in range(g.n):
        base = v * shift
        rows.extend(h << base for h in code_a.parity.rows)
    for w in range(g.n):
        rows.extend(_scatter_parity_rows(code_b.parity, right_slots[w], t))
    parity = BitMatrix(tuple(rows), n_bits)
    dimension = n_bits - gf2.rank(parity)
    return ExpanderCode(
        "multiedge" if t > 1 else "basic",
        t,
        g,
        code_a,
        code_b,
        None,
        None,
        right_slots,
        parity,
        n_bits,
        dimension,
    )


def build_basic(g: BipartiteGraph, code_a: LocalCode, code_b: LocalCode) -> ExpanderCode:
    """One bit per edge; requires plain binary local codes."""
    if code_a.t != 1 or code_b.t != 1:
        raise ValidationError("basic variant requires t = 1 local codes")
    return build_multiedge(g, code_a, code_b, 1)


def _modified_right_lists(mg: ModifiedGraph) -> list[list[int]]:
    """Global edge ids per V1 vertex (ascending), for the E1 subgraph."""
    out: list[list[int]] = [[] for _ in range(mg.n)]
    delta = mg.delta
    for v in range(mg.n):
        for j, w in enumerate(mg.adj1[v]):
            out[w].append(v * delta + j)
    return out


def build_modified(
    mg: ModifiedGraph,
    code_a: LocalCode,
    code_b: LocalCode,
    code_aux: LocalCode,
    t: int,
    info_set: tuple[int, ...] | None = None,
) -> ExpanderCode:
    """Three-constraint variant: A on V0, B on V1, auxiliary code on the E1 edges.

    The E1 symbol positions of A must form an information set, which pins
    A's dimension to delta1*t (so a nonzero local word never vanishes on E1
    and the counting rate floor R0*R1 - R0*(1-R_aux) is valid).
    """
    delta = mg.delta
    if code_a.t != t or code_b.t != t or code_aux.t != t:
        raise ValidationError("local codes must carry t bits per symbol")
    if code_a.symbols != delta:
        raise ValidationError(f"code A must have {delta} symbols")
    if code_b.symbols != mg.delta1 or code_aux.symbols != mg.delta1:
        raise ValidationError(f"codes B and aux must have {mg.delta1} symbols")
    if code_a.k != mg.delta1 * t:
        raise ValidationError(
            f"code A dimension must equal delta1*t = {mg.delta1 * t}, got {code_a.k}"
        )
    if info_set is None:
        info_set = tuple(range(mg.delta1))
    info_set = tuple(sorted(set(info_set)))
    if info_set and info_set[-1] >= mg.delta1:
        raise ValidationError("information set must lie inside the E1 positions")
    if not localcode.information_set_check(code_a, info_set):
        raise NotInformationSetError(
            f"positions {info_set} are not an information set of {code_a.name}"
        )
    n_bits = mg.n_edges * t
    right_lists = _modified_right_lists(mg)
    right_slots = tuple(tuple(es) for es in right_lists)
    rows: list[int] = []
    shift = delta * t
    for v in range(mg.n):
        rows.extend(h << (v * shift) for h in code_a.parity.rows)
    for w in range(mg.n):
        rows.extend(_scatter_parity_rows(code_b.parity, right_slots[w], t))
    for v in range(mg.n):
        rows.extend(h << (v * shift) for h in code_aux.parity.rows)
    parity = BitMatrix(tuple(rows), n_bits)
    dimension = n_bits - gf2.rank(parity)
    return ExpanderCode(
        "modified",
        t,
        mg,
        code_a,
        code_b,
        code_aux,
        info_set,
        right_slots,
        parity,
        n_bits,
        dimension,
    )


def gallager_code(g: BipartiteGraph) -> ExpanderCode:
    """Classic LDPC special case: single parity check left, repetition right."""
    return build_basic(
        g, localcode.single_parity_check(g.delta), localcode.repetition(g.delta)
    )


def left_projection(c: ExpanderCode, x: BitVector, v: int) -> BitVector:
    width = _left_width(c)
    return BitVector(width, _slice_bits(x.bits, v * width, width))


def _left_width(c: ExpanderCode) -> int:
    delta = c.graph.delta
    return delta * c.t


def right_projection(c: ExpanderCode, x: BitVector, w: int) -> BitVector:
    """Blocks of the edges incident to right vertex w, in slot order."""
    t = c.t
    bits = 0
    for i, e in enumerate(c.right_slots[w]):
        bits |= _slice_bits(x.bits, e * t, t) << (i * t)
    return BitVector(len(c.right_slots[w]) * t, bits)


def is_codeword(c: ExpanderCode, x: BitVector) -> bool:
    """Conjunction of the per-vertex local membership conditions."""
    if x.length != c.n_bits:
        raise ValidationError(f"vector length {x.length} != {c.n_bits}")
    n = c.graph.n
    for v in range(n):
        if not c.code_a.parity.annihilates(left_projection(c, x, v)):
            return False
    for w in range(n):
        if not c.code_b.parity.annihilates(right_projection(c, x, w)):
            return False
    if c.variant == "modified":
        assert c.code_aux is not None
        width = c.graph.delta1 * c.t  # type: ignore[union-attr]
        shift = c.graph.delta * c.t
        for v in range(n):
            e1 = BitVector(width, _slice_bits(x.bits, v * shift, width))
            if not c.code_aux.parity.annihilates(e1):
                return False
    return True


def codewords(c: ExpanderCode):
    """Exhaustive stream of codewords (dimension cap applies)."""
    return gf2.enumerate_codewords(gf2.nullspace_basis(c.parity), c.n_bits)


def min_distance_bruteforce(c: ExpanderCode) -> int:
    """Exact minimum distance via full kernel enumeration."""
    basis = gf2.nullspace_basis(c.parity)
    if not basis:
        raise ValidationError("code has dimension 0")
    return gf2.min_distance(basis)


def designed_distance(c: ExpanderCode, lambda2: float) -> float:
    """Eigenvalue-corrected product bound on the minimum distance (in bits).

    For the modified variant pass the second eigenvalue of the E1 subgraph;
    the corrections then use the auxiliary code in place of A.
    """
    if lambda2 < 0:
        raise ValidationError("lambda2 must be >= 0")
    delta0 = localcode.binary_distance(c.code_a) / c.code_a.nbits
    d1q = localcode.qary_distance(c.code_b)
    delta1 = d1q / c.code_b.symbols
    if c.variant == "modified":
        assert c.code_aux is not None
        d_head = localcode.qary_distance(c.code_aux)
    else:
        d_head = localcode.qary_distance(c.code_a)
    f0 = max(0.0, 1.0 - lambda2 / d_head)
    f1 = max(0.0, 1.0 - lambda2 / (2.0 * d1q))
    return c.n_bits * delta0 * delta1 * f0 * f1


@dataclass(frozen=True)
class CodewordProfile:
    """Support structure of one codeword: S, T and the edge-weight averages.

    All averages are exact rationals.  For the modified variant every field
    refers to the E1 subgraph; binary_weight and qary_weight still count the
    whole codeword.
    """

    s_vertices: frozenset[int]
    t_vertices: frozenset[int]
    sigma: Fraction
    tau: Fraction
    gamma: Fraction
    gamma_left: dict[int, Fraction]
    gamma_right: dict[int, Fraction]
    beta_left: dict[int, Fraction]
    beta_right: dict[int, Fraction]
    binary_weight: int
    qary_weight: int
    st_edge_count: int
    gamma_mean_gap: float  # |gamma - mean over T of gamma_v|


def codeword_profile(c: ExpanderCode, x: BitVector) -> CodewordProfile:
    if x.length != c.n_bits:
        raise ValidationError(f"vector length {x.length} != {c.n_bits}")
    if x.bits == 0:
        raise ValidationError("profile of the zero codeword is undefined")
    t = c.t
    n = c.graph.n
    if c.variant == "modified":
        mg = c.graph
        delta_local = mg.delta1  # type: ignore[union-attr]
        adj = mg.adj1  # type: ignore[union-attr]
        stride = mg.delta  # type: ignore[union-attr]
    else:
        delta_local = c.graph.delta
        adj = c.graph.adj  # type: ignore[union-attr]
        stride = c.graph.delta

    def edge_id(v: int, j: int) -> int:
        return v * stride + j

    def edge_weight(e: int) -> int:
        return _slice_bits(x.bits, e * t, t).bit_count()

    total_qary = sum(
        1 for e in range(c.graph.n_edges) if _slice_bits(x.bits, e * t, t)
    )
    s_set = set()
    t_set = set()
    for v in range(n):
        if any(edge_weight(edge_id(v, j)) for j in range(delta_local)):
            s_set.add(v)
        for j in range(delta_local):
            if edge_weight(edge_id(v, j)):
                t_set.add(adj[v][j])
    s_frozen = frozenset(s_set)
    t_frozen = frozenset(t_set)
    st_weight = 0
    st_count = 0
    gamma_left: dict[int, Fraction] = {}
    gamma_right: dict[int, Fraction] = {}
    beta_left: dict[int, Fraction] = {}
    beta_right: dict[int, Fraction] = {}
    right_sum: dict[int, int] = {w: 0 for w in t_set}
    right_deg: dict[int, int] = {w: 0 for w in t_set}
    right_nz_sum: dict[int, int] = {w: 0 for w in t_set}
    right_nz_count: dict[int, int] = {w: 0 for w in t_set}
    for v in s_set:
        vsum = 0
        vdeg = 0
        nz_sum = 0
        nz_count = 0
        for j in range(delta_local):
            w = adj[v][j]
            wt = edge_weight(edge_id(v, j))
            if wt:
                nz_sum += wt
                nz_count += 1
            if w in t_frozen:
                vsum += wt
                vdeg += 1
                st_weight += wt
                st_count += 1
                right_sum[w] += wt
                right_deg[w] += 1
                if wt:
                    right_nz_sum[w] += wt
                    right_nz_count[w] += 1
        gamma_left[v] = Fraction(vsum, t * vdeg)
        beta_left[v] = Fraction(nz_sum, t * nz_count)
    for w in t_set:
        gamma_right[w] = Fraction(right_sum[w], t * right_deg[w])
        beta_right[w] = Fraction(right_nz_sum[w], t * right_nz_count[w])
    gamma = Fraction(st_weight, t * st_count)
    mean_t = sum(gamma_right.values(), Fraction(0)) / len(t_set)
    return CodewordProfile(
        s_frozen,
        t_frozen,
        Fraction(len(s_set), n),
        Fraction(len(t_set), n),
        gamma,
        gamma_left,
        gamma_right,
        beta_left,
        beta_right,
        x.weight,
        total_qary,
        st_count,
        abs(float(gamma - mean_t)),
    )


def _code_from_spec(entry, t: int) -> LocalCode:
    if isinstance(entry, str):
        return localcode.catalog_get(entry, t)
    rows = [BitVector.from01(r) for r in entry["generator_rows"]]
    return localcode.make_local_code(
        entry.get("name", "inline"), int(entry["symbols"]), int(entry["t"]), rows
    )


def code_from_json_dict(data: dict) -> ExpanderCode:
    """Build from the file format {variant, t, graph, code_a, code_b, ...}."""
    t = int(data.get("t", 1))
    graph = graph_from_json_dict(data["graph"])
    variant = data["variant"]
    code_a = _code_from_spec(data["code_a"], t)
    code_b = _code_from_spec(data["code_b"], t)
    if variant == "modified":
        if not isinstance(graph, ModifiedGraph):
            raise ValidationError("modified variant needs a split graph")
        code_aux = _code_from_spec(data["code_aux"], t)
        info = tuple(int(i) for i in data["info_set"]) if "info_set" in data else None
        return build_modified(graph, code_a, code_b, code_aux, t, info)
    if not isinstance(graph, BipartiteGraph):
        raise ValidationError(f"{variant} variant needs a plain bipartite graph")
    if variant == "basic":
        return build_basic(graph, code_a, code_b)
    if variant == "multiedge":
        return build_multiedge(graph, code_a, code_b, t)
    raise ValidationError(f"unknown variant {variant!r}")


def load_code(path: str | Path) -> ExpanderCode:
    return code_from_json_dict(json.loads(Path(path).read_text()))


def save_code(c: ExpanderCode, path: str | Path) -> None:
    Path(path).write_text(json.dumps(c.to_json_dict(), sort_keys=True) + "\n")
