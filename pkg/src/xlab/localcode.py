"""Constituent (vertex-local) codes and their constrained weight profiles.

A LocalCode is a binary linear code of length symbols*t, read as `symbols`
consecutive t-bit blocks when t > 1.  The catalog covers the fixed small
codes used throughout plus repetition, single-parity-check, seeded random
and file-backed codes.
"""
from __future__ import annotations

import functools
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import gf2
from .errors import ValidationError
from .gf2 import BitMatrix, BitVector, QaryView

# [7,4,3] Hamming code, systematic generator [I4 | P].
_HAMMING7_ROWS = ("1000110", "0100101", "0010011", "0001111")

# [23,12,7] binary Golay code: cyclic shifts of the generator polynomial
# x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1 (exponents 0,2,4,5,6,10,11).
_GOLAY_POLY = (0, 2, 4, 5, 6, 10, 11)


@dataclass(frozen=True)
class LocalCode:
    """Binary linear code with a t-bit symbol structure.

    generator rows are linearly independent; parity is a basis of the dual,
    so parity * g^T = 0 for every generator row g.
    """

    name: str
    symbols: int
    t: int
    generator: tuple[BitVector, ...]
    parity: BitMatrix

    @property
    def nbits(self) -> int:
        return self.symbols * self.t

    @property
    def k(self) -> int:
        return len(self.generator)

    @property
    def rate(self) -> float:
        return self.k / self.nbits

    @property
    def q(self) -> int:
        return 2**self.t

    def generator_matrix(self) -> BitMatrix:
        return BitMatrix.from_vectors(list(self.generator), self.nbits)

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "symbols": self.symbols,
            "t": self.t,
            "k": self.k,
            "generator_rows": [v.to01() for v in self.generator],
        }


def make_local_code(name: str, symbols: int, t: int, rows: list[BitVector]) -> LocalCode:
    """Build a LocalCode from generator rows; parity check is derived."""
    nbits = symbols * t
    for r in rows:
        if r.length != nbits:
            raise ValidationError(f"generator row length {r.length} != {nbits}")
    gen = BitMatrix.from_vectors(rows, nbits)
    if gf2.rank(gen) != len(rows):
        raise ValidationError("generator rows are linearly dependent")
    parity_rows = gf2.nullspace_basis(gen)
    parity = BitMatrix.from_vectors(parity_rows, nbits) if parity_rows else BitMatrix((), nbits)
    return LocalCode(name, symbols, t, tuple(rows), parity)


def hamming7() -> LocalCode:
    return make_local_code("hamming7", 7, 1, [BitVector.from01(r) for r in _HAMMING7_ROWS])


def golay23() -> LocalCode:
    rows = []
    for i in range(12):
        rows.append(BitVector.from_support(23, [e + i for e in _GOLAY_POLY]))
    return make_local_code("golay23", 23, 1, rows)


def repetition(symbols: int, t: int = 1) -> LocalCode:
    if symbols < 1:
        raise ValidationError("repetition needs symbols >= 1")
    n = symbols * t
    return make_local_code(f"rep({symbols})", symbols, t, [BitVector(n, (1 << n) - 1)])


def single_parity_check(symbols: int, t: int = 1) -> LocalCode:
    if symbols * t < 2:
        raise ValidationError("single parity check needs length >= 2")
    n = symbols * t
    rows = [BitVector.from_support(n, [i, i + 1]) for i in range(n - 1)]
    return make_local_code(f"spc({symbols})", symbols, t, rows)


def full_space(symbols: int, t: int = 1) -> LocalCode:
    n = symbols * t
    rows = [BitVector.from_support(n, [i]) for i in range(n)]
    return make_local_code(f"full({symbols})", symbols, t, rows)


def random_code(nbits: int, k: int, seed: int, t: int = 1, name: str | None = None) -> LocalCode:
    """Uniform random [nbits, k] code; rank-deficient draws are resampled."""
    if not 1 <= k <= nbits:
        raise ValidationError(f"need 1 <= k <= n, got k={k}, n={nbits}")
    if nbits % t:
        raise ValidationError("nbits not divisible by t")
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed))
    for _ in range(1000):
        bits = rng.integers(0, 2, size=(k, nbits))
        rows = [
            BitVector(nbits, sum(int(b) << i for i, b in enumerate(row)))
            for row in bits
        ]
        gen = BitMatrix.from_vectors(rows, nbits)
        if gf2.rank(gen) == k:
            return make_local_code(
                name or f"random({nbits},{k},{seed})", nbits // t, t, rows
            )
    raise ValidationError("could not draw a full-rank generator in 1000 tries")


def load_code_file(path: str | Path) -> LocalCode:
    """Load the JSON file format {name, symbols, t, k, generator_rows}."""
    data = json.loads(Path(path).read_text())
    rows = [BitVector.from01(r) for r in data["generator_rows"]]
    code = make_local_code(data["name"], int(data["symbols"]), int(data["t"]), rows)
    if code.k != int(data["k"]):
        raise ValidationError(f"file says k={data['k']}, rows give k={code.k}")
    return code


_CATALOG_RE = re.compile(r"^(?P<fn>[a-z]+)\((?P<args>[^)]*)\)$")


def catalog_get(name: str, t: int = 1) -> LocalCode:
    """Resolve a catalog name.

    Supported: hamming7, golay23, rep(D), spc(D), full(D),
    random(n,k,seed), file(path).  t applies the block structure to the
    parametric entries; hamming7/golay23 are plain binary (t must be 1).
    """
    if name == "hamming7":
        if t != 1:
            raise ValidationError("hamming7 is a binary code (t=1)")
        return hamming7()
    if name == "golay23":
        if t != 1:
            raise ValidationError("golay23 is a binary code (t=1)")
        return golay23()
    m = _CATALOG_RE.match(name.strip())
    if not m:
        raise ValidationError(f"unknown code name {name!r}")
    fn = m.group("fn")
    args = [a.strip() for a in m.group("args").split(",")] if m.group("args") else []
    try:
        if fn == "rep":
            (d,) = args
            return repetition(int(d), t)
        if fn == "spc":
            (d,) = args
            return single_parity_check(int(d), t)
        if fn == "full":
            (d,) = args
            return full_space(int(d), t)
        if fn == "random":
            n, k, seed = args
            return random_code(int(n), int(k), int(seed), t)
        if fn == "file":
            (path,) = args
            return load_code_file(path)
    except ValueError as exc:
        raise ValidationError(f"bad parameters in {name!r}: {exc}") from exc
    raise ValidationError(f"unknown code name {name!r}")


@functools.lru_cache(maxsize=256)
def binary_distance(code: LocalCode) -> int:
    """Exact minimum binary weight (exhaustive)."""
    return gf2.min_distance(list(code.generator))


@functools.lru_cache(maxsize=256)
def qary_distance(code: LocalCode) -> int:
    """Exact minimum number of nonzero t-bit symbols over nonzero codewords."""
    best = code.symbols + 1
    for word in gf2.enumerate_codewords(list(code.generator), code.nbits):
        if word.bits == 0:
            continue
        best = min(best, gf2.qary_weight(QaryView(word, code.t)))
    return best


@dataclass(frozen=True)
class ProfileEntry:
    beta: Fraction
    min_qary_weight: int
    min_binary_weight: int


@dataclass(frozen=True)
class ConstrainedProfile:
    """Per-beta minima over nonzero codewords.

    beta is the exact average relative binary weight of the nonzero symbols
    counted in `restriction` ("all" or an information-set tuple).
    """

    code_name: str
    restriction: str | tuple[int, ...]
    entries: tuple[ProfileEntry, ...]

    def entry(self, beta: Fraction) -> ProfileEntry | None:
        for e in self.entries:
            if e.beta == beta:
                return e
        return None

    @property
    def betas(self) -> tuple[Fraction, ...]:
        return tuple(e.beta for e in self.entries)


def _profile_scan(code: LocalCode, block_indices: list[int] | None) -> ConstrainedProfile:
    t = code.t
    minima: dict[Fraction, list[int]] = {}
    mask = (1 << t) - 1
    selected = None if block_indices is None else set(block_indices)
    for word in gf2.enumerate_codewords(list(code.generator), code.nbits):
        if word.bits == 0:
            continue
        total_binary = word.weight
        total_qary = 0
        sel_binary = 0
        sel_qary = 0
        bits = word.bits
        for i in range(code.symbols):
            block = (bits >> (i * t)) & mask
            if block:
                total_qary += 1
                if selected is None or i in selected:
                    sel_qary += 1
                    sel_binary += block.bit_count()
        if sel_qary == 0:
            continue  # beta undefined on the restriction; skip
        beta = Fraction(sel_binary, t * sel_qary)
        cur = minima.get(beta)
        if cur is None:
            minima[beta] = [total_qary, total_binary]
        else:
            cur[0] = min(cur[0], total_qary)
            cur[1] = min(cur[1], total_binary)
    entries = tuple(
        ProfileEntry(beta, qw, bw) for beta, (qw, bw) in sorted(minima.items())
    )
    restriction = "all" if block_indices is None else tuple(sorted(block_indices))
    return ConstrainedProfile(code.name, restriction, entries)


def constrained_qary_profile(code: LocalCode) -> ConstrainedProfile:
    """Minimum q-ary and binary weight per exact beta over all nonzero codewords."""
    return _profile_scan(code, None)


def information_set_check(code: LocalCode, symbol_set: list[int] | tuple[int, ...]) -> bool:
    """True iff the generator columns inside the given symbols have rank k."""
    idx = sorted(set(symbol_set))
    for i in idx:
        if not 0 <= i < code.symbols:
            raise ValidationError(f"symbol index {i} out of range")
    if len(idx) * code.t < code.k:
        return False
    cols = [i * code.t + r for i in idx for r in range(code.t)]
    # Restrict generator rows to the chosen bit columns.
    restricted = []
    for g in code.generator:
        bits = 0
        for pos, c in enumerate(cols):
            if (g.bits >> c) & 1:
                bits |= 1 << pos
        restricted.append(bits)
    m = BitMatrix(tuple(restricted), len(cols))
    return gf2.rank(m) == code.k


def constrained_infoset_profile(
    code: LocalCode, symbol_set: list[int] | tuple[int, ...]
) -> ConstrainedProfile:
    """Profile with beta computed over nonzero symbols inside an information set.

    Codewords that vanish on the set are excluded (with an information set
    none do, except the zero word).
    """
    from .errors import NotInformationSetError

    if not information_set_check(code, symbol_set):
        raise NotInformationSetError(
            f"symbols {tuple(symbol_set)} are not an information set of {code.name}"
        )
    return _profile_scan(code, sorted(set(symbol_set)))


@dataclass(frozen=True)
class MarginEntry:
    beta: Fraction
    delta1: float
    target: float
    ratio: float


@dataclass(frozen=True)
class MarginReport:
    """Per-beta comparison of a code's profile against (1-R1)/h(beta)."""

    code_name: str
    r1: float
    worst_ratio: float
    entries: tuple[MarginEntry, ...]


def _entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1 - x) * np.log2(1 - x))


def _margin_report(code: LocalCode, r1: float) -> MarginReport:
    profile = constrained_qary_profile(code)
    entries = []
    worst = float("inf")
    for e in profile.entries:
        delta1 = e.min_qary_weight / code.symbols
        hb = _entropy(float(e.beta))
        target = (1 - r1) / hb if hb > 0 else float("inf")
        ratio = delta1 * hb / (1 - r1) if hb > 0 else float("inf")
        worst = min(worst, ratio)
        entries.append(MarginEntry(e.beta, delta1, target, ratio))
    return MarginReport(code.name, r1, worst, tuple(entries))


def search_constrained_code(
    symbols: int, t: int, r1: float, trials: int, seed: int
) -> tuple[LocalCode, MarginReport]:
    """Best-of-`trials` random code under the constrained-distance figure of merit.

    Score of a code is min over observed beta of delta1(beta)*h(beta)/(1-R1);
    1.0 means every profile point meets the (1-R1)/h(beta) target.
    """
    nbits = symbols * t
    k_exact = r1 * nbits
    k = round(k_exact)
    if abs(k_exact - k) > 1e-9:
        raise ValidationError(f"R1*t*Delta = {k_exact} is not an integer")
    if k < 1:
        raise ValidationError("R1 too small: dimension would be zero")
    if k > 20:
        raise ValidationError(f"dimension {k} exceeds the search cap 20")
    if trials < 1:
        raise ValidationError("trials must be >= 1")
    best: tuple[LocalCode, MarginReport] | None = None
    for trial in range(trials):
        sub = np.random.SeedSequence(entropy=seed, spawn_key=(trial,))
        code = random_code(nbits, k, int(sub.generate_state(1)[0]), t)
        report = _margin_report(code, r1)
        if best is None or report.worst_ratio > best[1].worst_ratio:
            best = (code, report)
    assert best is not None
    return best
