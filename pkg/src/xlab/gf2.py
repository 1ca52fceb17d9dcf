"""Exact GF(2) linear algebra on int bitsets.

Vectors and matrix rows are Python ints with LSB = coordinate 0, so row
operations are word-parallel XORs regardless of width.  Exhaustive codeword
scans switch to packed numpy words when the block length fits in 64 bits.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import DimensionTooLargeError, ValidationError

# Hard cap on exhaustive enumeration: 2^28 words keeps desk-scale oracles
# under a minute with the packed numpy scan.
ENUMERATION_CAP = 28

# Chunk size (log2) for the packed scan; bounds peak memory at ~32 MB.
_CHUNK_BITS = 22


@dataclass(frozen=True)
class BitVector:
    """Immutable GF(2) vector of fixed length."""

    length: int
    bits: int

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValidationError(f"negative length {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise ValidationError("bits outside vector length")

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length, 0)

    @classmethod
    def from01(cls, text: str) -> "BitVector":
        """Parse '0101...' with coordinate 0 first."""
        if set(text) - {"0", "1"}:
            raise ValidationError(f"not a 0/1 string: {text!r}")
        bits = 0
        for i, ch in enumerate(text):
            if ch == "1":
                bits |= 1 << i
        return cls(len(text), bits)

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> "BitVector":
        bits = 0
        for i in support:
            if not 0 <= i < length:
                raise ValidationError(f"support index {i} out of range")
            bits |= 1 << i
        return cls(length, bits)

    def to01(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.length))

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def bit(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise ValidationError(f"index {i} out of range")
        return (self.bits >> i) & 1

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.length) if (self.bits >> i) & 1)

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValidationError("length mismatch in xor")
        return BitVector(self.length, self.bits ^ other.bits)


@dataclass(frozen=True)
class BitMatrix:
    """Immutable GF(2) matrix, rows stored as int bitsets."""

    rows: tuple[int, ...]
    cols: int

    def __post_init__(self) -> None:
        if self.cols < 0:
            raise ValidationError("negative column count")
        for r in self.rows:
            if r < 0 or r >> self.cols:
                raise ValidationError("row bits outside column count")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def from_vectors(cls, vectors: Iterable[BitVector], cols: int | None = None) -> "BitMatrix":
        vs = list(vectors)
        if cols is None:
            if not vs:
                raise ValidationError("cannot infer column count from no rows")
            cols = vs[0].length
        for v in vs:
            if v.length != cols:
                raise ValidationError("row length mismatch")
        return cls(tuple(v.bits for v in vs), cols)

    @classmethod
    def from_strings(cls, rows: Iterable[str]) -> "BitMatrix":
        return cls.from_vectors([BitVector.from01(r) for r in rows])

    def row_vectors(self) -> list[BitVector]:
        return [BitVector(self.cols, r) for r in self.rows]

    def mul_vec(self, v: BitVector) -> BitVector:
        """Matrix times column vector over GF(2)."""
        if v.length != self.cols:
            raise ValidationError("length mismatch in mul_vec")
        out = 0
        for i, r in enumerate(self.rows):
            if (r & v.bits).bit_count() & 1:
                out |= 1 << i
        return BitVector(self.nrows, out)

    def annihilates(self, v: BitVector) -> bool:
        if v.length != self.cols:
            raise ValidationError("length mismatch")
        return all((r & v.bits).bit_count() % 2 == 0 for r in self.rows)

    def stack(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.cols:
            raise ValidationError("column mismatch in stack")
        return BitMatrix(self.rows + other.rows, self.cols)

    def to_text(self) -> str:
        """External text format: 'rows cols' header then one 0/1 line per row."""
        lines = [f"{self.nrows} {self.cols}"]
        for r in self.rows:
            lines.append("".join("1" if (r >> c) & 1 else "0" for c in range(self.cols)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BitMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValidationError("empty matrix text")
        try:
            nrows, cols = (int(tok) for tok in lines[0].split())
        except ValueError as exc:
            raise ValidationError(f"bad matrix header {lines[0]!r}") from exc
        if len(lines) - 1 != nrows:
            raise ValidationError("row count does not match header")
        vecs = []
        for ln in lines[1:]:
            if len(ln) != cols:
                raise ValidationError("row width does not match header")
            vecs.append(BitVector.from01(ln))
        return cls.from_vectors(vecs, cols)


@dataclass(frozen=True)
class QaryView:
    """A bit vector read as consecutive t-bit symbols (q = 2^t)."""

    vector: BitVector
    t: int

    def __post_init__(self) -> None:
        if self.t < 1:
            raise ValidationError("symbol width t must be >= 1")
        if self.vector.length % self.t != 0:
            raise ValidationError("vector length not divisible by t")

    @property
    def symbols(self) -> int:
        return self.vector.length // self.t

    def block(self, i: int) -> int:
        if not 0 <= i < self.symbols:
            raise ValidationError(f"symbol index {i} out of range")
        return (self.vector.bits >> (i * self.t)) & ((1 << self.t) - 1)


def qary_weight(view: QaryView) -> int:
    """Number of nonzero t-bit symbols."""
    return sum(1 for i in range(view.symbols) if view.block(i))


def _rref(rows: list[int], cols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; deterministic leftmost-pivot order."""
    work = list(rows)
    pivots: list[int] = []
    rank = 0
    for col in range(cols):
        pivot = None
        for r in range(rank, len(work)):
            if (work[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for r in range(len(work)):
            if r != rank and ((work[r] >> col) & 1):
                work[r] ^= work[rank]
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return work[:rank], pivots


def rank(m: BitMatrix) -> int:
    """GF(2) row rank."""
    return len(_rref(list(m.rows), m.cols)[1])


def nullspace_basis(m: BitMatrix) -> list[BitVector]:
    """Basis of the right kernel {x : Mx = 0}, one vector per free column.

    Free columns are processed in ascending order, so the basis is
    reproducible for a given matrix.
    """
    reduced, pivots = _rref(list(m.rows), m.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        bits = 1 << free
        for i, pc in enumerate(pivots):
            if (reduced[i] >> free) & 1:
                bits |= 1 << pc
        basis.append(BitVector(m.cols, bits))
    return basis


def _check_cap(k: int) -> None:
    if k > ENUMERATION_CAP:
        raise DimensionTooLargeError(
            f"dimension {k} exceeds enumeration cap {ENUMERATION_CAP}"
        )


def enumerate_codewords(basis: list[BitVector], length: int | None = None) -> Iterator[BitVector]:
    """Yield all 2^k span elements, zero first, in Gray-code order.

    Step i flips basis vector number ctz(i), so consecutive words differ by
    exactly one generator; the order is deterministic.
    """
    _check_cap(len(basis))
    if not basis:
        yield BitVector(length if length is not None else 0, 0)
        return
    length = basis[0].length
    for v in basis:
        if v.length != length:
            raise ValidationError("basis length mismatch")
    state = 0
    yield BitVector(length, 0)
    raw = [v.bits for v in basis]
    for i in range(1, 1 << len(basis)):
        state ^= raw[(i & -i).bit_length() - 1]
        yield BitVector(length, state)


def _packed_word_chunks(raw: list[int], length: int) -> Iterator[np.ndarray]:
    """Yield uint64 chunks covering the whole span (length <= 64 only)."""
    k = len(raw)
    low = min(k, _CHUNK_BITS)
    table = np.zeros(1 << low, dtype=np.uint64)
    for i in range(low):
        half = 1 << i
        table[half : 2 * half] = table[:half] ^ np.uint64(raw[i])
    if k <= low:
        yield table
        return
    prefix = 0
    yield table
    for i in range(1, 1 << (k - low)):
        prefix ^= raw[low + (i & -i).bit_length() - 1]
        yield table ^ np.uint64(prefix)


def weight_distribution(basis: list[BitVector], length: int | None = None) -> tuple[int, ...]:
    """Coefficients A_0..A_n of the weight enumerator of the span."""
    _check_cap(len(basis))
    if length is None:
        if not basis:
            raise ValidationError("length needed for an empty basis")
        length = basis[0].length
    counts = np.zeros(length + 1, dtype=np.int64)
    raw = [v.bits for v in basis]
    if length <= 64:
        for chunk in _packed_word_chunks(raw, length):
            w = np.bitwise_count(chunk)
            counts += np.bincount(w.astype(np.int64), minlength=length + 1)
    else:
        state = 0
        counts[0] += 1
        for i in range(1, 1 << len(raw)):
            state ^= raw[(i & -i).bit_length() - 1]
            counts[state.bit_count()] += 1
    return tuple(int(c) for c in counts)


def weight_enumerator(basis: list[BitVector], length: int | None = None) -> tuple[int, ...]:
    """Alias for weight_distribution; A_w = number of weight-w span elements."""
    return weight_distribution(basis, length)


def min_distance(basis: list[BitVector]) -> int:
    """Minimum weight over nonzero span elements (exhaustive)."""
    _check_cap(len(basis))
    if not basis:
        raise ValidationError("zero code has no minimum distance")
    length = basis[0].length
    raw = [v.bits for v in basis]
    if length <= 64:
        best = length + 1
        first = True
        for chunk in _packed_word_chunks(raw, length):
            w = np.bitwise_count(chunk).astype(np.int64)
            if first:
                w = w[1:]  # skip the zero word
                first = False
            if w.size:
                best = min(best, int(w.min()))
        return best
    best = length + 1
    state = 0
    for i in range(1, 1 << len(raw)):
        state ^= raw[(i & -i).bit_length() - 1]
        w = state.bit_count()
        if w < best:
            best = w
    return best
