"""Linear codes on explicitly labeled coordinate sets.

A code stores its index set as an ordered tuple of integer labels plus
a generator matrix kept in rref, so equal codes built through different
routes compare equal. Labels come from a session-global allocator and
are never reissued, which is what lets decompositions invent new
coordinates (state alphabets, shared simplex coordinates) without ever
colliding with existing ones.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .gfq import (
    FieldSpec,
    FqMatrix,
    nullspace,
    rank,
    row_basis,
    row_space_contains,
    rref,
    vstack,
)

DEFAULT_ENUM_BOUND = 2**24


class LabelAllocator:
    """Monotonic counter issuing globally unique coordinate labels."""

    def __init__(self):
        self._lock = threading.Lock()
        self._next = 0

    def fresh(self, n: int) -> tuple[int, ...]:
        with self._lock:
            start = self._next
            self._next += n
        return tuple(range(start, start + n))

    def reserve(self, labels: Iterable[int]) -> None:
        """Mark externally supplied labels as used (e.g. read from a file)."""
        top = max(labels, default=-1)
        with self._lock:
            if top >= self._next:
                self._next = top + 1


LABELS = LabelAllocator()


def fresh_labels(n: int) -> tuple[int, ...]:
    return LABELS.fresh(n)


@dataclass(frozen=True)
class LinearCode:
    """A linear code: prime field, ordered label tuple, rref generator.

    `gen` always has full row rank and one column per label, in label
    order. Equality is as subspaces: label sets must coincide and the
    generators must agree after aligning columns by sorted label.
    """

    field: FieldSpec
    labels: tuple[int, ...]
    gen: FqMatrix
    _key: tuple = dc_field(init=False, repr=False, compare=False, default=None)
    # per-instance cache for stored-order-sensitive derived data (e.g. the
    # parity-check matrix); safe because instances are immutable
    _cache: dict = dc_field(init=False, repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be pairwise distinct")
        if self.gen.cols != len(self.labels):
            raise ValueError("generator width must match label count")
        if any(l < 0 for l in self.labels):
            raise ValueError("labels must be non-negative")
        LABELS.reserve(self.labels)

    @classmethod
    def from_generators(cls, field: FieldSpec, labels: Sequence[int], rows) -> "LinearCode":
        """Canonicalize an arbitrary generating set (rref, zero rows dropped)."""
        labels = tuple(labels)
        if isinstance(rows, FqMatrix):
            mat = rows
        else:
            arr = np.array(list(rows), dtype=np.int64)
            if arr.size == 0:
                arr = arr.reshape(0, len(labels))
            mat = FqMatrix(field, arr)
        return cls(field, labels, row_basis(mat))

    @classmethod
    def zero(cls, field: FieldSpec, labels: Sequence[int]) -> "LinearCode":
        return cls(field, tuple(labels), FqMatrix.zeros(field, 0, len(labels)))

    @classmethod
    def full_space(cls, field: FieldSpec, labels: Sequence[int]) -> "LinearCode":
        return cls(field, tuple(labels), FqMatrix.identity(field, len(labels)))

    @property
    def dim(self) -> int:
        return self.gen.rows

    @property
    def length(self) -> int:
        return len(self.labels)

    def canonical_key(self) -> tuple:
        key = object.__getattribute__(self, "_key")
        if key is None:
            order = sorted(range(self.length), key=lambda i: self.labels[i])
            aligned = row_basis(self.gen.take_columns(order))
            key = (self.field.q, tuple(sorted(self.labels)), aligned.array.tobytes())
            object.__setattr__(self, "_key", key)
        return key

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.canonical_key() == other.canonical_key()

    def __hash__(self) -> int:
        return hash(self.canonical_key())

    def __repr__(self) -> str:
        return f"LinearCode(q={self.field.q}, n={self.length}, k={self.dim})"

    def label_positions(self, subset: Iterable[int]) -> list[int]:
        """Positions of the given labels, in stored label order."""
        want = set(subset)
        missing = want - set(self.labels)
        if missing:
            raise KeyError(f"labels not in index set: {sorted(missing)}")
        return [i for i, l in enumerate(self.labels) if l in want]

    def gen_in_order(self, labels: Sequence[int]) -> FqMatrix:
        """Generator with columns permuted into the given label order."""
        if set(labels) != set(self.labels) or len(labels) != self.length:
            raise ValueError("label order must be a permutation of the index set")
        idx = {l: i for i, l in enumerate(self.labels)}
        return self.gen.take_columns([idx[l] for l in labels])

    def contains_word(self, word: np.ndarray) -> bool:
        h = parity_check(self)
        return not np.any((h.array.astype(np.int64) @ np.asarray(word, dtype=np.int64)) % self.field.q)

    def contains_code(self, other: "LinearCode") -> bool:
        """Subspace containment; other must live on the same label set."""
        if set(other.labels) != set(self.labels):
            raise ValueError("label sets differ")
        order = [other.labels.index(l) for l in self.labels]
        return row_space_contains(self.gen, other.gen.take_columns(order))


def parity_check(c: LinearCode) -> FqMatrix:
    """Parity-check matrix: basis of the dual as rows, in stored label order.

    Cached on the instance, never across equal codes: two equal codes
    may store their columns in different label orders, and the rows
    here must align with this instance's order.
    """
    cached = c._cache.get("parity")
    if cached is None:
        cached = nullspace(c.gen)
        c._cache["parity"] = cached
    return cached


def dim(c: LinearCode) -> int:
    return c.dim


def project(c: LinearCode, subset: Iterable[int]) -> LinearCode:
    """Projection onto a label subset: restrict every codeword to it."""
    pos = c.label_positions(subset)
    labels = tuple(c.labels[i] for i in pos)
    return LinearCode.from_generators(c.field, labels, c.gen.take_columns(pos))


def cross_section(c: LinearCode, subset: Iterable[int]) -> LinearCode:
    """Cross-section onto a label subset: codewords vanishing off it, restricted.

    Computed by pivoting the complement columns first; the rref rows
    whose pivots fall inside the subset are exactly the vanishing ones.
    """
    pos = c.label_positions(subset)
    pos_set = set(pos)
    comp = [i for i in range(c.length) if i not in pos_set]
    reordered = c.gen.take_columns(comp + pos)
    red, pivots = rref(reordered)
    keep = [r for r, p in enumerate(pivots) if p >= len(comp)]
    labels = tuple(c.labels[i] for i in pos)
    sub = red.take_rows(keep).take_columns(range(len(comp), c.length))
    return LinearCode.from_generators(c.field, labels, sub)


def dual(c: LinearCode) -> LinearCode:
    """Dual code on the same label sequence."""
    return LinearCode.from_generators(c.field, c.labels, nullspace(c.gen))


def direct_sum(cs: Sequence[LinearCode]) -> LinearCode:
    """Direct sum of codes on pairwise-disjoint label sets."""
    if not cs:
        raise ValueError("need at least one code")
    field = cs[0].field
    if any(c.field != field for c in cs):
        raise ValueError("field mismatch")
    seen: set[int] = set()
    for c in cs:
        s = set(c.labels)
        if seen & s:
            raise ValueError(f"overlapping label sets: {sorted(seen & s)}")
        seen |= s
    labels = tuple(l for c in cs for l in c.labels)
    total = len(labels)
    block = np.zeros((sum(c.dim for c in cs), total), dtype=np.int64)
    r = 0
    off = 0
    for c in cs:
        block[r : r + c.dim, off : off + c.length] = c.gen.array
        r += c.dim
        off += c.length
    return LinearCode.from_generators(field, labels, block)


def embed(c: LinearCode, ambient_labels: Sequence[int]) -> LinearCode:
    """View c inside a larger label set, zero on the new coordinates."""
    ambient = tuple(ambient_labels)
    pos = {l: i for i, l in enumerate(ambient)}
    arr = np.zeros((c.dim, len(ambient)), dtype=np.int64)
    for j, l in enumerate(c.labels):
        arr[:, pos[l]] = c.gen.array[:, j]
    return LinearCode.from_generators(c.field, ambient, arr)


def code_sum(a: LinearCode, b: LinearCode) -> LinearCode:
    """Sum of two subspaces on the same label set."""
    if set(a.labels) != set(b.labels):
        raise ValueError("label sets differ")
    order = [b.labels.index(l) for l in a.labels]
    stacked = vstack([a.gen, b.gen.take_columns(order)])
    return LinearCode.from_generators(a.field, a.labels, stacked)


def code_intersection(a: LinearCode, b: LinearCode) -> LinearCode:
    """Intersection of two subspaces on the same label set."""
    return dual(code_sum(dual(a), dual(b)))


def iter_codeword_chunks(c: LinearCode, chunk: int = 1 << 14) -> Iterator[np.ndarray]:
    """All q^k codewords, in lexicographic coefficient order, in chunks.

    Dot products fit exactly in float64 for q <= 251 and k <= 2**24,
    so the matmul can go through BLAS.
    """
    q, k, n = c.field.q, c.dim, c.length
    total = q**k
    gen = c.gen.array.astype(np.float64)
    radix = q ** np.arange(k - 1, -1, -1, dtype=np.float64) if k else np.zeros(0)
    start = 0
    while start < total:
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.float64)
        if k:
            coeffs = (idx[:, None] // radix[None, :]) % q
            words = (coeffs @ gen) % q
        else:
            words = np.zeros((stop - start, n))
        yield words.astype(np.uint8)
        start = stop


def min_weight(c: LinearCode, enum_bound: int = DEFAULT_ENUM_BOUND) -> int:
    """Minimum Hamming weight over nonzero codewords, by exhaustive enumeration."""
    if c.dim < 1:
        raise ValueError("the zero code has no nonzero codeword")
    if c.field.q**c.dim > enum_bound:
        raise ValueError(
            f"enumeration bound exceeded: q^k = {c.field.q}**{c.dim} > {enum_bound}"
        )
    best = c.length + 1
    first = True
    for words in iter_codeword_chunks(c):
        w = np.count_nonzero(words, axis=1)
        if first:
            w = w[1:]  # drop the zero codeword (coefficient vector 0)
            first = False
        if w.size:
            best = min(best, int(w.min()))
    return best


# ---------------------------------------------------------------------------
# file format: line 1 "q <prime>", line 2 "labels <l1> ... <ln>",
# then one generator row per line.


def write_code(c: LinearCode) -> str:
    lines = [f"q {c.field.q}", "labels " + " ".join(str(l) for l in c.labels)]
    for row in c.gen.tolist():
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def read_code(text: str) -> LinearCode:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if len(lines) < 2 or not lines[0].startswith("q ") or not lines[1].startswith("labels"):
        raise ValueError("malformed code file")
    q = int(lines[0].split()[1])
    labels = tuple(int(t) for t in lines[1].split()[1:])
    rows = [[int(t) for t in ln.split()] for ln in lines[2:]]
    field = FieldSpec(q)
    if rows and any(len(r) != len(labels) for r in rows):
        raise ValueError("generator row width does not match label count")
    arr = np.array(rows, dtype=np.int64) if rows else np.zeros((0, len(labels)), dtype=np.int64)
    # stored codes are written canonically, so re-canonicalizing is a no-op
    # for our own files but makes foreign generator sets safe to load
    return LinearCode.from_generators(field, labels, arr)
