"""Semigroups, block-indexed finite sums, sumsequences and sum hypergraphs.

The engine room: everything else in the package is built on folding an
associative operation over blocks (nonempty finite index sets) of a term
sequence.  Blocks are 1-based throughout.  ``F < H`` between blocks means
``max(F) < min(H)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Optional

Block = frozenset  # nonempty frozenset of 1-based indices


class SumgamesError(Exception):
    """Base class for errors raised by this package."""


class ImproperSequenceError(SumgamesError):
    """A sequence required to be proper has colliding block sums."""


class BlockOrderError(SumgamesError):
    """Blocks violate the max < min order."""


def make_block(indices: Iterable[int]) -> Block:
    b = frozenset(int(i) for i in indices)
    if not b:
        raise ValueError("blocks are nonempty")
    if min(b) < 1:
        raise ValueError("block indices are 1-based")
    return b


def block_less(F: Block, H: Block) -> bool:
    """The block order: every index of F below every index of H."""
    return max(F) < min(H)


def block_key(F: Block) -> tuple:
    """Canonical sort key for a block (sorted index tuple)."""
    return tuple(sorted(F))


def blocks_within(n: int, lo: int = 1) -> Iterator[Block]:
    """All nonempty blocks inside {lo..n}, in canonical (sorted-tuple) order."""
    universe = range(lo, n + 1)
    out = []
    for r in range(1, n - lo + 2):
        out.extend(frozenset(c) for c in itertools.combinations(universe, r))
    return iter(sorted(out, key=block_key))


def block_chains(n: int, d: int, lo: int = 1) -> Iterator[tuple]:
    """All chains F_1 < ... < F_d of blocks inside {lo..n}, canonical order."""
    if d == 0:
        yield ()
        return
    for F in blocks_within(n, lo):
        if d == 1:
            yield (F,)
        else:
            for rest in block_chains(n, d - 1, lo=max(F) + 1):
                yield (F,) + rest


@dataclass(frozen=True)
class Semigroup:
    """An associative structure with equality and an enumeration order.

    ``enumeration(i)`` (1-based) injects the naturals into the elements;
    ``rank`` inverts it where defined.  The rank order is what "min" means
    for the vertex-coloring reduction: every element has finitely many
    enumeration-smaller elements.
    """

    kind: str
    combine: Callable[[Any, Any], Any]
    enumeration: Callable[[int], Any]
    rank: Callable[[Any], int]
    equals: Callable[[Any, Any], bool] = field(default=lambda a, b: a == b)

    def fold(self, items) -> Any:
        items = list(items)
        if not items:
            raise ValueError("cannot fold an empty block")
        acc = items[0]
        for x in items[1:]:
            acc = self.combine(acc, x)  # left-to-right, matching a_{i1}+...+a_{ik}
        return acc


def _bits_to_set(i: int) -> frozenset:
    # 1 -> {1}, 2 -> {2}, 3 -> {1,2}, ... (binary digits, 1-based positions)
    out = []
    pos = 1
    while i:
        if i & 1:
            out.append(pos)
        i >>= 1
        pos += 1
    return frozenset(out)


def _set_to_bits(s: frozenset) -> int:
    return sum(1 << (j - 1) for j in s)


def naturals() -> Semigroup:
    """(N, +) with N = {1, 2, ...}; enumeration is the identity."""
    return Semigroup(
        kind="naturals-with-addition",
        combine=lambda a, b: a + b,
        enumeration=lambda i: i,
        rank=lambda x: x,
    )


def finite_sets() -> Semigroup:
    """(Fin, ∪): nonempty finite subsets of N under union.

    Every element is idempotent (e ∪ e = e), which is what makes the
    proper/collapse dichotomy interesting here.  Enumeration is by binary
    encoding: rank(F) = sum of 2^(j-1) over j in F.
    """
    return Semigroup(
        kind="finite-sets-with-union",
        combine=lambda a, b: a | b,
        enumeration=_bits_to_set,
        rank=_set_to_bits,
    )


@dataclass(frozen=True)
class IndexedUnion:
    """A union of indexed generator sets: canonical generator index set
    plus the extensional value.  Equality and hashing are extensional
    (two different generator sets denoting the same value are equal)."""

    gens: frozenset
    value: Any

    def __eq__(self, other):
        if isinstance(other, IndexedUnion):
            return self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash(("IndexedUnion", self.value))

    def __repr__(self):
        return f"U{sorted(self.gens)}"


def indexed_unions(generator_at: Callable[[int], Any], union: Callable[[Any, Any], Any]) -> Semigroup:
    """Unions of indexed generator sets over some universe.

    ``generator_at(i)`` yields the i-th generator's value; ``union`` joins
    values.  The enumeration order lists elements by binary encoding of
    their generator index sets.
    """

    def build(gens: frozenset) -> IndexedUnion:
        vals = [generator_at(i) for i in sorted(gens)]
        acc = vals[0]
        for v in vals[1:]:
            acc = union(acc, v)
        return IndexedUnion(gens=gens, value=acc)

    def combine(a: IndexedUnion, b: IndexedUnion) -> IndexedUnion:
        return IndexedUnion(gens=a.gens | b.gens, value=union(a.value, b.value))

    return Semigroup(
        kind="indexed-set-union-over-universe",
        combine=combine,
        enumeration=lambda i: build(_bits_to_set(i)),
        rank=lambda x: _set_to_bits(x.gens),
    )


@dataclass(frozen=True)
class BlockSequence:
    """Finite sequence of blocks in the block order F_1 < F_2 < ..."""

    blocks: tuple

    def __post_init__(self):
        bs = tuple(make_block(b) for b in self.blocks)
        object.__setattr__(self, "blocks", bs)
        for a, b in zip(bs, bs[1:]):
            if not block_less(a, b):
                raise BlockOrderError(f"blocks out of order: {sorted(a)} !< {sorted(b)}")

    def __len__(self):
        return len(self.blocks)

    def __getitem__(self, i):
        return self.blocks[i]

    def __iter__(self):
        return iter(self.blocks)

    @property
    def max_index(self) -> int:
        return max(self.blocks[-1]) if self.blocks else 0

    def compose(self, outer: "BlockSequence") -> "BlockSequence":
        """Blocks of `outer` taken over self: block j of the result is the
        union of self's blocks at outer's j-th index block."""
        merged = []
        for G in outer:
            merged.append(frozenset().union(*(self.blocks[i - 1] for i in sorted(G))))
        return BlockSequence(tuple(merged))


class ElementSequence:
    """A 1-based sequence of semigroup elements.

    Either a finite tuple of terms or generator-backed (``term_fn``), in
    which case terms are memoized up to the largest index touched.  When
    produced by :func:`take_sumsequence` the sequence remembers its root
    sequence and the blocks relative to that root, so nested sumsequences
    compose.
    """

    def __init__(self, semigroup: Semigroup, terms=None, term_fn=None,
                 base: Optional["ElementSequence"] = None,
                 base_blocks: Optional[BlockSequence] = None):
        if (terms is None) == (term_fn is None):
            raise ValueError("exactly one of terms/term_fn required")
        self.semigroup = semigroup
        self._terms = list(terms) if terms is not None else []
        self._term_fn = term_fn
        self.base = base
        self.base_blocks = base_blocks

    @classmethod
    def from_terms(cls, semigroup: Semigroup, terms) -> "ElementSequence":
        return cls(semigroup, terms=list(terms))

    @classmethod
    def from_fn(cls, semigroup: Semigroup, term_fn) -> "ElementSequence":
        return cls(semigroup, term_fn=term_fn)

    @property
    def length(self) -> Optional[int]:
        """Number of terms for finite sequences, None when generator-backed."""
        return None if self._term_fn else len(self._terms)

    def term(self, i: int):
        if i < 1:
            raise IndexError("term indices are 1-based")
        if self._term_fn is not None:
            while len(self._terms) < i:
                self._terms.append(self._term_fn(len(self._terms) + 1))
            return self._terms[i - 1]
        if i > len(self._terms):
            raise IndexError(f"term {i} out of range (length {len(self._terms)})")
        return self._terms[i - 1]

    def prefix(self, n: int) -> list:
        return [self.term(i) for i in range(1, n + 1)]

    def __repr__(self):
        shown = self._terms[:6]
        tail = ", ..." if (self._term_fn or len(self._terms) > 6) else ""
        return f"ElementSequence({shown}{tail})"


def indexed_sum(seq: ElementSequence, F: Block):
    """a_F: the combine-fold of seq's terms at F's indices, in increasing order."""
    F = make_block(F)
    return seq.semigroup.fold(seq.term(i) for i in sorted(F))


def fs_enumerate(seq: ElementSequence, n: int) -> dict:
    """All finite sums a_F for nonempty F ⊆ {1..n}, keyed by block.

    Returns 2^n - 1 entries; n = 0 gives the empty mapping.  Computed
    incrementally: a_{F ∪ {j}} = a_F + a_j for max(F) < j.
    """
    sums: dict = {}
    for j in range(1, n + 1):
        aj = seq.term(j)
        new = {frozenset([j]): aj}
        for F, val in sums.items():
            if max(F) < j:
                new[F | {j}] = seq.semigroup.combine(val, aj)
        sums.update(new)
    return sums


def take_sumsequence(seq: ElementSequence, blocks: BlockSequence) -> ElementSequence:
    """The sumsequence a_{F_1}, a_{F_2}, ... with provenance recorded.

    If seq is itself a sumsequence of some root, the recorded blocks are
    composed so the result is presented as a sumsequence of the root
    (the sumsequence relation is transitive).
    """
    if not isinstance(blocks, BlockSequence):
        blocks = BlockSequence(tuple(blocks))
    terms = [indexed_sum(seq, F) for F in blocks]
    if seq.base is not None and seq.base_blocks is not None:
        root = seq.base
        root_blocks = seq.base_blocks.compose(blocks)
    else:
        root = seq
        root_blocks = blocks
    return ElementSequence(seq.semigroup, terms=terms, base=root, base_blocks=root_blocks)


def proper_violation(seq: ElementSequence, depth: int):
    """Least pair of blocks F < H within {1..depth} with a_F == a_H, or None.

    "Least" is lexicographic on the pair of sorted index tuples.  Only
    blocks sharing a value can violate, so the scan groups by value first
    instead of walking all pairs.
    """
    sums = fs_enumerate(seq, depth)
    groups: dict = {}
    for F, v in sums.items():
        groups.setdefault(v, []).append(F)
    best = None
    best_key = None
    for blocks in groups.values():
        if len(blocks) < 2:
            continue
        for F in blocks:
            for H in blocks:
                if block_less(F, H):
                    key = (block_key(F), block_key(H))
                    if best_key is None or key < best_key:
                        best, best_key = (F, H), key
    return best


def is_proper_up_to(seq: ElementSequence, depth: int) -> bool:
    """True iff a_F != a_H for all blocks F < H within {1..depth}."""
    return proper_violation(seq, depth) is None


def sum_hypergraph(seq: ElementSequence, depth: int, d: int) -> list:
    """All d-element sum sets {a_{F_1}, ..., a_{F_d}} over block chains
    F_1 < ... < F_d inside {1..depth}, deduplicated, in canonical order.

    d = 1 gives the finite-sums set (as singletons), d = 2 the sum graph.
    Rejects sequences that are improper at this depth: colliding sums
    would degenerate the edge sets.
    """
    if d < 1:
        raise ValueError("d >= 1 required")
    bad = proper_violation(seq, depth)
    if bad is not None:
        raise ImproperSequenceError(
            f"sequence improper at depth {depth}: a_F == a_H for "
            f"F={sorted(bad[0])}, H={sorted(bad[1])}")
    sums = fs_enumerate(seq, depth)
    seen = set()
    out = []
    for chain in block_chains(depth, d):
        edge = frozenset(sums[F] for F in chain)
        if edge not in seen:
            seen.add(edge)
            out.append(edge)
    return out
