"""Finite colorings of elements, pairs and d-subsets, with the reductions
that move coloring problems between dimensions and between semigroups.

A coloring of arity d is evaluated on the *set* of its d arguments, so a
pair whose endpoints coincide is seen as a singleton (this is what makes
the cardinality coloring the proper/collapse detector).
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Any, Callable

from .semigroups import (
    ElementSequence,
    ImproperSequenceError,
    IndexedUnion,
    Semigroup,
    block_less,
    indexed_sum,
)


def canonical_key(x: Any) -> bytes:
    """Stable byte encoding of an element, for seeded hash colorings."""
    if isinstance(x, bool):
        return b"b:%d" % int(x)
    if isinstance(x, int):
        return b"i:%d" % x
    if isinstance(x, str):
        return b"t:" + x.encode()
    if isinstance(x, IndexedUnion):
        return b"u:" + canonical_key(x.value)
    if isinstance(x, (frozenset, set)):
        parts = sorted(canonical_key(v) for v in x)
        return b"s{" + b",".join(parts) + b"}"
    if isinstance(x, tuple):
        return b"(" + b",".join(canonical_key(v) for v in x) + b")"
    # Last resort: objects that define their own stable key.
    key = getattr(x, "stable_key", None)
    if key is not None:
        return key() if callable(key) else key
    raise TypeError(f"no canonical encoding for {type(x).__name__}")


@dataclass(frozen=True)
class Coloring:
    """Total finite-range function on d-element sets, range {1..k}."""

    arity: int
    palette: int
    fn: Callable[[frozenset], int]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("arity >= 1 required")
        if self.palette < 1:
            raise ValueError("palette size >= 1 required")

    def of_set(self, subject: frozenset) -> int:
        """Color of an already-assembled subject set (1..arity elements)."""
        if not 1 <= len(subject) <= self.arity:
            raise ValueError(f"expected 1..{self.arity} distinct elements, got {len(subject)}")
        c = self.fn(subject)
        if not 1 <= c <= self.palette:
            raise ValueError(f"color {c} outside palette 1..{self.palette}")
        return c

    def of(self, *elements) -> int:
        """Color of the set of the given elements (at most arity many).

        A single frozenset argument to an arity > 1 coloring is taken as
        the subject set itself; for arity 1 it is the element.  Callers
        holding a pre-built subject set should use ``of_set``.
        """
        if len(elements) == 1 and isinstance(elements[0], frozenset) and self.arity > 1:
            return self.of_set(elements[0])
        return self.of_set(frozenset(elements))

    __call__ = of


def constant_coloring(d: int = 1, k: int = 1, color: int = 1) -> Coloring:
    return Coloring(d, k, lambda s: color, name=f"const-{color}")


def parity_coloring(d: int = 1) -> Coloring:
    """Color 1 for even, 2 for odd; for d > 1 the parity of the sum."""
    return Coloring(d, 2, lambda s: 1 + (sum(s) % 2), name="parity")


def mod_coloring(k: int, d: int = 1) -> Coloring:
    return Coloring(d, k, lambda s: 1 + (sum(s) % k), name=f"mod-{k}")


def cardinality_coloring(d: int) -> Coloring:
    """Colors a d-set by how many distinct elements it actually has.

    On pairs this is the proper/collapse detector: color 2 means the
    endpoints differ, color 1 means they collapsed.
    """
    return Coloring(d, d, len, name=f"cardinality-{d}")


def seeded_hash_coloring(k: int, seed: int, d: int = 1) -> Coloring:
    """Reproducible pseudo-random coloring driven by a single seed."""

    def fn(s: frozenset) -> int:
        h = hashlib.blake2b(canonical_key(s), key=b"%d" % seed, digest_size=8)
        return 1 + int.from_bytes(h.digest(), "big") % k

    return Coloring(d, k, fn, name=f"seeded-hash-{k}/{seed}")


def table_coloring(table: dict, d: int, k: int, default: int = 1, name: str = "table") -> Coloring:
    def fn(s: frozenset) -> int:
        key = s if d > 1 else next(iter(s))
        return table.get(key, default)

    return Coloring(d, k, fn, name=name)


def product_coloring(c1: Coloring, c2: Coloring) -> Coloring:
    """Pair coloring (c1, c2) encoded as (c1-1)*k2 + c2, palette k1*k2."""
    if c1.arity != c2.arity:
        raise ValueError(f"arity mismatch: {c1.arity} != {c2.arity}")
    k2 = c2.palette
    return Coloring(
        c1.arity,
        c1.palette * k2,
        lambda s: (c1.fn(s) - 1) * k2 + c2.fn(s),
        name=f"({c1.name} x {c2.name})",
    )


def decode_product(color: int, k2: int) -> tuple:
    """Inverse of the product encoding: color -> (c1, c2)."""
    return ((color - 1) // k2 + 1, (color - 1) % k2 + 1)


def reduce_two_dim_to_one(chi_vertex: Coloring, chi_edge: Coloring, sg: Semigroup) -> Coloring:
    """Collapse a vertex coloring and an edge coloring into one edge coloring.

    The first coordinate colors a pair by the vertex color of its
    enumeration-smaller endpoint; a sequence whose sum graph is
    monochromatic for the result then has (in the limit) a monochromatic
    finite-sums set and a monochromatic sum graph for the originals.
    """
    if chi_vertex.arity != 1:
        raise ValueError("vertex coloring must have arity 1")

    def kappa(s: frozenset) -> int:
        least = min(s, key=sg.rank)
        return chi_vertex.fn(frozenset([least]))

    kappa_coloring = Coloring(2, chi_vertex.palette, kappa, name=f"min[{chi_vertex.name}]")
    edge2 = chi_edge if chi_edge.arity == 2 else Coloring(2, chi_edge.palette, chi_edge.fn, chi_edge.name)
    return product_coloring(kappa_coloring, edge2)


def pullback_to_fin(chi: Coloring, base: ElementSequence) -> Coloring:
    """Pull an edge coloring of the base's semigroup back to blocks.

    kappa({F, H}) = chi({a_F, a_H}) when the blocks are comparable in the
    block order, and the fixed fallback color 1 otherwise.  Queries on
    comparable blocks with colliding sums mean the base is improper at
    that depth, which is an error rather than a silent wrong color.
    """
    if chi.arity != 2:
        raise ValueError("pullback expects an edge coloring (arity 2)")

    def fn(s: frozenset) -> int:
        if len(s) == 1:
            return 1
        F, H = tuple(s)
        if not (block_less(F, H) or block_less(H, F)):
            return 1
        aF, aH = indexed_sum(base, F), indexed_sum(base, H)
        if aF == aH:
            raise ImproperSequenceError(
                f"base improper: a_F == a_H for comparable F={sorted(F)}, H={sorted(H)}")
        return chi.fn(frozenset([aF, aH]))

    return Coloring(2, chi.palette, fn, name=f"pullback[{chi.name}]")


def coloring_from_descriptor(desc: dict) -> Coloring:
    """Build a coloring from a config descriptor.

    Recognized names: constant, parity, mod-k, cardinality, seeded-hash-k.
    """
    if not isinstance(desc, dict) or "name" not in desc:
        raise ValueError("coloring descriptor needs a 'name' field")
    name = desc["name"]
    d = int(desc.get("d", 1))
    if name == "constant":
        return constant_coloring(d, int(desc.get("k", 1)), int(desc.get("color", 1)))
    if name == "parity":
        return parity_coloring(d)
    if name == "mod-k":
        return mod_coloring(int(desc["k"]), d)
    if name == "cardinality":
        return cardinality_coloring(d)
    if name == "seeded-hash-k":
        return seeded_hash_coloring(int(desc["k"]), int(desc.get("seed", 0)), d)
    raise ValueError(f"unknown coloring name: {name!r}")
