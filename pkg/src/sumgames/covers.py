"""Spaces, their subsets, covers, and the cover-family classifiers.

Executable instances are discrete: finite point sets, or the symbolic
naturals where sets are either finite or cofinite (finite complement).
The classical cover families are parameterized into finite-horizon
surrogates: point-infinite (Λ) by a multiplicity threshold t, γ by an
exclusion threshold f, ω by a subset-size threshold s, and ascending by a
minimum strict-chain length.  Verdicts are three-valued; a finite horizon
never certifies the infinite statement.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .verdicts import Verdict


@dataclass(frozen=True)
class SSet:
    """A subset of a space: finite extensional, or cofinite over the
    symbolic naturals (held as its finite complement)."""

    kind: str          # "finite" | "cofinite"
    data: frozenset    # the set itself, or the excluded complement

    def __post_init__(self):
        if self.kind not in ("finite", "cofinite"):
            raise ValueError(f"unknown SSet kind {self.kind!r}")
        object.__setattr__(self, "data", frozenset(self.data))

    @classmethod
    def finite(cls, items: Iterable) -> "SSet":
        return cls("finite", frozenset(items))

    @classmethod
    def interval(cls, lo: int, hi: int) -> "SSet":
        return cls("finite", frozenset(range(lo, hi + 1)))

    @classmethod
    def cofinite(cls, excluded: Iterable) -> "SSet":
        return cls("cofinite", frozenset(excluded))

    def contains(self, p) -> bool:
        return (p in self.data) if self.kind == "finite" else (p not in self.data)

    def restrict(self, points: Sequence) -> frozenset:
        return frozenset(p for p in points if self.contains(p))

    @property
    def is_whole_naturals(self) -> bool:
        return self.kind == "cofinite" and not self.data

    def union(self, other: "SSet") -> "SSet":
        if self.kind == "finite" and other.kind == "finite":
            return SSet.finite(self.data | other.data)
        if self.kind == "cofinite" and other.kind == "cofinite":
            return SSet.cofinite(self.data & other.data)
        fin, cof = (self, other) if self.kind == "finite" else (other, self)
        return SSet.cofinite(cof.data - fin.data)

    def intersect(self, other: "SSet") -> "SSet":
        if self.kind == "finite" and other.kind == "finite":
            return SSet.finite(self.data & other.data)
        if self.kind == "cofinite" and other.kind == "cofinite":
            return SSet.cofinite(self.data | other.data)
        fin, cof = (self, other) if self.kind == "finite" else (other, self)
        return SSet.finite(p for p in fin.data if cof.contains(p))

    def issubset(self, other: "SSet") -> bool:
        if self.kind == "finite":
            return all(other.contains(p) for p in self.data)
        if other.kind == "finite":
            return False  # a cofinite set of naturals is infinite
        return other.data <= self.data

    def strict_subset(self, other: "SSet") -> bool:
        return self.issubset(other) and self != other

    def least(self, start: int = 0):
        """Least natural number in the set (symbolic-naturals sets only)."""
        if self.kind == "finite":
            cands = [p for p in self.data if p >= start]
            if not cands:
                raise ValueError("empty finite set has no least element")
            return min(cands)
        x = start
        while x in self.data:
            x += 1
        return x

    def size_key(self) -> tuple:
        # cofinite sets dominate all finite ones; fewer exclusions = bigger
        if self.kind == "cofinite":
            return (1, -len(self.data))
        return (0, len(self.data))

    def stable_key(self) -> bytes:
        inner = b",".join(b"%d" % x for x in sorted(self.data))
        return self.kind.encode() + b"{" + inner + b"}"

    def __repr__(self):
        inside = sorted(self.data)
        return f"~{inside}" if self.kind == "cofinite" else f"{inside}"


@dataclass(frozen=True)
class Space:
    """A discrete space: an explicit finite point set, or the symbolic
    naturals sampled up to a horizon."""

    kind: str                      # "finite" | "naturals"
    points: Optional[tuple] = None

    @classmethod
    def finite_points(cls, points: Iterable) -> "Space":
        return cls("finite", tuple(points))

    @classmethod
    def naturals(cls) -> "Space":
        return cls("naturals")

    def points_up_to(self, horizon: int) -> tuple:
        if self.kind == "finite":
            return self.points[:horizon] if horizon else self.points
        return tuple(range(horizon))

    def whole_set(self, sset: SSet, horizon: int) -> bool:
        """Is the set the whole space?  Intensional for the naturals."""
        if self.kind == "naturals":
            return sset.is_whole_naturals
        return all(sset.contains(p) for p in self.points)


class CoverKind(enum.Enum):
    OP = "op"            # a (countable) cover
    ASC = "asc"          # contains an ascending cover
    LAMBDA = "lambda"    # point-infinite (>= t members per point)
    OMEGA = "omega"      # every small finite subset inside one member
    GAMMA = "gamma"      # each point outside <= f members


class Cover:
    """A sequence of space subsets.  Finite list or generator-backed
    (1-based ``set_fn``), optionally with an escape-point witness
    certifying "no finite subcover" on symbolic spaces."""

    def __init__(self, space: Space, sets: Optional[Sequence[SSet]] = None,
                 set_fn: Optional[Callable[[int], SSet]] = None,
                 name: str = "", escape_fn: Optional[Callable[[int], object]] = None):
        if (sets is None) == (set_fn is None):
            raise ValueError("exactly one of sets/set_fn required")
        self.space = space
        self._sets = list(sets) if sets is not None else []
        self._set_fn = set_fn
        self.name = name
        self.escape_fn = escape_fn

    @property
    def length(self) -> Optional[int]:
        return None if self._set_fn else len(self._sets)

    def set_at(self, i: int) -> SSet:
        if i < 1:
            raise IndexError("cover sets are 1-based")
        if self._set_fn is not None:
            while len(self._sets) < i:
                self._sets.append(self._set_fn(len(self._sets) + 1))
            return self._sets[i - 1]
        if i > len(self._sets):
            raise IndexError(f"cover has only {len(self._sets)} sets")
        return self._sets[i - 1]

    def prefix(self, n: int) -> list:
        return [self.set_at(i) for i in range(1, n + 1)]

    def prefix_length(self, horizon: int) -> int:
        return self.length if self.length is not None else horizon

    def __repr__(self):
        return f"Cover({self.name or 'anonymous'})"


def interval_cover(space: Space, name: str = "intervals") -> Cover:
    """[0..n] for n = 1, 2, ...; ascending, no finite subcover over the
    naturals (escape point n+1 past the n-th union)."""
    return Cover(space, set_fn=lambda i: SSet.interval(0, i), name=name,
                 escape_fn=lambda n: n + 1)


def cofinite_cover(space: Space, name: str = "cofinite") -> Cover:
    """The sets naturals-minus-{n}, n = 1, 2, ...; a gamma cover."""
    return Cover(space, set_fn=lambda i: SSet.cofinite({i}), name=name)


def _ascending_chain_exists(sets: list, points: tuple, min_chain: int) -> bool:
    """Longest strict-superset chain over horizon restrictions that ends in
    a covering set; strictness skips stalls automatically.

    Only subsequences of the given enumeration are considered; covers whose
    ascending subcover appears under a reordering can be missed at small
    horizons.
    """
    restr = [s.restrict(points) for s in sets]
    target = frozenset(points)
    n = len(sets)
    best = [1] * n
    for i in range(n):
        for j in range(i):
            if restr[j] < restr[i]:
                best[i] = max(best[i], best[j] + 1)
    return any(best[i] >= min_chain and restr[i] == target for i in range(n))


def classify_cover(cover: Cover, kind: CoverKind, horizon: int,
                   t: int = 2, s: int = 2, f: int = 2,
                   min_chain: int = 2) -> Verdict:
    """Classify a cover prefix against a family at the given horizon.

    Failures are definitive only where adding more sets cannot help
    (finite covers, or the gamma exclusion count); positive verdicts mean
    "holds at this horizon".
    """
    points = cover.space.points_up_to(horizon)
    n_sets = cover.prefix_length(horizon)
    sets = cover.prefix(n_sets)
    finite_cover = cover.length is not None
    short_fail = Verdict.FAILS if finite_cover else Verdict.UNKNOWN

    covered = set()
    for ss in sets:
        covered.update(ss.restrict(points))
    is_cover = covered >= set(points)

    if kind is CoverKind.OP:
        return Verdict.HOLDS if is_cover else short_fail

    if kind is CoverKind.ASC:
        if not is_cover:
            return short_fail
        return (Verdict.HOLDS
                if _ascending_chain_exists(sets, points, min_chain) else short_fail)

    if kind is CoverKind.LAMBDA:
        mult = {p: sum(1 for ss in sets if ss.contains(p)) for p in points}
        return Verdict.HOLDS if all(v >= t for v in mult.values()) else short_fail

    if kind is CoverKind.OMEGA:
        if any(cover.space.whole_set(ss, horizon) for ss in sets):
            return Verdict.FAILS
        for r in range(1, s + 1):
            for combo in itertools.combinations(points, r):
                if not any(all(ss.contains(p) for p in combo) for ss in sets):
                    return short_fail
        return Verdict.HOLDS

    if kind is CoverKind.GAMMA:
        # exclusion counts only grow with the prefix, so > f is definitive
        for p in points:
            if sum(1 for ss in sets if not ss.contains(p)) > f:
                return Verdict.FAILS
        if not is_cover:
            return short_fail
        return Verdict.HOLDS

    raise ValueError(f"unknown cover kind {kind!r}")


@dataclass
class SubcoverReport:
    kind: str                      # subcover | no-subcover-certified | not-cover | unknown
    indices: Optional[tuple] = None
    escapes_checked: int = 0

    def __str__(self):
        return f"SubcoverReport({self.kind}, indices={self.indices})"


def has_finite_subcover(cover: Cover, horizon: int, max_size: int) -> SubcoverReport:
    """Search for a small subfamily covering the horizon points; on
    symbolic spaces an escape-point witness instead certifies that the true
    cover has no finite subcover (the horizon restriction always has one)."""
    points = cover.space.points_up_to(horizon)
    n_sets = cover.prefix_length(horizon)
    sets = cover.prefix(n_sets)

    covered = set()
    for ss in sets:
        covered.update(ss.restrict(points))
    if covered < set(points):
        return SubcoverReport("not-cover")

    if cover.escape_fn is not None and cover.space.kind == "naturals":
        ok = 0
        for n in range(1, n_sets + 1):
            x = cover.escape_fn(n)
            if any(cover.set_at(i).contains(x) for i in range(1, n + 1)):
                break
            ok += 1
        if ok == n_sets:
            return SubcoverReport("no-subcover-certified", escapes_checked=ok)

    target = set(points)
    for size in range(1, max_size + 1):
        for combo in itertools.combinations(range(1, n_sets + 1), size):
            got = set()
            for i in combo:
                got.update(sets[i - 1].restrict(points))
            if got >= target:
                return SubcoverReport("subcover", indices=combo)
    return SubcoverReport("unknown")


def intersect_ascending(covers: Sequence[Cover], horizon: int,
                        min_chain: int = 2) -> Cover:
    """Pointwise intersections of ascending covers; ascending again at the
    same horizon (a chain may stall where inputs grow at different spots,
    and stalled duplicates are skipped by the strict-chain classifier)."""
    covers = list(covers)
    if not covers:
        raise ValueError("need at least one cover")
    for c in covers:
        v = classify_cover(c, CoverKind.ASC, horizon, min_chain=min_chain)
        if v is not Verdict.HOLDS:
            raise ValueError(f"input {c!r} not ascending at horizon {horizon}: {v}")
    lengths = [c.prefix_length(horizon) for c in covers]
    n = min(lengths)
    space = covers[0].space

    sets = []
    for i in range(1, n + 1):
        acc = covers[0].set_at(i)
        for c in covers[1:]:
            acc = acc.intersect(c.set_at(i))
        sets.append(acc)
    return Cover(space, sets=sets, name="∩(" + ",".join(c.name for c in covers) + ")")
