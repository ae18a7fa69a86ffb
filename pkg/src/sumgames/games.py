"""Two-player selection games: the referee, transcripts, judging, and the
two strategy-transfer constructions.

Alice plays a collection each inning (a set of points, or a cover); Bob
selects one element (single-selection game) or finitely many
(finite-selection game).  The referee validates every move against the
preceding Alice move, so accepted transcripts satisfy the containment
condition by construction.  Games are finite-horizon: a win verdict at
horizon H never claims the infinite-game outcome.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .covers import Cover, CoverKind, SSet, Space, classify_cover
from .verdicts import Verdict


class Mode(enum.Enum):
    G1 = "g1"      # Bob picks one element per inning
    GFIN = "gfin"  # Bob picks a finite subset per inning


@dataclass
class SetMove:
    """Alice plays a set of points."""

    sset: SSet
    label: str = ""

    def legal_pick(self, item) -> bool:
        return self.sset.contains(item)


@dataclass
class CoverMove:
    """Alice plays a cover, materialized as a prefix of member sets."""

    sets: tuple
    label: str = ""

    def legal_pick(self, item) -> bool:
        return any(item == s for s in self.sets)


@dataclass
class Round:
    alice: object
    bob: object  # a single item (G1) or a tuple of items (GFIN)


@dataclass
class IllegalMove:
    round_index: int
    offender: str
    reason: str


@dataclass
class GameTranscript:
    mode: Mode
    rounds: list = field(default_factory=list)
    illegal: Optional[IllegalMove] = None

    def selections(self) -> list:
        out = []
        for r in self.rounds:
            if self.mode is Mode.GFIN:
                out.extend(r.bob)
            else:
                out.append(r.bob)
        return out


@dataclass
class Strategy:
    """A deterministic move function.  Alice's sees the completed rounds;
    Bob's also sees Alice's current move."""

    side: str
    move: Callable

    def __post_init__(self):
        if self.side not in ("alice", "bob"):
            raise ValueError("side must be 'alice' or 'bob'")


def play(alice: Strategy, bob: Strategy, rounds: int, mode: Mode) -> GameTranscript:
    """Referee-validated play of the requested length."""
    t = GameTranscript(mode=mode)
    for idx in range(rounds):
        try:
            a_move = alice.move(t.rounds)
        except Exception as exc:  # a strategy crash is an illegal move
            t.illegal = IllegalMove(idx, "alice", f"strategy failure: {exc}")
            return t
        if not isinstance(a_move, (SetMove, CoverMove)):
            t.illegal = IllegalMove(idx, "alice", "move is not a SetMove/CoverMove")
            return t
        try:
            b_move = bob.move(t.rounds, a_move)
        except Exception as exc:
            t.illegal = IllegalMove(idx, "bob", f"strategy failure: {exc}")
            return t
        if mode is Mode.GFIN:
            picks = tuple(b_move)
            if not all(a_move.legal_pick(p) for p in picks):
                t.illegal = IllegalMove(idx, "bob", "selection outside Alice's move")
                return t
        else:
            picks = b_move
            if not a_move.legal_pick(picks):
                t.illegal = IllegalMove(idx, "bob", "selection outside Alice's move")
                return t
        t.rounds.append(Round(a_move, picks))
    return t


class Outcome(enum.Enum):
    BOB_WINS = "bob-wins"
    ALICE_WINS = "alice-wins"
    UNKNOWN = "unknown-at-depth"


def judge(t: GameTranscript, target, horizon: int, space: Optional[Space] = None,
          **params) -> Outcome:
    """Apply the target family to Bob's selection set.

    ``target`` is a CoverKind (selections must be sets; they are assembled
    into a cover and classified) or a predicate on the selection list
    returning bool or Verdict.  An illegal move loses for the offender.
    """
    if t.illegal is not None:
        return Outcome.ALICE_WINS if t.illegal.offender == "bob" else Outcome.BOB_WINS
    sel = t.selections()
    if not sel:
        return Outcome.ALICE_WINS
    if isinstance(target, CoverKind):
        if space is None:
            raise ValueError("judging a cover target needs the space")
        # distinct sets only: a cover is a family
        distinct = []
        for s in sel:
            if s not in distinct:
                distinct.append(s)
        cover = Cover(space, sets=distinct, name="selections")
        verdict = classify_cover(cover, target, horizon, **params)
    else:
        verdict = target(sel)
        if isinstance(verdict, bool):
            verdict = Verdict.HOLDS if verdict else Verdict.FAILS
    if verdict is Verdict.HOLDS:
        return Outcome.BOB_WINS
    if verdict is Verdict.FAILS:
        return Outcome.ALICE_WINS
    return Outcome.UNKNOWN


# ---------------------------------------------------------------------------
# stock strategies
# ---------------------------------------------------------------------------

def scripted_alice(moves: Sequence) -> Strategy:
    """Plays the given moves in order, repeating the last one after."""
    moves = list(moves)

    def fn(history):
        i = min(len(history), len(moves) - 1)
        return moves[i]

    return Strategy("alice", fn)


def first_bob() -> Strategy:
    """Picks the least point (set moves) or the first member (cover moves)."""

    def fn(history, a_move):
        if isinstance(a_move, SetMove):
            return a_move.sset.least()
        return a_move.sets[0]

    return Strategy("bob", fn)


def filter_intersection_bob(generating_sets: Callable[[int], SSet]) -> Strategy:
    """The countably-generated-filter strategy: with the filter generated by
    descending sets B_1 ⊇ B_2 ⊇ ..., Bob answers Alice's dual-family set
    A_n with the least element of A_n ∩ B_n, so his selections meet every
    generator."""

    def fn(history, a_move):
        n = len(history) + 1
        both = a_move.sset.intersect(generating_sets(n))
        return both.least()

    return Strategy("bob", fn)


def meets_all_generators(generating_sets: Callable[[int], SSet],
                         horizon: int) -> Callable:
    """Judge target for the dual family at horizon: the selection set meets
    every generator B_1..B_horizon."""

    def pred(selections) -> bool:
        return all(any(generating_sets(n).contains(x) for x in selections)
                   for n in range(1, horizon + 1))

    return pred


# ---------------------------------------------------------------------------
# finite-selection -> single-selection strategy conversion
# ---------------------------------------------------------------------------

def _thin_ascending(sets: Sequence[SSet]) -> list:
    """Greedy strict-ascending subsequence (the proof's thinning)."""
    out: list = []
    for s in sets:
        if not out or out[-1].strict_subset(s):
            out.append(s)
    return out


def largest_of(picks: Sequence[SSet]) -> SSet:
    """The containment-largest of finitely many picks from one ascending
    cover (a chain, so size comparison decides)."""
    return max(picks, key=lambda s: s.size_key())


class ConvertedAlice:
    """A finite-selection Alice built from a single-selection Alice.

    Each inning the inner strategy's proposed cover is thinned to an
    ascending one and stripped of everything Bob already picked; when Bob
    picks several sets, only the largest is reported back to the inner
    strategy.  ``collapse_selections`` exposes those largest picks for
    comparing the two plays.
    """

    def __init__(self, inner: Strategy, option_bound: int = 24):
        if inner.side != "alice":
            raise ValueError("inner strategy must play Alice")
        self.inner = inner
        self.option_bound = option_bound

    def _inner_history(self, history) -> list:
        collapsed = []
        for r in history:
            collapsed.append(Round(r.alice, largest_of(r.bob)))
        return collapsed

    def move(self, history) -> CoverMove:
        inner_hist = self._inner_history(history)
        proposed = self.inner.move(inner_hist)
        if not isinstance(proposed, CoverMove):
            raise ValueError("conversion expects cover moves")
        thinned = _thin_ascending(proposed.sets)
        chosen = {s for r in history for s in r.bob}
        remaining = [s for s in thinned if s not in chosen]
        if not remaining:
            raise ValueError("thinning removed every member; cover exhausted")
        return CoverMove(tuple(remaining), label=f"thinned[{proposed.label}]")

    def as_strategy(self) -> Strategy:
        return Strategy("alice", self.move)

    def collapse_selections(self, t: GameTranscript) -> list:
        return [largest_of(r.bob) for r in t.rounds if r.bob]


def convert_gfin_to_g1(alice_single: Strategy, option_bound: int = 24) -> ConvertedAlice:
    """Build the finite-selection Alice from a single-selection Alice; the
    name reflects the game reduction (finite choices collapse to single
    ones before the inner strategy is consulted)."""
    return ConvertedAlice(alice_single, option_bound)


def point_multiplicity(sets: Sequence[SSet], points: Sequence) -> dict:
    return {p: sum(1 for s in sets if s.contains(p)) for p in points}


# ---------------------------------------------------------------------------
# the diagonal strategy-tree transfer
# ---------------------------------------------------------------------------

def _sigma_level(n: int) -> list:
    """All index sequences of length <= n over {1..n} (the empty sequence
    encodes Alice's opening cover)."""
    out = [()]
    level = [()]
    for _ in range(n):
        level = [s + (i,) for s in level for i in range(1, n + 1)]
        out.extend(level)
    return out


def diagonal_cover(tree: Callable[[tuple], Cover], n: int, space: Space) -> Cover:
    """The n-th diagonal cover: its m-th set is the intersection of the
    m-th sets of every tree cover at index sequences of length <= n over
    {1..n}.  Ascending when every tree cover is."""
    sigmas = _sigma_level(n)

    def set_at(m: int) -> SSet:
        acc = None
        for sigma in sigmas:
            cover = tree(sigma)
            if cover is None:
                raise KeyError(f"strategy tree gap at {sigma}")
            s = cover.set_at(m)
            acc = s if acc is None else acc.intersect(s)
        return acc

    return Cover(space, set_fn=set_at, name=f"diag-{n}")


@dataclass
class PlayReconstruction:
    picks: list            # (sigma, m_index, SSet) in pick order
    odd_play: list         # picked sets along the odd-path game
    even_play: list
    f_map: dict            # selection position j -> pick position i
    batch_sizes: dict      # pick position -> fiber bound from block lengths
    complete: bool
    note: str = ""

    def f_is_finite_to_one(self) -> bool:
        fibers: dict = {}
        for j, i in self.f_map.items():
            fibers.setdefault(i, []).append(j)
        return all(len(v) <= self.batch_sizes[i] for i, v in fibers.items())

    def f_is_surjective(self) -> bool:
        return set(self.f_map.values()) == set(range(1, len(self.picks) + 1))


def reconstruct_parallel_plays(tree: Callable[[tuple], Cover],
                               selections: Sequence[SSet],
                               cover_bound: int = 32) -> PlayReconstruction:
    """Replay the two-plays construction from diagonal-cover selections.

    Step 1 picks a member of the opening cover containing the first
    selection; step i >= 2 picks, from the cover the strategy answers along
    the odd or even path, a fresh member containing the batch of selections
    between the previous two pick indices.  Selections are assigned to the
    pick that absorbed their batch (skipping duplicates of earlier sets),
    which is the finite-to-one surjection of the construction.
    """
    V = list(selections)
    M = len(V)
    if M == 0:
        raise ValueError("no selections to reconstruct from")

    picks: list = []          # (sigma, m_index, sset) in pick order
    picked_sets: list = []
    m_indices: list = []      # m_1, m_2, ... as picked
    odd_path: list = []
    even_path: list = []
    f_map: dict = {}
    batch_sizes: dict = {}
    note = ""

    def union_of(batch) -> SSet:
        acc = V[batch[0] - 1]
        for j in batch[1:]:
            acc = acc.union(V[j - 1])
        return acc

    step = 1
    while True:
        if step == 1:
            batch = [1]
        elif step == 2:
            batch = list(range(2, m_indices[0] + 1))
        else:
            batch = list(range(m_indices[step - 3] + 1, m_indices[step - 2] + 1))
        batch = [j for j in batch if j <= M]
        if not batch:
            note = f"selections exhausted before step {step}"
            break
        if step <= 2:
            sigma: tuple = ()
        elif step % 2 == 1:
            sigma = tuple(odd_path)
        else:
            sigma = tuple(even_path)
        cover = tree(sigma)
        if cover is None:
            raise KeyError(f"strategy tree gap at {sigma}")
        needed = union_of(batch)
        lo = (m_indices[-1] + 1) if m_indices else 2  # m_1 > 1
        m_i = None
        for m in range(lo, cover_bound + 1):
            u = cover.set_at(m)
            if needed.issubset(u) and all(u != p for p in picked_sets):
                m_i = m
                break
        if m_i is None:
            note = f"no fresh containing member found at step {step}"
            break
        sset = cover.set_at(m_i)
        picks.append((sigma, m_i, sset))
        picked_sets.append(sset)
        m_indices.append(m_i)
        (odd_path if step % 2 == 1 else even_path).append(m_i)
        pick_pos = len(picks)
        seen_before = set()
        for j in range(1, batch[0]):
            seen_before.add(V[j - 1])
        fiber = 0
        for j in batch:
            if V[j - 1] in seen_before:
                continue  # duplicate of an earlier selection; not a new family member
            seen_before.add(V[j - 1])
            f_map[j] = pick_pos
            fiber += 1
        batch_sizes[pick_pos] = max(1, len(batch))
        if fiber == 0:
            note = f"no new selection in the batch at step {step}"
            picks.pop(), picked_sets.pop(), m_indices.pop()
            (odd_path if step % 2 == 1 else even_path).pop()
            del batch_sizes[pick_pos]
            break
        step += 1

    if not picks:
        raise ValueError(
            "first selection does not refine the opening cover: " + note)
    odd_sets = [p[2] for i, p in enumerate(picks) if i % 2 == 0]
    even_sets = [p[2] for i, p in enumerate(picks) if i % 2 == 1]
    return PlayReconstruction(
        picks=picks,
        odd_play=odd_sets,
        even_play=even_sets,
        f_map=f_map,
        batch_sizes=batch_sizes,
        complete=not note,
        note=note,
    )


def diagonal_transfer(tree: Callable[[tuple], Cover], n: int, space: Space):
    """The n-th diagonal cover plus the extractor that rebuilds the two
    parallel plays from selections out of the diagonal covers."""
    cover = diagonal_cover(tree, n, space)

    def extractor(selections: Sequence[SSet], cover_bound: int = 32) -> PlayReconstruction:
        return reconstruct_parallel_plays(tree, selections, cover_bound)

    return cover, extractor


# ---------------------------------------------------------------------------
# regular families of covers
# ---------------------------------------------------------------------------

@dataclass
class RegularReport:
    split_instances: int
    split_violations: int
    enlarge_instances: int
    enlarge_violations: int

    @property
    def verdict(self) -> Verdict:
        bad = self.split_violations + self.enlarge_violations
        return Verdict.FAILS if bad else Verdict.HOLDS


def check_regular_family(family_pred: Callable, covers_sample: Sequence[Cover],
                         horizon: int, tau_sample: Optional[Sequence[SSet]] = None,
                         seed: int = 0) -> RegularReport:
    """Test the two regularity conditions on samples.

    Splits: a sampled cover in the family, split into odd/even-indexed and
    seeded random halves, must leave at least one half in the family.
    Enlargements: sampled at-most-two-to-one maps into containing members
    of ``tau_sample`` (never the whole space) must keep the image in the
    family.  The family predicate takes (sets, horizon) and returns a
    Verdict or bool.
    """
    rng = random.Random(seed)
    split_i = split_v = enl_i = enl_v = 0

    def in_family(sets) -> bool:
        v = family_pred(list(sets), horizon)
        if isinstance(v, Verdict):
            return v is Verdict.HOLDS
        return bool(v)

    for cover in covers_sample:
        n_sets = cover.prefix_length(horizon)
        sets = cover.prefix(n_sets)
        if not in_family(sets):
            continue
        halvings = [
            (sets[0::2], sets[1::2]),
        ]
        marks = [rng.random() < 0.5 for _ in sets]
        halvings.append(
            ([s for s, m_ in zip(sets, marks) if m_],
             [s for s, m_ in zip(sets, marks) if not m_]))
        for u, v in halvings:
            split_i += 1
            if not (in_family(u) or in_family(v)):
                split_v += 1

        space_sets = list(tau_sample) if tau_sample is not None else sets
        image = []
        ok = True
        for i, s in enumerate(sets):
            candidates = [u for u in space_sets
                          if s.issubset(u) and not cover.space.whole_set(u, horizon)]
            if not candidates:
                ok = False
                break
            image.append(candidates[min(i // 2, len(candidates) - 1)]
                         if len(candidates) > 1 else candidates[0])
        if ok:
            enl_i += 1
            distinct = []
            for u in image:
                if u not in distinct:
                    distinct.append(u)
            if not in_family(distinct):
                enl_v += 1
    return RegularReport(split_i, split_v, enl_i, enl_v)


def cover_kind_predicate(kind: CoverKind, space: Space, **params) -> Callable:
    """A family predicate from a CoverKind, for judging and regularity."""

    def pred(sets, horizon):
        return classify_cover(Cover(space, sets=list(sets)), kind, horizon, **params)

    return pred
