"""Filters and superfilters: extensional families over finite ground sets,
the plus-dual, the star operator, idempotence predicates, and symbolic
descending chains with bounded-depth verification.

The infinite theory's "free" (empty total intersection) and "all members
infinite" are not satisfiable literally on a finite ground set; the
classifiers report those as explicit caveats instead of silently weakening
the definitions, and the duality-law scanner states which finite surrogate
it quantifies over.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional

from .semigroups import ElementSequence, Semigroup, fs_enumerate
from .verdicts import Verdict, all_verdicts


# ---------------------------------------------------------------------------
# extensional families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SetFamily:
    """A family of subsets of a finite ground set, given extensionally."""

    ground: frozenset
    members: frozenset

    def __post_init__(self):
        members = frozenset(frozenset(m) for m in self.members)
        object.__setattr__(self, "members", members)
        for m in members:
            if not m <= self.ground:
                raise ValueError(f"member {sorted(m)} escapes the ground set")

    def __contains__(self, s) -> bool:
        return frozenset(s) in self.members

    def __len__(self):
        return len(self.members)


def family(ground: Iterable, members: Iterable) -> SetFamily:
    return SetFamily(frozenset(ground), frozenset(frozenset(m) for m in members))


def all_subsets(ground: frozenset) -> list:
    out = [frozenset()]
    for r in range(1, len(ground) + 1):
        out.extend(frozenset(c) for c in itertools.combinations(sorted(ground), r))
    return out


def upward_closure(ground: Iterable, seeds: Iterable) -> SetFamily:
    ground = frozenset(ground)
    seeds = [frozenset(s) for s in seeds]
    members = {s for s in all_subsets(ground) if any(seed <= s for seed in seeds)}
    return SetFamily(ground, frozenset(members))


def principal_ultrafilter(ground: Iterable, point) -> SetFamily:
    ground = frozenset(ground)
    return SetFamily(ground, frozenset(s for s in all_subsets(ground) if point in s))


def plus_dual(fam: SetFamily) -> SetFamily:
    """F+ = {A : complement of A not in F}, over the same ground set."""
    members = frozenset(
        s for s in all_subsets(fam.ground) if (fam.ground - s) not in fam.members)
    return SetFamily(fam.ground, members)


@dataclass
class FamilyFlags:
    """What an extensional family is.  is_superfilter covers only the
    upward-closure and union-splitting conditions; the "all members are
    infinite" condition has no finite-ground meaning and is reported as a
    caveat, with ``superfilter_surrogate`` (nonempty, empty set excluded)
    as the finite stand-in used by the duality laws."""

    is_filter: bool
    is_free_filter: bool
    is_superfilter: bool
    is_ultrafilter: bool
    superfilter_surrogate: bool
    infinite_members_condition: str = "unverifiable-on-finite-ground"


def _is_upward_closed(fam: SetFamily, subsets) -> bool:
    return all(t in fam.members
               for s in fam.members for t in subsets if s <= t)


def _splits_unions(fam: SetFamily, subsets) -> bool:
    return all(a in fam.members or b in fam.members
               for a in subsets for b in subsets if (a | b) in fam.members)


def classify_family(fam: SetFamily) -> FamilyFlags:
    subsets = all_subsets(fam.ground)
    upward = _is_upward_closed(fam, subsets)
    inter_closed = all((a & b) in fam.members
                       for a in fam.members for b in fam.members)
    is_filter = bool(fam.members) and frozenset() not in fam.members and upward and inter_closed
    total = fam.ground
    for m in fam.members:
        total = total & m
    is_free = is_filter and not total and bool(fam.members)
    is_super = upward and _splits_unions(fam, subsets)
    surrogate = is_super and bool(fam.members) and frozenset() not in fam.members
    is_ultra = is_filter and all(
        s in fam.members or (fam.ground - s) in fam.members for s in subsets)
    return FamilyFlags(
        is_filter=is_filter,
        is_free_filter=is_free,
        is_superfilter=is_super,
        is_ultrafilter=is_ultra,
        superfilter_surrogate=surrogate,
    )


# ---------------------------------------------------------------------------
# the star operator
# ---------------------------------------------------------------------------

@dataclass
class StarReport:
    """Depth-bounded star set: definite members, definite non-members, and
    elements the window could not decide."""

    members: list
    failed: list
    unknown: list

    def verdict_for(self, b) -> Verdict:
        if b in self.members:
            return Verdict.HOLDS
        if b in self.failed:
            return Verdict.FAILS
        return Verdict.UNKNOWN


@dataclass(frozen=True)
class PredicateFilter:
    """A filter presented by finitely many generating-set predicates.

    Membership in the generated filter is "contains some generator"; since
    b + C ⊆ A only gets harder as C grows, the star set is decided on the
    generators alone.
    """

    generators: tuple
    name: str = ""


def star_set(A, fam, sg: Optional[Semigroup] = None, depth: int = 0, window: int = 0):
    """A*(F) = {b : b + C ⊆ A for some C in F}.

    Extensional regime (SetFamily): exact, returns a frozenset of ground
    elements; combine results falling outside the ground never land in A.
    Symbolic regime (PredicateFilter / SymbolicChain): A is a membership
    predicate, candidates b and samples c range over the semigroup
    enumeration up to ``window``; returns a StarReport with three-valued
    per-element verdicts.
    """
    if isinstance(fam, SetFamily):
        combine = sg.combine if sg is not None else _default_combine
        return frozenset(
            b for b in fam.ground
            if any(all(combine(b, c) in A for c in C) for C in fam.members))
    if sg is None or window <= 0:
        raise ValueError("symbolic star needs a semigroup and a positive window")
    if isinstance(fam, PredicateFilter):
        gens = list(fam.generators)
        open_ended = False
    elif isinstance(fam, SymbolicChain):
        if depth <= 0:
            raise ValueError("chain star needs a positive depth")
        gens = [fam.set_at(n) for n in range(1, depth + 1)]
        open_ended = True
    else:
        raise TypeError(f"unsupported family type {type(fam).__name__}")

    a_pred = A if callable(A) else (lambda x, _s=frozenset(A): x in _s)
    candidates = [sg.enumeration(i) for i in range(1, window + 1)]
    members, failed, unknown = [], [], []
    for b in candidates:
        best = Verdict.FAILS
        for pred in gens:
            samples = [c for c in candidates if pred(c)]
            if not samples:
                best = _at_least(best, Verdict.UNKNOWN)
                continue
            if all(a_pred(sg.combine(b, c)) for c in samples):
                best = Verdict.HOLDS
                break
        if best is Verdict.FAILS and open_ended:
            # deeper chain links shrink, so failure on the sampled links
            # never refutes membership outright
            best = Verdict.UNKNOWN
        {Verdict.HOLDS: members, Verdict.FAILS: failed, Verdict.UNKNOWN: unknown}[best].append(b)
    return StarReport(members, failed, unknown)


def _default_combine(b, c):
    if isinstance(b, frozenset):
        return b | c
    return b + c


def _at_least(current: Verdict, candidate: Verdict) -> Verdict:
    order = {Verdict.FAILS: 0, Verdict.UNKNOWN: 1, Verdict.HOLDS: 2}
    return candidate if order[candidate] > order[current] else current


def is_idempotent_filter(fam, sg: Optional[Semigroup] = None, depth: int = 0,
                         window: int = 0) -> Verdict:
    """A filter is idempotent when each member's star set is again in it.

    Extensional: checked exactly on every member.  Chains: each sampled
    link A_n must have its star contain all sampled members of some link
    A_m (m up to depth + 1).
    """
    if isinstance(fam, SetFamily):
        for A in fam.members:
            if star_set(A, fam, sg) not in fam.members:
                return Verdict.FAILS
        return Verdict.HOLDS
    if isinstance(fam, SymbolicChain):
        verdicts = []
        for n in range(1, depth + 1):
            pred_n = fam.set_at(n)
            best = Verdict.UNKNOWN
            for m in range(n + 1, depth + 2):
                sampled = fam.members_within(m, window)
                if not sampled:
                    continue
                # star(A_n) contains A_m when each sampled a in A_m has
                # some link A_k with a + A_k ⊆ A_n
                ok = True
                for a in sampled:
                    if not any(
                        cs and all(pred_n(fam.semigroup.combine(a, c)) for c in cs)
                        for cs in (fam.members_within(k, window)
                                   for k in range(m + 1, m + window + 2))):
                        ok = False
                        break
                if ok:
                    best = Verdict.HOLDS
                    break
            verdicts.append(best)
        return all_verdicts(verdicts)
    raise TypeError(f"unsupported family type {type(fam).__name__}")


def is_idempotent_superfilter(fam: SetFamily, sg: Semigroup) -> Verdict:
    """For each subset A with A*(fam) in fam, A itself must be in fam."""
    for A in all_subsets(fam.ground):
        if star_set(A, fam, sg) in fam.members and A not in fam.members:
            return Verdict.FAILS
    return Verdict.HOLDS


def translation_invariance_check(family_pred: Callable, sets_sample: Iterable,
                                 translations: Iterable, sg: Semigroup) -> Verdict:
    """s + A stays in the family for sampled s and A.  A sufficient
    condition for being an idempotent superfilter, checked on samples."""
    for A in sets_sample:
        if not family_pred(A):
            return Verdict.UNKNOWN
        for s in translations:
            shifted = frozenset(sg.combine(s, a) for a in A)
            if not family_pred(shifted):
                return Verdict.FAILS
    return Verdict.HOLDS


# ---------------------------------------------------------------------------
# exhaustive duality laws
# ---------------------------------------------------------------------------

@dataclass
class LawLine:
    law_id: str
    description: str
    instances: int
    violations: int


@dataclass
class DualityReport:
    ground_size: int
    families_scanned: int
    lines: list
    caveats: list

    @property
    def total_violations(self) -> int:
        return sum(line.violations for line in self.lines)

    def format_lines(self) -> list:
        out = [f"ground size {self.ground_size}: {self.families_scanned} families scanned"]
        for line in self.lines:
            out.append(f"{line.law_id}: {line.description} | instances={line.instances} "
                       f"violations={line.violations}")
        out.extend(f"caveat: {c}" for c in self.caveats)
        return out

    def __str__(self):
        return "\n".join(self.format_lines())


def verify_duality_laws(ground_size: int) -> DualityReport:
    """Exhaustively check the six folklore duality laws over every family
    of subsets of a ground set of the given size.

    Families are bitmasks over the 2^g subsets; there are 2^(2^g) of them.
    Sizes up to 3 check the antitonicity law on all comparable pairs; size
    4 checks it on covering pairs only (equivalent by transitivity).
    Larger grounds are refused: the scan is doubly exponential.
    """
    g = ground_size
    if g < 1 or g > 4:
        raise ValueError("exhaustive regime supports ground sizes 1..4")
    n_subsets = 1 << g
    n_families = 1 << n_subsets
    full = n_subsets - 1  # bitmask of the whole ground set

    comp = [full ^ s for s in range(n_subsets)]
    supersets = [[t for t in range(n_subsets) if s | t == t] for s in range(n_subsets)]

    def dual(f: int) -> int:
        out = 0
        for s in range(n_subsets):
            if not (f >> comp[s]) & 1:
                out |= 1 << s
        return out

    def members(f: int):
        return [s for s in range(n_subsets) if (f >> s) & 1]

    def is_filter(f: int) -> bool:
        ms = members(f)
        if not ms or (f & 1):  # empty family, or contains the empty set
            return False
        for s in ms:
            for t in supersets[s]:
                if not (f >> t) & 1:
                    return False
            for t in ms:
                if not (f >> (s & t)) & 1:
                    return False
        return True

    def is_superfilter_23(f: int) -> bool:
        ms = members(f)
        for s in ms:
            for t in supersets[s]:
                if not (f >> t) & 1:
                    return False
        for a in range(n_subsets):
            for b in range(n_subsets):
                if (f >> (a | b)) & 1 and not ((f >> a) & 1 or (f >> b) & 1):
                    return False
        return True

    def is_ultrafilter(f: int) -> bool:
        return is_filter(f) and all((f >> s) & 1 or (f >> comp[s]) & 1
                                    for s in range(n_subsets))

    duals = [dual(f) for f in range(n_families)]

    def subset_mask(a: int, b: int) -> bool:
        return a | b == b

    # (1) antitonicity of +
    count1 = viol1 = 0
    if g <= 3:
        for f2 in range(n_families):
            sub = f2
            while True:  # enumerate all submasks of f2
                count1 += 1
                if not subset_mask(duals[f2], duals[sub]):
                    viol1 += 1
                if sub == 0:
                    break
                sub = (sub - 1) & f2
    else:
        for f in range(n_families):
            for bit in range(n_subsets):
                if not (f >> bit) & 1:
                    count1 += 1
                    if not subset_mask(duals[f | (1 << bit)], duals[f]):
                        viol1 += 1

    count2 = n_families
    viol2 = sum(1 for f in range(n_families) if duals[duals[f]] != f)

    filters = [f for f in range(n_families) if is_filter(f)]
    count3 = len(filters)
    viol3 = sum(1 for f in filters
                if not (subset_mask(f, duals[f]) and is_superfilter_23(duals[f])))

    sufs = [f for f in range(n_families)
            if f and not (f & 1) and is_superfilter_23(f)]
    count4 = len(sufs)
    viol4 = sum(1 for f in sufs if not (is_filter(duals[f]) and subset_mask(duals[f], f)))

    count5 = viol5 = 0
    for f in filters:
        d = duals[f]
        for a in members(d):
            for b in members(f):
                count5 += 1
                if not (d >> (a & b)) & 1:
                    viol5 += 1

    ultras = [f for f in range(n_families) if is_ultrafilter(f)]
    count6 = len(ultras)
    viol6 = sum(1 for p in ultras if duals[p] != p)

    lines = [
        LawLine("law-1", "F1 within F2 implies dual(F1) contains dual(F2)", count1, viol1),
        LawLine("law-2", "double dual is the identity", count2, viol2),
        LawLine("law-3", "filter: dual is a (2,3)-superfilter containing it", count3, viol3),
        LawLine("law-4", "superfilter surrogate: dual is a filter contained in it", count4, viol4),
        LawLine("law-5", "A in dual(F), B in F gives A∩B in dual(F)", count5, viol5),
        LawLine("law-6", "ultrafilters are self-dual", count6, viol6),
    ]
    caveats = [
        "freeness and 'all members infinite' are unverifiable on a finite ground; "
        "law 3 quantifies over all filters, law 4 over nonempty (2,3)-superfilters "
        "excluding the empty set",
    ]
    if g == 4:
        caveats.append("law 1 checked on covering pairs (equivalent by transitivity)")
    return DualityReport(g, n_families, lines, caveats)


# ---------------------------------------------------------------------------
# symbolic chains
# ---------------------------------------------------------------------------

@dataclass
class SymbolicChain:
    """A descending sequence A_1 ⊇ A_2 ⊇ ... over a countable ground,
    presented by membership predicates, with explicit freeness witnesses.

    ``exclusion_index(x)`` must name an n with x not in A_n (sampled
    freeness evidence; an empty total intersection is not decidable by
    sampling).  ``members_within_fn(n, bound)`` produces sampled members
    of A_n with about ``bound`` units of work.
    """

    semigroup: Semigroup
    set_at: Callable[[int], Callable[[Any], bool]]
    exclusion_index: Callable[[Any], Optional[int]]
    members_within_fn: Optional[Callable[[int, int], list]] = None
    name: str = ""

    def members_within(self, n: int, bound: int) -> list:
        if self.members_within_fn is not None:
            return self.members_within_fn(n, bound)
        pred = self.set_at(n)
        return [self.semigroup.enumeration(i) for i in range(1, bound + 1)
                if pred(self.semigroup.enumeration(i))]


@dataclass
class ChainReport:
    verdict: Verdict
    descending_failures: list
    freeness_failures: list
    idem_witness_m: dict
    idem_witness_k: dict
    notes: list = field(default_factory=list)


def chain_check(chain: SymbolicChain, depth: int, window: int = 6) -> ChainReport:
    """Verify a symbolic chain up to the given depth: descension and
    freeness on samples, and the elementwise idempotence condition: for
    every n there is m > n such that each sampled a in A_m has k > m with
    a + A_k ⊆ A_m.  Returns the witnessing m and k maps."""
    descending_failures = []
    for n in range(1, depth + 1):
        pred_n = chain.set_at(n)
        for x in chain.members_within(n + 1, window):
            if not pred_n(x):
                descending_failures.append((n, x))

    freeness_failures = []
    for x in chain.members_within(1, window):
        n = chain.exclusion_index(x)
        if n is None:
            freeness_failures.append((x, None))
        elif chain.set_at(n)(x):
            freeness_failures.append((x, n))

    # Level m is self-absorbing when every sampled a in A_m has some k > m
    # with a + A_k ⊆ A_m; the chain condition for n then holds with any
    # self-absorbing m > n (A_m ⊆ A_n puts A_m inside the star of A_n).
    idem_m: dict = {}
    idem_k: dict = {}
    self_absorbing: dict = {}

    def absorbs(m: int) -> bool:
        if m in self_absorbing:
            return self_absorbing[m]
        pred_m = chain.set_at(m)
        sampled = chain.members_within(m, window)
        ok = bool(sampled)
        for a in sampled:
            k_found = None
            for k in range(m + 1, m + window + 2):
                cs = chain.members_within(k, window)
                if cs and all(pred_m(chain.semigroup.combine(a, c)) for c in cs):
                    k_found = k
                    break
            if k_found is None:
                ok = False
                break
            idem_k[(m, repr(a))] = k_found
        self_absorbing[m] = ok
        return ok

    idem_verdicts = []
    for n in range(1, depth + 1):
        level_verdict = Verdict.UNKNOWN
        for m in range(n + 1, depth + 2):
            if absorbs(m):
                idem_m[n] = m
                level_verdict = Verdict.HOLDS
                break
        idem_verdicts.append(level_verdict)

    notes = []
    if descending_failures:
        verdict = Verdict.FAILS
        notes.append("descension fails on samples")
    elif freeness_failures:
        verdict = Verdict.FAILS
        notes.append("freeness evidence unavailable or wrong")
    else:
        verdict = all_verdicts(idem_verdicts)
        if verdict is not Verdict.HOLDS:
            notes.append("idempotence witnesses not found within window")
    return ChainReport(verdict, descending_failures, freeness_failures, idem_m, idem_k, notes)


def fs_tail_chain(seq: ElementSequence, index_window: int = 8) -> SymbolicChain:
    """The chain A_n = FS(a_n, a_{n+1}, ...), with membership decided by a
    bounded block search over {n .. n + index_window - 1}.

    Freeness witnesses come from properness: for a proper sequence each
    element is eventually outside the tails.  For improper sequences the
    witness function reports None and chain_check flags the chain.
    """
    sg = seq.semigroup

    def cannot_extend(partial, x) -> bool:
        if isinstance(partial, int) and isinstance(x, int):
            return partial > x
        if isinstance(partial, frozenset) and isinstance(x, frozenset):
            return not partial <= x
        return False

    def member(n: int, x) -> bool:
        def dfs(i_pos: int, partial) -> bool:
            if partial is not None:
                if partial == x:
                    return True
                if cannot_extend(partial, x):
                    return False
            for j_pos in range(i_pos, n + index_window):
                term = seq.term(j_pos)
                nxt = term if partial is None else sg.combine(partial, term)
                if dfs(j_pos + 1, nxt):
                    return True
            return False

        return dfs(n, None)

    def set_at(n: int):
        return lambda x, _n=n: member(_n, x)

    def exclusion_index(x) -> Optional[int]:
        for n in range(1, index_window * 2 + 2):
            if not member(n, x):
                return n
        return None

    def members_within(n: int, bound: int) -> list:
        w = min(bound, index_window)
        sums = fs_enumerate(
            ElementSequence.from_fn(sg, lambda i, _n=n: seq.term(_n + i - 1)), w)
        seen, out = set(), []
        for F in sorted(sums, key=lambda F: (len(F), tuple(sorted(F)))):
            v = sums[F]
            if v not in seen:
                seen.add(v)
                out.append(v)
        return out

    return SymbolicChain(sg, set_at, exclusion_index, members_within, name="fs-tails")


def constant_chain(sg: Semigroup, pred: Callable) -> SymbolicChain:
    """A_n = A for a fixed set; fails freeness (the intersection is A)."""
    return SymbolicChain(sg, lambda n: pred, lambda x: None, name="constant")


def chain_generated_filter_contains(chain: SymbolicChain, A_pred: Callable,
                                    depth: int, window: int) -> Verdict:
    """Does the filter generated by the chain contain {x : A_pred(x)}?
    Holds when some sampled link lies inside it."""
    for n in range(1, depth + 1):
        sampled = chain.members_within(n, window)
        if sampled and all(A_pred(x) for x in sampled):
            return Verdict.HOLDS
    return Verdict.UNKNOWN
