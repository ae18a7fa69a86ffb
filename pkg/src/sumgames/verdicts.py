"""Three-valued verdicts for depth-bounded checks.

Most properties in this package quantify over infinitely many objects
(tails of sequences, members of a cover, elements of a chain).  A bounded
check can confirm or refute them only up to the sampled depth, so every
classifier returns one of three verdicts instead of a bare bool.
"""
from __future__ import annotations

import enum


class Verdict(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown-at-depth"

    def __bool__(self) -> bool:
        # Guard against `if verdict:` -- always ambiguous for three values.
        raise TypeError("Verdict is three-valued; compare explicitly")


def all_verdicts(vs) -> Verdict:
    """Conjunction: FAILS dominates, then UNKNOWN, else HOLDS."""
    out = Verdict.HOLDS
    for v in vs:
        if v is Verdict.FAILS:
            return Verdict.FAILS
        if v is Verdict.UNKNOWN:
            out = Verdict.UNKNOWN
    return out
