"""Braid words, their closures, and depth bounds read off the word.

A word on p strands is written ``p=3: 1 -2 1 -2`` — positive integer k
for the generator crossing strands k and k+1 with strand k passing over,
negative for the inverse.  Closures are built directly as oriented
diagrams: each letter contributes one crossing, and the plat-free wiring
at the bottom glues strand ends back to their tops.

For a one-signed word using every generator index the closure's depth is
the exact value ``length - strands + 1``; for mixed words that quantity
plus the minority-sign count is an upper bound, and taking the minimum
over several words for the same link tightens it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .diagram import Crossing, OrientedDiagram
from .moves import _rewire


@dataclass(frozen=True)
class BraidWord:
    """A word in the braid group B_strands; letters are nonzero generator indices."""

    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 2:
            raise ValueError(f"braid needs at least 2 strands, got {self.strands}")
        if not self.letters:
            raise ValueError("empty braid word")
        for g in self.letters:
            if g == 0 or abs(g) > self.strands - 1:
                raise ValueError(
                    f"generator index {g} out of range for {self.strands} strands"
                )

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def positives(self) -> int:
        return sum(1 for g in self.letters if g > 0)

    @property
    def negatives(self) -> int:
        return sum(1 for g in self.letters if g < 0)

    def all_indices_used(self) -> bool:
        return {abs(g) for g in self.letters} == set(range(1, self.strands))

    def __str__(self) -> str:
        return f"p={self.strands}: " + " ".join(str(g) for g in self.letters)


_HEAD_RE = re.compile(r"^p\s*=\s*(\d+)\s*:\s*(.*)$")


def parse_braid(text: str) -> BraidWord:
    """Parse ``p=N: g1 g2 ...``; raises ValueError with the offending token."""
    m = _HEAD_RE.match(text.strip())
    if not m:
        raise ValueError(f"malformed braid word (expected 'p=N: ...'): {text!r}")
    strands = int(m.group(1))
    letters = []
    for tok in m.group(2).split():
        try:
            letters.append(int(tok))
        except ValueError:
            raise ValueError(f"bad braid letter {tok!r} in {text!r}") from None
    return BraidWord(strands, tuple(letters))


def braid_stats(w: BraidWord) -> tuple[int, int, int, int, bool]:
    """(length, positives, negatives, strands, all generator indices used)."""
    return (w.length, w.positives, w.negatives, w.strands, w.all_indices_used())


def braid_closure(w: BraidWord) -> OrientedDiagram:
    """Oriented diagram of the braid closure, all strands running downward.

    Strand positions carry the label of the arc currently entering them;
    position q starts with the provisional label -q, and the closure
    merges whatever label exits position q at the bottom back onto -q.
    A position never visited by a letter closes to a free loop.

    For a positive letter at positions (q, q+1) the left strand passes
    over; with L/R the incoming labels and n1/n2 = the two fresh arcs
    leaving at south-west/south-east, the crossing reads (R, L, n1, n2)
    with positive sign.  For a negative letter the left strand dives
    under: (L, n1, n2, R) with negative sign.
    """
    cur = {q: -q for q in range(1, w.strands + 1)}
    nxt = 1
    crossings = []
    for g in w.letters:
        i = abs(g)
        left, right = cur[i], cur[i + 1]
        n1, n2 = nxt, nxt + 1
        nxt += 2
        if g > 0:
            crossings.append(Crossing(right, left, n1, n2, 1))
        else:
            crossings.append(Crossing(left, n1, n2, right, -1))
        cur[i], cur[i + 1] = n1, n2
    merges = [(cur[q], -q) for q in range(1, w.strands + 1)]
    return _rewire(crossings, merges, 0)


def positive_braid_td(w: BraidWord) -> int:
    """Exact depth of a one-signed braid closure: length - strands + 1.

    Rejects mixed-sign words (no exactness there) and words skipping a
    generator index (the closure splits and the count is off).
    """
    length, pos, neg, strands, used = braid_stats(w)
    if pos and neg:
        raise ValueError("mixed-sign braid word: exact formula needs one sign")
    if not used:
        raise ValueError("braid word skips a generator index; closure is split")
    return length - strands + 1


def mixed_braid_upper(words: list[BraidWord]) -> int:
    """Depth upper bound from braid presentations: min over the given words
    of length - strands + 1 + min(positives, negatives).

    All words must present the same link for the minimum to mean anything;
    that is the caller's promise.
    """
    if not words:
        raise ValueError("empty word list")
    best = None
    for w in words:
        length, pos, neg, strands, used = braid_stats(w)
        if not used:
            raise ValueError(
                f"braid word skips a generator index; closure is split: {w}"
            )
        bound = length - strands + 1 + min(pos, neg)
        best = bound if best is None else min(best, bound)
    return best
