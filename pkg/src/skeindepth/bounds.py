"""Certified lower and upper estimates for the resolution depth of a link.

Lower bounds come from the polynomial (top z-degree, with a floor of 1
once the link is certified nontrivial) and from genus and component
count via 2g + r - 1.  Upper bounds come from the simplified crossing
number minus one and from braid presentations.  ``aggregate_bounds``
collects every applicable estimate into one report; the search in
:mod:`.solver` then only has to close the gap.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import OrientedDiagram, component_count
from .moves import simplify
from .poly import HomflyCache, conway_breadth_of, homfly, unlink_value


@dataclass(frozen=True)
class BoundsReport:
    """Best lower/upper depth estimates plus every contributing bound.

    contributions holds (bound name, value, "lower"|"upper") triples in
    the order they were considered; lower is their max, upper their min.
    """

    lower: int
    upper: int
    contributions: tuple[tuple[str, int, str], ...]

    def render_row(self, name: str) -> str:
        parts = ",".join(f"{n}={v}({kind})" for n, v, kind in self.contributions)
        return f"{name}\t{self.lower}\t{self.upper}\t{parts}"


def genus_lower_bound(genus: int, components: int) -> int:
    """Depth is at least 2g + r - 1 for a nontrivial link of genus g with r components."""
    if genus < 0:
        raise ValueError(f"negative genus {genus}")
    if components < 1:
        raise ValueError(f"need at least one component, got {components}")
    return 2 * genus + components - 1


def crossing_upper_bound(d: OrientedDiagram) -> int:
    """Depth is at most (simplified crossing count) - 1 for nontrivial diagrams."""
    s = simplify(d)
    if s.is_crossingless():
        raise ValueError("diagram simplifies to an unlink; depth is 0 and this bound does not apply")
    return s.crossing_count - 1


def homfly_lower_bound(d: OrientedDiagram, cache: HomflyCache | None = None) -> int:
    """max(top z-degree of the polynomial, 1).

    Caller must know d is not an unlink: the floor of 1 is only sound for
    nontrivial links.  Crossingless inputs are rejected outright.
    """
    s = simplify(d)
    if s.is_crossingless():
        raise ValueError("diagram simplifies to an unlink; lower bound floor does not apply")
    return max(homfly(s, cache).z_degree(), 1)


def aggregate_bounds(
    d: OrientedDiagram,
    genus: int | None = None,
    braid_words=None,
    cache: HomflyCache | None = None,
) -> BoundsReport:
    """Combine every applicable depth estimate for the link of d.

    genus, when given, is the caller's knowledge of the genus of the
    link; braid_words, when given, is a list of BraidWord presentations
    of the same link.  Both are trusted as stated.  A one-signed word
    using all its generator indices pins the depth exactly, so it enters
    on both sides.
    """
    s = simplify(d)
    if s.is_crossingless():
        raise ValueError("diagram simplifies to an unlink; every tree has depth 0")
    r = component_count(s)
    p = homfly(s, cache)

    contribs: list[tuple[str, int, str]] = []
    lowers: list[int] = []
    uppers: list[int] = []

    def add(name: str, value: int, kind: str):
        contribs.append((name, value, kind))
        (lowers if kind == "lower" else uppers).append(value)

    # the floor of 1 needs a nontriviality certificate, which the
    # polynomial itself supplies unless it matches the unlink value
    zdeg = p.z_degree()
    floor = 1 if p != unlink_value(r) else 0
    add("homfly z-degree", max(zdeg, floor), "lower")
    add("conway breadth", max(conway_breadth_of(p), floor), "lower")
    if genus is not None:
        add("genus-components", genus_lower_bound(genus, r), "lower")
    add("crossing count", s.crossing_count - 1, "upper")
    if braid_words:
        from .braid import braid_stats, mixed_braid_upper, positive_braid_td

        add("mixed braid", mixed_braid_upper(list(braid_words)), "upper")
        exact = None
        for w in braid_words:
            _, pos, neg, _, used = braid_stats(w)
            if used and (pos == 0 or neg == 0):
                v = positive_braid_td(w)
                exact = v if exact is None else min(exact, v)
        if exact is not None:
            add("one-signed braid", exact, "lower")
            add("one-signed braid", exact, "upper")
    return BoundsReport(max(lowers), min(uppers), tuple(contribs))
