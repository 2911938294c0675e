"""Oriented link diagrams as planar diagram (PD) codes.

A crossing is a tuple (a, b, c, d) of arc labels listed counterclockwise
starting from the incoming under-strand arc a; c is the outgoing
under-strand arc.  Arc labels run 1..2c, each appearing exactly twice,
and increase along the orientation within each link component (with a
single wrap-around per component).  Crossingless components are carried
as a bare free-loop count.

The over-strand direction at a crossing follows arc succession: the
crossing is positive when the over-strand runs b -> d.  Text codes do not
store the sign, so :func:`parse_pd` recovers arc directions from the
under-strand anchors and the succession of labels; the rare text codes
where both readings are consistent (a two-arc component that never runs
under) parse with the b -> d reading.  Internally every crossing carries
its sign explicitly, and all diagram operations preserve it.

Instances are immutable; all operations return new diagrams.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple


class Crossing(NamedTuple):
    a: int
    b: int
    c: int
    d: int
    sign: int

    def over_in(self) -> int:
        return self.b if self.sign > 0 else self.d

    def over_out(self) -> int:
        return self.d if self.sign > 0 else self.b

    def arcs(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


# slots are indexed 0..3 for (a, b, c, d)
_UNDER_IN, _OVER_B, _UNDER_OUT, _OVER_D = 0, 1, 2, 3


@dataclass(frozen=True)
class OrientedDiagram:
    """An oriented link diagram: signed crossings plus free loops."""

    crossings: tuple[Crossing, ...]
    free_loops: int = 0

    def __post_init__(self):
        if self.free_loops < 0:
            raise ValueError("free_loops must be >= 0")
        if not self.crossings and self.free_loops == 0:
            raise ValueError("empty diagram: no crossings and no free loops")
        for cr in self.crossings:
            if cr.sign not in (1, -1):
                raise ValueError("crossing sign must be +1 or -1: %r" % (cr,))

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    def is_crossingless(self) -> bool:
        return not self.crossings

    def __repr__(self) -> str:
        return "OrientedDiagram(%s)" % pd_text(self)


# -- text form ----------------------------------------------------------------

_X_RE = re.compile(r"^X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]$")


def parse_pd(text: str) -> OrientedDiagram:
    """Parse a PD code such as "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]".

    "O" items denote crossingless components.  Raises ValueError on
    malformed items, arc-label multiplicity errors, or labelings that do
    not trace out consistent oriented components.
    """
    tuples: list[tuple[int, int, int, int]] = []
    free_loops = 0
    items = [chunk.strip() for chunk in text.strip().split(";")]
    if items == [""]:
        raise ValueError("empty PD code")
    for item in items:
        if not item:
            raise ValueError("empty PD item (stray ';'?)")
        if item == "O":
            free_loops += 1
            continue
        m = _X_RE.match(item)
        if not m:
            raise ValueError("malformed PD item: %r" % item)
        tuples.append(tuple(int(g) for g in m.groups()))  # type: ignore[arg-type]
    signs = _infer_signs(tuples)
    crossings = tuple(Crossing(a, b, c, d, s) for (a, b, c, d), s in zip(tuples, signs))
    diagram = OrientedDiagram(crossings, free_loops)
    validate(diagram)
    return diagram


def pd_text(d: OrientedDiagram) -> str:
    items = ["X[%d,%d,%d,%d]" % cr.arcs() for cr in d.crossings]
    items.extend("O" for _ in range(d.free_loops))
    return ";".join(items)


def _occurrences(tuples: Iterable[tuple[int, ...]]) -> dict[int, list[tuple[int, int]]]:
    occ: dict[int, list[tuple[int, int]]] = {}
    for ci, tup in enumerate(tuples):
        for slot in range(4):
            occ.setdefault(tup[slot], []).append((ci, slot))
    return occ


def _infer_signs(tuples: list[tuple[int, int, int, int]]) -> list[int]:
    """Recover crossing signs from a bare PD code.

    Directions propagate from the under-strand slots (a arrives, c
    leaves): each arc has one head and one tail occurrence, and each over
    pair holds one arriving and one leaving arc.  Arc succession settles
    whatever propagation cannot reach.
    """
    n = len(tuples)
    occ = _occurrences(tuples)
    for label, places in sorted(occ.items()):
        if len(places) != 2:
            raise ValueError("arc label %d appears %d times (expected 2)" % (label, len(places)))
    expected = set(range(1, 2 * n + 1))
    if n and set(occ) != expected:
        raise ValueError("arc labels must be exactly 1..%d" % (2 * n))

    # role[ci][slot]: True if the arc arrives at this slot, False if it
    # leaves, None if not yet known.
    role: list[list[bool | None]] = [[True, None, False, None] for _ in range(n)]

    def other(ci: int, slot: int) -> tuple[int, int]:
        places = occ[tuples[ci][slot]]
        return places[1] if places[0] == (ci, slot) else places[0]

    changed = True
    while changed:
        changed = False
        for ci in range(n):
            for slot in range(4):
                r = role[ci][slot]
                if r is None:
                    continue
                cj, t = other(ci, slot)
                if role[cj][t] is None:
                    role[cj][t] = not r
                    changed = True
                elif role[cj][t] == r:
                    raise ValueError(
                        "arc %d cannot both arrive at and leave its endpoints" % tuples[ci][slot]
                    )
            # within one over pair, one arc arrives and one leaves
            rb, rd = role[ci][_OVER_B], role[ci][_OVER_D]
            if rb is None and rd is not None:
                role[ci][_OVER_B] = not rd
                changed = True
            elif rd is None and rb is not None:
                role[ci][_OVER_D] = not rb
                changed = True
            elif rb is not None and rd is not None and rb == rd:
                raise ValueError("over strand at crossing %d has no consistent direction" % ci)

    for ci in range(n):
        if role[ci][_OVER_B] is None:
            # never anchored by an under passage: fall back to label
            # succession (b -> d wins when both readings close up)
            b, d = tuples[ci][_OVER_B], tuples[ci][_OVER_D]
            if d == b + 1:
                arrives_at_b = True
            elif b == d + 1:
                arrives_at_b = False
            else:
                # the succession must wrap a component block: max -> min
                arrives_at_b = b > d
            role[ci][_OVER_B] = arrives_at_b
            role[ci][_OVER_D] = not arrives_at_b

    return [1 if role[ci][_OVER_B] else -1 for ci in range(n)]


# -- structural queries -------------------------------------------------------


def successor_map(d: OrientedDiagram) -> dict[int, int]:
    """succ[x] = arc following x along its strand (a permutation of arcs)."""
    succ: dict[int, int] = {}
    for cr in d.crossings:
        for src, dst in ((cr.a, cr.c), (cr.over_in(), cr.over_out())):
            if src in succ:
                raise ValueError("arc %d continues in two different ways" % src)
            succ[src] = dst
    return succ


def component_cycles(d: OrientedDiagram) -> list[list[int]]:
    """Arc cycles of the crossing-bearing components, ordered by min arc."""
    succ = successor_map(d)
    seen: set[int] = set()
    cycles: list[list[int]] = []
    for start in sorted(succ):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        x = succ[start]
        while x != start:
            if x in seen or x not in succ:
                raise ValueError("arc succession does not close into cycles at arc %d" % x)
            cycle.append(x)
            seen.add(x)
            x = succ[x]
        cycles.append(cycle)
    return cycles


def component_count(d: OrientedDiagram) -> int:
    return len(component_cycles(d)) + d.free_loops


def writhe(d: OrientedDiagram) -> int:
    return sum(cr.sign for cr in d.crossings)


def validate(d: OrientedDiagram) -> None:
    """Check the full labeling contract; raises ValueError on violation."""
    occ = _occurrences(cr.arcs() for cr in d.crossings)
    n = d.crossing_count
    for label, places in sorted(occ.items()):
        if len(places) != 2:
            raise ValueError("arc label %d appears %d times (expected 2)" % (label, len(places)))
    if n and set(occ) != set(range(1, 2 * n + 1)):
        raise ValueError("arc labels must be exactly 1..%d" % (2 * n))
    for cycle in component_cycles(d):
        lo = min(cycle)
        k = cycle.index(lo)
        ordered = cycle[k:] + cycle[:k]
        if ordered != list(range(lo, lo + len(cycle))):
            raise ValueError("broken cyclic arc sequence in component containing arc %d" % lo)


# -- relabeling ---------------------------------------------------------------


def _relabel(crossings: Iterable[Crossing], mapping: dict[int, int]) -> tuple[Crossing, ...]:
    return tuple(
        Crossing(mapping[cr.a], mapping[cr.b], mapping[cr.c], mapping[cr.d], cr.sign)
        for cr in crossings
    )


def renormalize(crossings: Iterable[Crossing], free_loops: int) -> OrientedDiagram:
    """Relabel arbitrary integer arcs to the contiguous 1..2c convention.

    Components are ordered by their smallest current label and each starts
    at its smallest current label; crossings are sorted for determinism.
    """
    crossings = tuple(crossings)
    probe = OrientedDiagram(crossings, free_loops) if (crossings or free_loops) else None
    if probe is None:
        raise ValueError("empty diagram: no crossings and no free loops")
    if not crossings:
        return probe
    mapping: dict[int, int] = {}
    nxt = 1
    for cycle in component_cycles(probe):
        lo = min(cycle)
        k = cycle.index(lo)
        for label in cycle[k:] + cycle[:k]:
            mapping[label] = nxt
            nxt += 1
    relabeled = sorted(_relabel(crossings, mapping))
    return OrientedDiagram(tuple(relabeled), free_loops)


def canonical_code(d: OrientedDiagram) -> str:
    """Label-independent serialization of the diagram.

    Brute force over component orderings and cyclic starting arcs; the
    lexicographically smallest serialization wins.  Intended scale is a
    dozen crossings, where the enumeration stays tiny.
    """
    if not d.crossings:
        return "|L%d" % d.free_loops
    cycles = component_cycles(d)
    best: str | None = None
    for order in itertools.permutations(range(len(cycles))):
        for starts in itertools.product(*(range(len(cycles[i])) for i in order)):
            mapping: dict[int, int] = {}
            nxt = 1
            for i, start in zip(order, starts):
                cycle = cycles[i]
                for k in range(len(cycle)):
                    mapping[cycle[(start + k) % len(cycle)]] = nxt
                    nxt += 1
            code = ";".join(
                "%d,%d,%d,%d,%d" % cr
                for cr in sorted(_relabel(d.crossings, mapping))
            )
            code = code + "|L%d" % d.free_loops
            if best is None or code < best:
                best = code
    assert best is not None
    return best


def mirror(d: OrientedDiagram) -> OrientedDiagram:
    """Exchange over and under strands at every crossing (negates signs).

    Arc labels are untouched: the strands and their orientations do not
    move, only their vertical order at each crossing flips.
    """
    out = []
    for cr in d.crossings:
        if cr.sign > 0:
            out.append(Crossing(cr.b, cr.c, cr.d, cr.a, -1))
        else:
            out.append(Crossing(cr.d, cr.a, cr.b, cr.c, 1))
    return OrientedDiagram(tuple(out), d.free_loops)


# -- connectivity -------------------------------------------------------------


def _crossing_groups(d: OrientedDiagram) -> list[list[int]]:
    """Connected groups of crossing indices (shared arcs connect)."""
    n = d.crossing_count
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_arc: dict[int, int] = {}
    for ci, cr in enumerate(d.crossings):
        for arc in cr.arcs():
            if arc in by_arc:
                ra, rb = find(by_arc[arc]), find(ci)
                if ra != rb:
                    parent[ra] = rb
            else:
                by_arc[arc] = ci
    groups: dict[int, list[int]] = {}
    for ci in range(n):
        groups.setdefault(find(ci), []).append(ci)
    return sorted(groups.values(), key=min)


def is_split(d: OrientedDiagram) -> bool:
    groups = _crossing_groups(d)
    parts = len(groups) + d.free_loops
    return parts > 1


def split_components(d: OrientedDiagram) -> list[OrientedDiagram]:
    """Maximal connected subdiagrams, free loops last as singletons."""
    parts = [
        renormalize((d.crossings[ci] for ci in group), 0)
        for group in _crossing_groups(d)
    ]
    parts.extend(OrientedDiagram((), 1) for _ in range(d.free_loops))
    return parts


def disjoint_union(d1: OrientedDiagram, d2: OrientedDiagram) -> OrientedDiagram:
    offset = 2 * d1.crossing_count
    shifted = tuple(
        Crossing(cr.a + offset, cr.b + offset, cr.c + offset, cr.d + offset, cr.sign)
        for cr in d2.crossings
    )
    return renormalize(d1.crossings + shifted, d1.free_loops + d2.free_loops)


# -- planar faces -------------------------------------------------------------


def faces(d: OrientedDiagram) -> list[list[tuple[int, int]]]:
    """Faces of the planar embedding encoded by the counterclockwise tuples.

    Each face is a cyclic list of half-edges (crossing index, slot); the
    corner (ci, s) walks the arc at that slot away from crossing ci.  For
    a connected diagram Euler's formula gives c + 2 faces.  Crossingless
    components do not appear.
    """
    occ = _occurrences(cr.arcs() for cr in d.crossings)

    def other(ci: int, slot: int) -> tuple[int, int]:
        places = occ[d.crossings[ci].arcs()[slot]]
        return places[1] if places[0] == (ci, slot) else places[0]

    remaining = {(ci, s) for ci in range(d.crossing_count) for s in range(4)}
    out: list[list[tuple[int, int]]] = []
    while remaining:
        start = min(remaining)
        face = []
        cur = start
        while True:
            face.append(cur)
            remaining.discard(cur)
            cj, t = other(*cur)
            cur = (cj, (t + 1) % 4)
            if cur == start:
                break
        out.append(face)
    return out


def arriving_slots(cr: Crossing) -> tuple[int, int]:
    """Slots where arcs arrive at this crossing (under-in and over-in)."""
    return (_UNDER_IN, _OVER_B if cr.sign > 0 else _OVER_D)


def leaving_slots(cr: Crossing) -> tuple[int, int]:
    return (_UNDER_OUT, _OVER_D if cr.sign > 0 else _OVER_B)
