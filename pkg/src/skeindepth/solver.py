"""Iterative-deepening search for the resolution depth of a link.

``depth_at_most(d, k)`` asks whether some tree of switch/smooth
resolutions of height <= k ends in certified unlinks at every leaf; the
answer is three-valued (True / False / None for "budget ran out").
``compute_td`` sweeps k upward from the best lower bound and reports
either an exact depth with a witness tree or a certified interval.

Soundness rules the search lives by:

* every node diagram is simplified before anything else happens to it;
* a node counts as a leaf only when the unlink recognizer certifies it;
* the polynomial z-degree prunes a subtree only because every valid
  tree under a diagram is at least that tall;
* a failed search at depth k refutes depth k for that diagram, but a
  budget exhaustion refutes nothing — it surfaces as None and widens
  the reported interval.

Per-diagram results (depth intervals, witnesses, recognizer verdicts,
polynomials) are memoized on the canonical code inside a SolveContext,
so the k-sweep and sibling subtrees share work.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional, Union

from .bounds import BoundsReport, aggregate_bounds
from .diagram import OrientedDiagram, canonical_code, component_count
from .moves import Verdict, _side_groups, recognize_unlink, simplify, smooth, switch
from .poly import HomflyCache, LaurentPoly2, homfly

DEFAULT_BUDGET = 5_000_000
_INF = 10**9


@dataclass(frozen=True)
class SkeinLeaf:
    """A certified unlink with the given component count."""

    diagram: OrientedDiagram
    components: int


@dataclass(frozen=True)
class SkeinBranch:
    """Resolution at one crossing: both children are simplified."""

    diagram: OrientedDiagram
    crossing: int
    switched: "SkeinTree"
    smoothed: "SkeinTree"


SkeinTree = Union[SkeinLeaf, SkeinBranch]


def tree_depth(tree: SkeinTree) -> int:
    if isinstance(tree, SkeinLeaf):
        return 0
    return 1 + max(tree_depth(tree.switched), tree_depth(tree.smoothed))


class SolveContext:
    """Shared state for one or many solves: caches, memo tables, budgets.

    memo maps canonical codes to certified depth intervals [lo, hi];
    witness keeps, per code, the shallowest recorded resolution step so
    a tree can be rebuilt without re-searching.
    """

    def __init__(
        self,
        cache: HomflyCache | None = None,
        recognizer_nodes: int = 10000,
        deadline: float | None = None,
    ):
        self.homfly_cache = cache if cache is not None else HomflyCache()
        self.memo: dict[str, tuple[int, int]] = {}
        # intervals imported from a previous run's cache file: trusted for
        # pruning but carrying no witness payloads
        self.persisted: dict[str, tuple[int, int]] = {}
        self.witness: dict[str, tuple[int, tuple]] = {}
        self.verdicts: dict[str, Verdict] = {}
        self.recognizer_nodes = recognizer_nodes
        self.deadline = deadline
        self.nodes = 0

    def out_of_time(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline

    def poly_of(self, d: OrientedDiagram) -> LaurentPoly2:
        return homfly(d, self.homfly_cache)

    def verdict_of(self, code: str, d: OrientedDiagram) -> Verdict:
        v = self.verdicts.get(code)
        if v is None:
            v = recognize_unlink(
                d, homfly_value=self.poly_of(d), node_limit=self.recognizer_nodes
            )
            self.verdicts[code] = v
        return v


_shared_context: SolveContext | None = None


def _default_context() -> SolveContext:
    global _shared_context
    if _shared_context is None:
        _shared_context = SolveContext()
    return _shared_context


def _record_leaf(ctx: SolveContext, code: str, components: int) -> None:
    if code not in ctx.witness or ctx.witness[code][0] > 0:
        ctx.witness[code] = (0, ("leaf", components))


def _record_branch(ctx, code, i, d, sw, sm) -> None:
    h = 1 + max(ctx.witness[canonical_code(sw)][0], ctx.witness[canonical_code(sm)][0])
    if code not in ctx.witness or h < ctx.witness[code][0]:
        ctx.witness[code] = (h, ("branch", i, d, sw, sm))


def _branch_order(d: OrientedDiagram) -> list[int]:
    """Try minority-sign crossings first, then ones whose smoothing keeps
    the diagram connected, then by index.  Pure heuristic — any order is
    sound — but it finds descending resolutions early on mixed diagrams."""
    pos = sum(1 for cr in d.crossings if cr.sign > 0)
    neg = d.crossing_count - pos
    minority = 1 if pos < neg else (-1 if neg < pos else 0)

    def key(i: int):
        cr = d.crossings[i]
        connected = len(_side_groups(d, i)) == 1
        return (cr.sign != minority, not connected, i)

    return sorted(range(d.crossing_count), key=key)


def _search(d: OrientedDiagram, k: int, ctx: SolveContext, limit: int):
    """True / False / None for: some certified tree of height <= k exists."""
    d = simplify(d)
    code = canonical_code(d)
    if d.is_crossingless():
        _record_leaf(ctx, code, component_count(d))
        return True
    v = ctx.verdict_of(code, d)
    if v.is_unlink:
        _record_leaf(ctx, code, v.components)
        return True

    lo, hi = ctx.memo.get(code, (1, _INF))
    if code in ctx.persisted:
        plo, phi = ctx.persisted[code]
        lo, hi = max(lo, plo), min(hi, phi)
    if hi <= k:
        return True
    if k < lo:
        return False
    self_lb = max(1, ctx.poly_of(d).z_degree())
    if self_lb > k:
        ctx.memo[code] = (max(lo, self_lb), hi)
        return False

    if ctx.nodes >= limit or ctx.out_of_time():
        return None
    ctx.nodes += 1

    saw_unknown = False
    for i in _branch_order(d):
        sw = simplify(switch(d, i))
        sm = simplify(smooth(d, i))
        r_sw = _search(sw, k - 1, ctx, limit)
        if r_sw is None:
            saw_unknown = True
            continue
        if r_sw is False:
            continue
        r_sm = _search(sm, k - 1, ctx, limit)
        if r_sm is None:
            saw_unknown = True
            continue
        if r_sm is False:
            continue
        _record_branch(ctx, code, i, d, sw, sm)
        ctx.memo[code] = (lo, min(hi, k))
        return True
    if saw_unknown:
        return None
    ctx.memo[code] = (max(lo, k + 1), hi)
    return False


def depth_at_most(
    d: OrientedDiagram,
    k: int,
    budget: int = DEFAULT_BUDGET,
    ctx: SolveContext | None = None,
):
    """Does the link of d admit a resolution tree of height <= k?

    Returns True (a witness is then available via extract_tree with the
    same context), False (certified impossible), or None when the node
    budget or deadline ran out before an answer.
    """
    if k < 0:
        return False
    ctx = ctx or _default_context()
    return _search(d, k, ctx, ctx.nodes + budget)


def _build_tree(ctx: SolveContext, d: OrientedDiagram) -> SkeinTree:
    d = simplify(d)
    code = canonical_code(d)
    entry = ctx.witness.get(code)
    if entry is None:
        raise LookupError(f"no witness recorded for {d!r}")
    payload = entry[1]
    if payload[0] == "leaf":
        return SkeinLeaf(d, payload[1])
    _, i, node, sw, sm = payload
    # rebuild on the recorded node diagram: equal link, same canonical code
    return SkeinBranch(node, i, _build_tree(ctx, sw), _build_tree(ctx, sm))


def extract_tree(
    d: OrientedDiagram,
    k: int,
    budget: int = DEFAULT_BUDGET,
    ctx: SolveContext | None = None,
) -> SkeinTree:
    """Witness tree of height <= k, searching first if needed.

    Raises LookupError when no witness is available (the search answered
    False or ran out of budget).
    """
    ctx = ctx or _default_context()
    res = depth_at_most(d, k, budget, ctx)
    if res is not True:
        raise LookupError(f"no depth-{k} witness available (search said {res})")
    return _build_tree(ctx, d)


def verify_tree(tree: SkeinTree) -> int:
    """Independent replay of a witness tree; returns its height.

    Checks, per node: leaves are certified unlinks with the stated
    component count, branch children are exactly the simplified switch
    and smoothing of the node diagram at the stored crossing.  Raises
    ValueError on the first violation.
    """
    if isinstance(tree, SkeinLeaf):
        d = tree.diagram
        v = recognize_unlink(d)
        if not v.is_unlink:
            raise ValueError(f"leaf not certified as an unlink: {d!r}")
        if v.components != tree.components:
            raise ValueError(
                f"leaf claims {tree.components} components, recognizer says {v.components}"
            )
        return 0
    d = tree.diagram
    if not 0 <= tree.crossing < d.crossing_count:
        raise ValueError(f"branch crossing index {tree.crossing} out of range")
    for child, op, name in (
        (tree.switched, switch, "switch"),
        (tree.smoothed, smooth, "smoothing"),
    ):
        want = canonical_code(simplify(op(d, tree.crossing)))
        if canonical_code(child.diagram) != want:
            raise ValueError(f"{name} child does not match the recorded move")
    return 1 + max(verify_tree(tree.switched), verify_tree(tree.smoothed))


@dataclass
class TdResult:
    """Outcome of a depth computation: exact when the bounds meet.

    link_lower is a property of the link; diagram_upper is certified by
    a witness tree or by diagram-level bounds.  budget_exhausted marks
    intervals that might have closed with more search.
    """

    link_lower: int
    diagram_upper: int
    witness: Optional[SkeinTree] = None
    bounds: Optional[BoundsReport] = None
    budget_exhausted: bool = False

    @property
    def is_exact(self) -> bool:
        return self.link_lower == self.diagram_upper

    @property
    def value(self) -> int:
        if not self.is_exact:
            raise ValueError(f"not exact: [{self.link_lower}, {self.diagram_upper}]")
        return self.link_lower

    @property
    def status(self) -> str:
        if self.is_exact:
            return f"Exact({self.link_lower})"
        return f"Interval({self.link_lower}, {self.diagram_upper})"

    def render(self) -> str:
        if self.is_exact:
            return str(self.link_lower)
        return f"[{self.link_lower}, {self.diagram_upper}]"


def compute_td(
    d: OrientedDiagram,
    genus: int | None = None,
    braid_words=None,
    budget: int = DEFAULT_BUDGET,
    max_depth: int | None = None,
    timeout_secs: float | None = None,
    ctx: SolveContext | None = None,
) -> TdResult:
    """Resolution depth of the link of d: exact value or certified interval.

    genus and braid_words feed the bound aggregator (both are trusted
    claims about the link of d).  budget caps search nodes per depth
    probe; max_depth caps how deep the sweep probes (the bound-derived
    upper still stands).  Budget or time exhaustion widens the answer to
    an interval, never falsifies it.
    """
    ctx = ctx or _default_context()
    saved_deadline = ctx.deadline
    if timeout_secs is not None:
        ctx.deadline = time.monotonic() + timeout_secs
    try:
        work = simplify(d)
        if work.is_crossingless():
            return TdResult(0, 0, SkeinLeaf(work, component_count(work)))
        code = canonical_code(work)
        if ctx.verdict_of(code, work).is_unlink:
            return TdResult(0, 0, SkeinLeaf(work, component_count(work)))

        rep = aggregate_bounds(work, genus, braid_words, cache=ctx.homfly_cache)
        lower, upper = rep.lower, rep.upper
        kmax = upper if max_depth is None else min(upper, max_depth)
        witness = None
        exhausted = False
        for k in range(lower, kmax + 1):
            res = depth_at_most(work, k, budget, ctx)
            if res is True:
                try:
                    witness = _build_tree(ctx, work)
                    upper = tree_depth(witness)
                except LookupError:
                    # success came from a cache-loaded interval: no tree
                    upper = min(upper, k)
                break
            if res is None:
                exhausted = True
                break
        return TdResult(
            lower,
            upper,
            witness,
            rep,
            budget_exhausted=exhausted and lower != upper,
        )
    finally:
        ctx.deadline = saved_deadline
