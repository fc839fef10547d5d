"""Constructive rainbow perfect matchings under the minimum-degree condition.

With ``s = n/2`` colors, a rainbow matching is grown greedily (or by a
weight-3 swap) until it has ``l = n/2 - 1`` edges.  The last edge comes from
the digraph ``D`` on ``V`` with an arc ``x -> y`` whenever ``x`` is matched
to ``z != y`` and the color of ``xz`` is also on ``xy``.  Three guarded
moves, tried in order, turn high in-degrees into a completed matching.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterable

from .collection import Edge, GraphCollection, Transversal, canon, check_dirac, iter_bits, lowest_bit
from .errors import InputError, InvariantViolation


@dataclass(frozen=True)
class MatchState:
    """A rainbow matching; ``items`` keeps ``(u, v, color)`` in insertion order."""

    n: int
    s: int
    items: tuple[tuple[int, int, int], ...] = ()

    @property
    def size(self) -> int:
        return len(self.items)

    @property
    def edges(self) -> list[Edge]:
        return [(u, v) for u, v, _ in self.items]

    @property
    def phi(self) -> dict[Edge, int]:
        return {(u, v): c for u, v, c in self.items}

    @property
    def missed(self) -> frozenset[int]:
        return frozenset(range(1, self.s + 1)) - {c for _, _, c in self.items}

    @property
    def matched_mask(self) -> int:
        m = 0
        for u, v, _ in self.items:
            m |= (1 << u) | (1 << v)
        return m

    @property
    def free(self) -> list[int]:
        return list(iter_bits(~self.matched_mask & ((1 << self.n) - 1)))

    def partner(self) -> dict[int, tuple[int, int]]:
        """Map each matched vertex to ``(partner, color)``."""
        out = {}
        for u, v, c in self.items:
            out[u] = (v, c)
            out[v] = (u, c)
        return out

    def without(self, *drop: Iterable[int]) -> "MatchState":
        gone = {canon(*e) for e in drop}
        return MatchState(self.n, self.s, tuple(it for it in self.items if (it[0], it[1]) not in gone))

    def plus(self, *add: tuple[int, int, int]) -> "MatchState":
        new = tuple((*canon(u, v), c) for u, v, c in add)
        return MatchState(self.n, self.s, self.items + new)

    def to_transversal(self) -> Transversal:
        return Transversal(self.phi)

    def snapshot(self) -> dict[str, Any]:
        return {"n": self.n, "s": self.s, "edges": [list(it) for it in self.items]}


def validate_match_state(state: MatchState, g: GraphCollection) -> None:
    problems = []
    seen: set[int] = set()
    colors: set[int] = set()
    for u, v, c in state.items:
        if not 0 <= u < v < g.n:
            problems.append(f"edge {u}-{v} not canonical")
            continue
        if u in seen or v in seen:
            problems.append(f"edge {u}-{v} overlaps another")
        seen.update((u, v))
        if c in colors:
            problems.append(f"color {c} used twice")
        colors.add(c)
        if not 1 <= c <= g.s or not g.has_edge(c, u, v):
            problems.append(f"edge {u}-{v} not in G_{c}")
    if problems:
        raise InvariantViolation("invalid matching state: " + "; ".join(problems), state.snapshot())


@dataclass
class MatchingStats:
    growth_steps: int = 0
    moves: Counter = field(default_factory=Counter)
    completion: str | None = None
    digraph_builds: int = 0

    def as_dict(self) -> dict[str, Any]:
        return {
            "growth_steps": self.growth_steps,
            "moves": dict(sorted(self.moves.items())),
            "completion": self.completion,
            "digraph_builds": self.digraph_builds,
        }


def _target_size(n: int) -> int:
    return n // 2 - 1


def grow_matching_step(state: MatchState, g: GraphCollection, stats: MatchingStats | None = None) -> MatchState:
    """Add one edge: greedily if possible, else by swapping out a weight-3 edge."""
    if state.size >= _target_size(g.n):
        raise InputError(f"matching already has {state.size} >= n/2 - 1 edges")
    full = (1 << g.n) - 1
    free_mask = ~state.matched_mask & full
    missed = sorted(state.missed)

    for m in missed:
        for u in iter_bits(free_mask):
            w = lowest_bit(g.nbr_mask(m, u) & free_mask)
            if w >= 0:
                if stats is not None:
                    stats.moves["greedy"] += 1
                return state.plus((u, w, m))

    ca, cb = missed[0], missed[1]
    free = list(iter_bits(free_mask))
    x, x2 = free[0], free[1]
    for u, v, _ in state.items:
        weight = g.has_edge(ca, x, u) + g.has_edge(ca, x, v) + g.has_edge(cb, x2, u) + g.has_edge(cb, x2, v)
        if weight < 3:
            continue
        for a, b in ((u, v), (v, u)):
            if g.has_edge(ca, x, a) and g.has_edge(cb, x2, b):
                if stats is not None:
                    stats.moves["weight-swap"] += 1
                return state.without((u, v)).plus((x, a, ca), (x2, b, cb))
    raise InvariantViolation("no matching growth move applies", state.snapshot())


@dataclass(frozen=True)
class MatchDigraph:
    """Arc ``x -> y`` iff ``x`` is matched to ``z != y`` and ``phi(xz)`` is on ``xy``."""

    n: int
    out_masks: tuple[int, ...]
    in_masks: tuple[int, ...]

    @property
    def indeg(self) -> list[int]:
        return [m.bit_count() for m in self.in_masks]

    @property
    def outdeg(self) -> list[int]:
        return [m.bit_count() for m in self.out_masks]

    def has_arc(self, u: int, v: int) -> bool:
        return bool((self.out_masks[u] >> v) & 1)

    def out_neighbors(self, v: int) -> frozenset[int]:
        return frozenset(iter_bits(self.out_masks[v]))

    @property
    def arc_count(self) -> int:
        return sum(self.outdeg)


def build_match_digraph(state: MatchState, g: GraphCollection) -> MatchDigraph:
    n = g.n
    out = [0] * n
    inn = [0] * n
    for x, (z, c) in state.partner().items():
        arcs = g.nbr_mask(c, x) & ~(1 << z)
        out[x] = arcs
        for y in iter_bits(arcs):
            inn[y] |= 1 << x
    return MatchDigraph(n, tuple(out), tuple(inn))


def _require_target(state: MatchState, g: GraphCollection) -> None:
    if state.size != _target_size(g.n):
        raise InputError(f"completion needs exactly n/2 - 1 = {_target_size(g.n)} edges, got {state.size}")


def _finish(state: MatchState, g: GraphCollection, what: str, stats: MatchingStats | None = None) -> Transversal:
    validate_match_state(state, g)
    if state.size != g.s or state.matched_mask != (1 << g.n) - 1:
        raise InvariantViolation(f"{what} did not produce a perfect matching", state.snapshot())
    if stats is not None:
        stats.moves[what] += 1
    return state.to_transversal()


def complete_free_high_indeg(
    state: MatchState, D: MatchDigraph, g: GraphCollection, stats: MatchingStats | None = None
) -> Transversal | None:
    """Finish when an unmatched vertex has in-degree at least ``l``; else ``None``."""
    _require_target(state, g)
    ell = _target_size(g.n)
    (m,) = state.missed
    free = state.free
    indeg = D.indeg
    for x in free:
        if indeg[x] < ell:
            continue
        (x2,) = [f for f in free if f != x]
        if g.has_edge(m, x, x2):
            return _finish(state.plus((x, x2, m)), g, "free-direct", stats)
        for u, v, c in state.items:
            for y, y2 in ((u, v), (v, u)):
                if D.has_arc(y, x) and g.has_edge(m, x2, y2):
                    return _finish(state.without((u, v)).plus((y, x, c), (x2, y2, m)), g, "free-swap", stats)
        raise InvariantViolation(f"free vertex {x} has in-degree {indeg[x]} >= {ell} but no swap", state.snapshot())
    return None


def reduce_matched_high_indeg(
    state: MatchState, D: MatchDigraph, g: GraphCollection, stats: MatchingStats | None = None
) -> MatchState | None:
    """Move a matched vertex of in-degree at least ``l + 1`` out of the matching.

    The returned matching has the same size and leaves that vertex unmatched
    with in-degree at least ``l``, so :func:`complete_free_high_indeg` finishes it.
    """
    _require_target(state, g)
    ell = _target_size(g.n)
    indeg = D.indeg
    partner = state.partner()
    (m,) = state.missed
    free = state.free
    for x in sorted(partner):
        if indeg[x] < ell + 1:
            continue
        y, c2 = partner[x]
        for i in (m, c2):
            for zt in free:
                if g.has_edge(i, y, zt):
                    if stats is not None:
                        stats.moves["reduce-reassign"] += 1
                    return state.without((x, y)).plus((y, zt, i))
        matched = state.matched_mask & ~((1 << x) | (1 << y))
        for z in free:
            for u in iter_bits(g.nbr_mask(c2, y) & matched & ~(1 << z)):
                u2, _ = partner[u]
                if g.has_edge(m, u2, z):
                    if stats is not None:
                        stats.moves["reduce-swap"] += 1
                    return state.without((x, y), (u, u2)).plus((u, y, c2), (u2, z, m))
        raise InvariantViolation(f"matched vertex {x} has in-degree {indeg[x]} > {ell} but no reduction", state.snapshot())
    return None


def final_augment(
    state: MatchState, D: MatchDigraph, g: GraphCollection, stats: MatchingStats | None = None
) -> Transversal:
    """Completion once no vertex has an in-degree above the two thresholds."""
    _require_target(state, g)
    ell = _target_size(g.n)
    (m,) = state.missed
    indeg = D.indeg
    partner = state.partner()
    z0, z1 = state.free
    for z, z2 in ((z0, z1), (z1, z0)):
        for x in sorted(partner):
            y, c2 = partner[x]
            if indeg[x] < ell - 1 or not g.has_edge(m, y, z):
                continue
            if g.has_edge(c2, x, z2):
                return _finish(state.without((x, y)).plus((y, z, m), (x, z2, c2)), g, "final-direct", stats)
            if g.has_edge(c2, y, z2):
                moved = state.without((x, y)).plus((y, z2, c2))
                if stats is not None:
                    stats.moves["final-reanchor"] += 1
                done = complete_free_high_indeg(moved, build_match_digraph(moved, g), g, stats)
                if done is None:
                    raise InvariantViolation("re-anchored matching did not complete", moved.snapshot())
                return done
            m1 = state.without((x, y)).plus((y, z, m))
            D1 = build_match_digraph(m1, g)
            p1 = m1.partner()
            candidates = []
            for w in iter_bits(g.nbr_mask(c2, z2) & ~((1 << x) | (1 << y) | (1 << z2))):
                if w not in p1:
                    raise InvariantViolation(f"vertex {w} should be matched", m1.snapshot())
                candidates.append(p1[w][0])
            for u in sorted(candidates):
                if u in (x, z, z2) or not D1.has_arc(u, x):
                    continue
                v, c = p1[u]
                return _finish(m1.without((u, v)).plus((u, x, c), (v, z2, c2)), g, "final-swap", stats)
            raise InvariantViolation("final augmentation found no swap vertex", m1.snapshot())
    raise InvariantViolation("no matched pair with the required in-degree", state.snapshot())


def find_perfect_matching(g: GraphCollection, stats: MatchingStats | None = None) -> Transversal:
    """Return a rainbow perfect matching of a collection meeting the degree condition."""
    if not check_dirac(g, "matching"):
        raise InputError("collection does not satisfy the matching degree condition (s = n/2, 2*delta >= n)")
    if stats is None:
        stats = MatchingStats()
    n = g.n
    ell = _target_size(n)
    state = MatchState(n, g.s)
    while state.size < ell:
        state = grow_matching_step(state, g, stats)
        validate_match_state(state, g)
        stats.growth_steps += 1

    (m,) = state.missed
    z0, z1 = state.free
    if g.has_edge(m, z0, z1):
        stats.completion = "direct"
        return _finish(state.plus((z0, z1, m)), g, "direct", stats)

    D = build_match_digraph(state, g)
    stats.digraph_builds += 1
    t = complete_free_high_indeg(state, D, g, stats)
    if t is not None:
        stats.completion = "free-high-indegree"
        return t
    indeg = D.indeg
    if any(indeg[z] > ell - 1 for z in (z0, z1)):
        raise InvariantViolation("free vertex in-degree above l - 1 after the free move failed", state.snapshot())

    reduced = reduce_matched_high_indeg(state, D, g, stats)
    if reduced is not None:
        validate_match_state(reduced, g)
        D2 = build_match_digraph(reduced, g)
        stats.digraph_builds += 1
        t = complete_free_high_indeg(reduced, D2, g, stats)
        if t is None:
            raise InvariantViolation("reduced matching did not complete", reduced.snapshot())
        stats.completion = "matched-high-indegree"
        return t
    if any(d > ell for d in indeg):
        raise InvariantViolation("in-degree above l after the reduction failed", state.snapshot())
    high = sum(1 for v in state.partner() if indeg[v] >= ell - 1)
    if 2 * high < n:
        raise InvariantViolation(f"only {high} matched vertices with in-degree >= l - 1", state.snapshot())

    stats.completion = "final-augment"
    return final_augment(state, D, g, stats)
