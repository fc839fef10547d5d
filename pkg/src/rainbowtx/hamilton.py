"""Constructive rainbow Hamilton cycles under the minimum-degree condition.

The solver keeps a rainbow path or cycle and improves it with a fixed menu of
local moves until it either closes a Hamiltonian transversal or reaches a
cycle through ``n - 1`` vertices that misses exactly one color.  That last
configuration is completed through the auxiliary digraph ``D`` whose arcs
``x -> z`` record that the color on ``x``'s successor edge also lies on
``xz``.

Every move is guarded by a direct membership check, so a returned state is
always a valid partial transversal; the degree condition is what guarantees
some move applies.  When none does, :class:`InvariantViolation` is raised.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .collection import (
    Edge,
    GraphCollection,
    Transversal,
    canon,
    check_dirac,
    iter_bits,
    lowest_bit,
    mask_of,
)
from .errors import InputError, InvariantViolation


@dataclass(frozen=True)
class HamState:
    """A rainbow path or cycle.

    ``colors[k]`` is the color of the edge ``vertices[k] - vertices[k + 1]``;
    for a cycle the last entry colors the wrap-around edge.
    """

    vertices: tuple[int, ...]
    colors: tuple[int, ...]
    is_cycle: bool
    missed: frozenset[int]

    @classmethod
    def build(cls, vertices: Iterable[int], colors: Iterable[int], is_cycle: bool, s: int) -> "HamState":
        cs = tuple(colors)
        return cls(tuple(vertices), cs, is_cycle, frozenset(range(1, s + 1)) - set(cs))

    @property
    def edge_count(self) -> int:
        return len(self.colors)

    @property
    def potential(self) -> int:
        return 2 * len(self.colors) + int(self.is_cycle)

    def edges(self) -> list[Edge]:
        vs = self.vertices
        k = len(vs)
        out = [canon(vs[i], vs[i + 1]) for i in range(k - 1)]
        if self.is_cycle:
            out.append(canon(vs[-1], vs[0]))
        return out

    @property
    def phi(self) -> dict[Edge, int]:
        return dict(zip(self.edges(), self.colors))

    def to_transversal(self) -> Transversal:
        return Transversal(self.phi)

    def snapshot(self) -> dict[str, Any]:
        return {
            "vertices": list(self.vertices),
            "colors": list(self.colors),
            "is_cycle": self.is_cycle,
            "missed": sorted(self.missed),
        }


def validate_state(state: HamState, collection: GraphCollection) -> None:
    """Raise :class:`InvariantViolation` unless ``state`` is a rainbow path/cycle."""
    vs, cs = state.vertices, state.colors
    problems = []
    if len(set(vs)) != len(vs):
        problems.append("repeated vertex")
    if any(not 0 <= v < collection.n for v in vs):
        problems.append("vertex out of range")
    expected = len(vs) if state.is_cycle else len(vs) - 1
    if len(cs) != expected:
        problems.append(f"{len(cs)} colors for {expected} edges")
    if state.is_cycle and len(vs) < 3:
        problems.append("cycle shorter than 3")
    if len(set(cs)) != len(cs):
        problems.append("color used twice")
    if state.missed != frozenset(range(1, collection.s + 1)) - set(cs):
        problems.append("missed set out of sync")
    if not problems:
        for (u, v), c in zip(state.edges(), cs):
            if not 1 <= c <= collection.s or not collection.has_edge(c, u, v):
                problems.append(f"edge {u}-{v} not in G_{c}")
                break
    if problems:
        raise InvariantViolation("invalid search state: " + "; ".join(problems), state.snapshot())


def is_hamiltonian(state: HamState, n: int) -> bool:
    return state.is_cycle and len(state.vertices) == n


def is_near_hamilton(state: HamState, n: int) -> bool:
    return state.is_cycle and len(state.vertices) == n - 1 and len(state.missed) == 1


@dataclass
class HamiltonStats:
    """Counters filled in by :func:`find_hamilton`."""

    route: str = ""
    steps: int = 0
    moves: Counter = field(default_factory=Counter)
    potentials: list[int] = field(default_factory=list)
    finalize_case: str | None = None
    arc_count: int | None = None
    y_outdegree: int | None = None
    y_indegree: int | None = None

    def as_dict(self) -> dict[str, Any]:
        return {
            "route": self.route,
            "steps": self.steps,
            "moves": dict(sorted(self.moves.items())),
            "finalize_case": self.finalize_case,
            "arc_count": self.arc_count,
            "y_outdegree": self.y_outdegree,
            "y_indegree": self.y_indegree,
        }


# ---------------------------------------------------------------------------
# growth phase


def initial_state(collection: GraphCollection) -> HamState:
    """Greedy rainbow path with three edges, seeded by the first edge of ``G_1``."""
    n, s = collection.n, collection.s
    if n < 5:
        raise InputError(f"the move system needs n >= 5, got n={n}")
    if not check_dirac(collection, "hamilton"):
        raise InputError("collection does not satisfy the Hamilton degree condition")
    first = collection.edges(1)
    if not first:
        raise InvariantViolation("G_1 has no edges")
    vs = list(first[0])
    cs = [1]
    while len(cs) < 3:
        used = mask_of(vs)
        out = ~used & ((1 << n) - 1)
        for m in range(1, s + 1):
            if m in cs:
                continue
            w = lowest_bit(collection.nbr_mask(m, vs[-1]) & out)
            if w >= 0:
                vs.append(w)
                cs.append(m)
                break
            w = lowest_bit(collection.nbr_mask(m, vs[0]) & out)
            if w >= 0:
                vs.insert(0, w)
                cs.insert(0, m)
                break
        else:
            raise InvariantViolation("greedy start stalled", {"vertices": vs, "colors": cs})
    return HamState.build(vs, cs, False, s)


def _two_smallest(colors: Iterable[int]) -> tuple[int, int] | None:
    cs = sorted(colors)
    return (cs[0], cs[1]) if len(cs) >= 2 else None


def _path_moves(state: HamState, g: GraphCollection) -> tuple[str, list[int], list[int], bool] | None:
    X, C = list(state.vertices), list(state.colors)
    ell = len(C)
    full = (1 << g.n) - 1
    missed = sorted(state.missed)

    # full close
    if ell >= 2:
        for m in missed:
            if g.has_edge(m, X[0], X[-1]):
                return "close", X, C + [m], True

    # close the sub-path that drops the last edge
    sub_avail = sorted(state.missed | {C[-1]})
    if ell >= 3:
        for m in sub_avail:
            if g.has_edge(m, X[0], X[-2]):
                return "subpath-close", X[:-1], C[:-1] + [m], True

    out = ~mask_of(X) & full
    for m in missed:
        w = lowest_bit(g.nbr_mask(m, X[-1]) & out)
        if w >= 0:
            return "extend", X + [w], C + [m], False
        w = lowest_bit(g.nbr_mask(m, X[0]) & out)
        if w >= 0:
            return "extend", [w] + X, [m] + C, False

    if ell >= 3:
        pair = _two_smallest(sub_avail)
        assert pair is not None
        ca, cb = pair
        P, CP = X[:-1], C[:-1]
        x1, xl = P[0], P[-1]
        # 1-based positions: I1 = {i in [1, l-2] : ca on x1 x_{i+1}}, I2 = {i in [2, l-1] : cb on x_i x_l}
        i1 = {i for i in range(1, ell - 1) if g.has_edge(ca, x1, P[i])}
        i2 = {i for i in range(2, ell) if g.has_edge(cb, P[i - 1], xl)}
        both = i1 & i2
        if both:
            j = min(both)
            verts = P[:j] + P[j:][::-1]
            cols = CP[: j - 1] + [cb] + CP[j:][::-1] + [ca]
            return "rotate", verts, cols, True
        outside_p = ~mask_of(P) & full
        y = lowest_bit(g.nbr_mask(ca, x1) & g.nbr_mask(cb, xl) & outside_p)
        if y >= 0:
            return "rotate-close", P + [y], CP + [cb, ca], True
        raise InvariantViolation(
            f"rotation found no witness (|I1|+|I2|={len(i1) + len(i2)}, l={ell})", state.snapshot()
        )
    return None


def _cycle_moves(state: HamState, g: GraphCollection) -> tuple[str, list[int], list[int], bool] | None:
    X, C = list(state.vertices), list(state.colors)
    ell = len(C)
    full = (1 << g.n) - 1
    cyc = mask_of(X)
    out = ~cyc & full
    pair = _two_smallest(state.missed)

    if pair is not None and out:
        ca, cb = pair
        orders = ((ca, cb), (cb, ca))
        # cut one cycle edge, hang an outside vertex off each new end
        for k in range(ell):
            head, tail = X[(k + 1) % ell], X[k]
            for a, b in orders:
                y = lowest_bit(g.nbr_mask(a, head) & out)
                if y < 0:
                    continue
                z = lowest_bit(g.nbr_mask(b, tail) & out)
                if z < 0:
                    continue
                path = X[k + 1 :] + X[: k + 1]
                pcols = C[k + 1 :] + C[:k]
                if y == z:
                    return "cycle-extend", [y] + path, [a] + pcols + [b], True
                return "cycle-extend", [y] + path + [z], [a] + pcols + [b], False

        # two outside vertices joined in a missed color, hung off one cycle vertex
        pos = {v: i for i, v in enumerate(X)}
        for a, b in orders:
            for v in iter_bits(out):
                u = lowest_bit(g.nbr_mask(a, v) & out)
                if u < 0:
                    continue
                t = lowest_bit(g.nbr_mask(b, v) & cyc)
                if t < 0:
                    continue
                p = pos[t]
                path = X[p + 1 :] + X[: p + 1]
                pcols = C[p + 1 :] + C[:p]
                return "cycle-tail", path + [v, u], pcols + [b, a], False

        # insert one outside vertex between consecutive cycle vertices
        for v in iter_bits(out):
            for a, b in orders:
                for w in iter_bits(g.nbr_mask(a, v) & cyc):
                    k = (pos[w] - 1) % ell
                    if g.has_edge(b, v, X[k]):
                        return "insert", X[: k + 1] + [v] + X[k + 1 :], C[:k] + [b, a] + C[k + 1 :], True

    if out and state.missed:
        # reuse the color freed by the replaced edge
        m = min(state.missed)
        for v in iter_bits(out):
            for k in range(ell):
                left, right, f = X[k], X[(k + 1) % ell], C[k]
                for a, b in ((m, f), (f, m)):
                    if g.has_edge(a, v, right) and g.has_edge(b, v, left):
                        return "insert", X[: k + 1] + [v] + X[k + 1 :], C[:k] + [b, a] + C[k + 1 :], True
    return None


def grow_step(state: HamState, collection: GraphCollection, stats: HamiltonStats | None = None) -> HamState:
    """Apply the first applicable move; the result has strictly larger potential."""
    if is_hamiltonian(state, collection.n):
        raise InputError("state is already a Hamiltonian transversal")
    found = _cycle_moves(state, collection) if state.is_cycle else _path_moves(state, collection)
    if found is None:
        raise InvariantViolation("no growth move applies", state.snapshot())
    kind, verts, cols, is_cycle = found
    new = HamState.build(verts, cols, is_cycle, collection.s)
    validate_state(new, collection)
    if new.potential <= state.potential:
        raise InvariantViolation(f"move {kind} did not increase the potential", state.snapshot())
    if stats is not None:
        stats.moves[kind] += 1
    return new


# ---------------------------------------------------------------------------
# completion phase


@dataclass(frozen=True)
class AuxDigraph:
    """Arcs ``x -> z`` with ``z`` not the cycle successor of ``x`` and ``xz``
    carrying the color of ``x``'s successor edge."""

    n: int
    out_masks: tuple[int, ...]
    in_masks: tuple[int, ...]
    y: int

    @property
    def indeg(self) -> list[int]:
        return [m.bit_count() for m in self.in_masks]

    @property
    def outdeg(self) -> list[int]:
        return [m.bit_count() for m in self.out_masks]

    def out_neighbors(self, v: int) -> frozenset[int]:
        return frozenset(iter_bits(self.out_masks[v]))

    def in_neighbors(self, v: int) -> frozenset[int]:
        return frozenset(iter_bits(self.in_masks[v]))

    @property
    def arc_count(self) -> int:
        return sum(self.outdeg)

    def has_arc(self, u: int, v: int) -> bool:
        return bool((self.out_masks[u] >> v) & 1)


def build_aux_digraph(state: HamState, collection: GraphCollection) -> AuxDigraph:
    n = collection.n
    if not is_near_hamilton(state, n):
        raise InputError("auxiliary digraph needs a cycle on n-1 vertices missing exactly one color")
    X, C = state.vertices, state.colors
    (y,) = set(range(n)) - set(X)
    out = [0] * n
    inn = [0] * n
    k = len(X)
    for p, x in enumerate(X):
        succ = X[(p + 1) % k]
        arcs = collection.nbr_mask(C[p], x) & ~(1 << succ)
        out[x] = arcs
        for z in iter_bits(arcs):
            inn[z] |= 1 << x
    return AuxDigraph(n, tuple(out), tuple(inn), y)


def _close_or_rotate(
    path: Sequence[int],
    pcols: Sequence[int],
    missing: int,
    D: AuxDigraph,
    g: GraphCollection,
) -> tuple[list[int], list[int], str]:
    """Finish a rainbow Hamilton path whose only missed color is ``missing``.

    Closes it directly if possible; otherwise drops an edge ``x^k x^{k+1}``
    with ``x^k`` an in-neighbour of the last vertex in ``D`` and reconnects
    through ``x^1 x^{k+1}`` and ``x^k x^n``.
    """
    first, last = path[0], path[-1]
    if g.has_edge(missing, first, last):
        return list(path), list(pcols) + [missing], "close"
    inn = D.in_masks[last]
    y = D.y
    npath = len(path)
    for k in range(1, npath - 1):
        xk, xk1 = path[k - 1], path[k]
        if xk == y or xk1 == y or not (inn >> xk) & 1:
            continue
        if not g.has_edge(missing, first, xk1):
            continue
        c = pcols[k - 1]
        if not g.has_edge(c, xk, last):
            raise InvariantViolation(
                f"arc {xk}->{last} does not carry the successor color {c}",
                {"path": list(path), "colors": list(pcols)},
            )
        verts = list(path[:k]) + list(path[k:])[::-1]
        cols = list(pcols[: k - 1]) + [c] + list(pcols[k:])[::-1] + [missing]
        return verts, cols, "rotate"
    raise InvariantViolation(
        "no rotation witness for the final path", {"path": list(path), "colors": list(pcols), "missing": missing}
    )


def finalize_hamilton(
    state: HamState, D: AuxDigraph, collection: GraphCollection, stats: HamiltonStats | None = None
) -> Transversal:
    """Turn a near-Hamilton cycle into a Hamiltonian transversal."""
    n = collection.n
    if not is_near_hamilton(state, n):
        raise InputError("finalize needs a cycle on n-1 vertices missing exactly one color")
    X, C = list(state.vertices), list(state.colors)
    k = len(X)
    (m,) = state.missed
    y = D.y
    indeg = D.indeg
    g = collection

    def done(verts: list[int], cols: list[int], case: str) -> Transversal:
        out = HamState.build(verts, cols, True, collection.s)
        validate_state(out, collection)
        if not is_hamiltonian(out, n):
            raise InvariantViolation(f"finalize case {case} produced a non-Hamiltonian cycle", out.snapshot())
        if stats is not None:
            stats.finalize_case = case
        return out.to_transversal()

    # (0) put y between x_j and x_{j+1}
    for p in range(k):
        if D.has_arc(X[p], y) and g.has_edge(m, X[(p + 1) % k], y):
            return done(X[: p + 1] + [y] + X[p + 1 :], C[:p] + [C[p], m] + C[p + 1 :], "y-insert")
    if 2 * indeg[y] > n - 2:
        raise InvariantViolation(f"y has indegree {indeg[y]} but cannot be inserted", state.snapshot())

    # (1) some cycle vertex with indegree above n/2 - 1
    for t in range(k):
        if 2 * indeg[X[t]] > n - 2:
            break
    else:
        t = -1
    if t >= 0:
        R = X[t:] + X[:t]
        RC = C[t:] + C[:t]
        c1 = RC[0]
        j = -1
        for i in range(1, k + 1):
            if g.has_edge(c1, R[i - 1], y) and g.has_edge(m, R[i % k], y):
                j = i
                break
        if j < 0:
            raise InvariantViolation("high-indegree case found no attachment for y", state.snapshot())
        if j == 1:
            return done([R[0], y] + R[1:], [c1, m] + RC[1:], "high-indegree-direct")
        path = R[1:j] + [y] + R[j:] + [R[0]]
        pcols = RC[1 : j - 1] + [c1, m] + RC[j:]
        verts, cols, how = _close_or_rotate(path, pcols, RC[j - 1], D, g)
        return done(verts, cols, f"high-indegree-{how}")

    # (2) every cycle vertex has indegree at most n/2 - 1
    target = n // 2 - 1
    for p in range(k):
        if indeg[X[p]] == target and g.has_edge(m, X[(p + 1) % k], y):
            path = [y] + X[p + 1 :] + X[: p + 1]
            pcols = [m] + C[p + 1 :] + C[:p]
            verts, cols, how = _close_or_rotate(path, pcols, C[p], D, g)
            return done(verts, cols, f"low-indegree-{how}")
    raise InvariantViolation("no completion case applies", state.snapshot())


# ---------------------------------------------------------------------------
# driver


def find_hamilton(collection: GraphCollection, stats: HamiltonStats | None = None) -> Transversal:
    """Return a Hamiltonian transversal of a collection meeting the degree condition."""
    n = collection.n
    if not check_dirac(collection, "hamilton"):
        raise InputError("collection does not satisfy the Hamilton degree condition (s = n >= 3, 2*delta >= n)")
    if stats is None:
        stats = HamiltonStats()
    if n < 5:
        from .oracle import brute_hamilton

        stats.route = "brute"
        t = brute_hamilton(collection)
        if t is None:
            raise InvariantViolation("brute force found no transversal on a degree-condition instance")
        return t

    stats.route = "growth"
    state = initial_state(collection)
    validate_state(state, collection)
    stats.potentials.append(state.potential)
    while True:
        if is_hamiltonian(state, n):
            return state.to_transversal()
        if is_near_hamilton(state, n):
            break
        state = grow_step(state, collection, stats)
        stats.steps += 1
        stats.potentials.append(state.potential)
        if stats.steps > 2 * n + 1:
            raise InvariantViolation("growth exceeded 2n+1 steps", state.snapshot())

    stats.route = "finalize"
    D = build_aux_digraph(state, collection)
    stats.arc_count = D.arc_count
    stats.y_outdegree = D.outdeg[D.y]
    stats.y_indegree = D.indeg[D.y]
    if stats.y_outdegree != 0 or 2 * D.arc_count < (n - 1) * (n - 2):
        raise InvariantViolation("auxiliary digraph violates its degree bounds", state.snapshot())
    return finalize_hamilton(state, D, collection, stats)
