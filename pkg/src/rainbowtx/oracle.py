"""Exhaustive ground truth for small instances.

Everything here is deliberately naive: enumerate candidate edge sets of the
union graph and ask whether their colors can be assigned bijectively.  The
solvers in :mod:`rainbowtx.hamilton` and :mod:`rainbowtx.matching` are checked
against these functions, so nothing in this module imports them.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .collection import Edge, GraphCollection, Transversal, canon, color_set, iter_bits
from .errors import GuardError, InputError

MAX_BRUTE_HAMILTON_N = 12
MAX_BRUTE_MATCHING_N = 14
MAX_SEARCH_NODES = 10**7


def _kuhn(options: Sequence[Sequence[int]]) -> list[int] | None:
    """Match each left item to a distinct right label, or return ``None``.

    ``options[k]`` lists the labels item ``k`` may take.  Augmenting paths,
    one search per item.
    """
    owner: dict[int, int] = {}

    def augment(k: int, seen: set[int]) -> bool:
        for c in options[k]:
            if c in seen:
                continue
            seen.add(c)
            if c not in owner or augment(owner[c], seen):
                owner[c] = k
                return True
        return False

    for k in range(len(options)):
        if not augment(k, set()):
            return None
    out = [0] * len(options)
    for c, k in owner.items():
        out[k] = c
    return out


def assign_colors(collection: GraphCollection, edges: Iterable[tuple[int, int]]) -> dict[Edge, int] | None:
    """Find a bijection from ``edges`` onto ``1..s`` respecting membership.

    Returns ``None`` exactly when no such bijection exists.
    """
    es = sorted({canon(u, v) for u, v in edges})
    if len(es) != collection.s:
        raise InputError(f"need exactly s={collection.s} distinct edges, got {len(es)}")
    options = [sorted(color_set(collection, e)) for e in es]
    if any(not o for o in options):
        return None
    got = _kuhn(options)
    if got is None:
        return None
    return dict(zip(es, got))


def hamilton_cycles(n: int, adj: Sequence[int]) -> Iterable[list[int]]:
    """Yield each Hamilton cycle of the graph once, as a vertex list from 0.

    Orientation is canonical: the second vertex is smaller than the last.
    """
    if n < 3:
        return
    full = (1 << n) - 1
    path = [0]

    def extend(used: int) -> Iterable[list[int]]:
        last = path[-1]
        if used == full:
            if (adj[last] & 1) and path[1] < last:
                yield list(path)
            return
        for w in iter_bits(adj[last] & ~used):
            path.append(w)
            yield from extend(used | (1 << w))
            path.pop()

    yield from extend(1)


def brute_hamilton(collection: GraphCollection) -> Transversal | None:
    n = collection.n
    if n > MAX_BRUTE_HAMILTON_N:
        raise GuardError(f"brute_hamilton is limited to n <= {MAX_BRUTE_HAMILTON_N}, got {n}")
    if n < 3:
        raise InputError("a Hamilton cycle needs at least 3 vertices")
    if collection.s != n:
        raise InputError(f"a Hamilton cycle has n={n} edges but the collection has s={collection.s} colors")
    for cyc in hamilton_cycles(n, collection.union_masks()):
        edges = [canon(cyc[i], cyc[(i + 1) % n]) for i in range(n)]
        phi = assign_colors(collection, edges)
        if phi is not None:
            return Transversal(phi)
    return None


def perfect_matchings(n: int, adj: Sequence[int]) -> Iterable[list[Edge]]:
    """Yield each perfect matching once, always pairing the smallest free vertex."""
    full = (1 << n) - 1
    chosen: list[Edge] = []

    def extend(used: int) -> Iterable[list[Edge]]:
        if used == full:
            yield list(chosen)
            return
        free = ~used & full
        u = (free & -free).bit_length() - 1
        for w in iter_bits(adj[u] & free & ~(1 << u)):
            chosen.append((u, w))
            yield from extend(used | (1 << u) | (1 << w))
            chosen.pop()

    yield from extend(0)


def brute_perfect_matching(collection: GraphCollection) -> Transversal | None:
    n = collection.n
    if n % 2:
        raise InputError(f"n must be even for a perfect matching, got {n}")
    if n > MAX_BRUTE_MATCHING_N:
        raise GuardError(f"brute_perfect_matching is limited to n <= {MAX_BRUTE_MATCHING_N}, got {n}")
    if collection.s != n // 2:
        raise InputError(f"a perfect matching has n/2={n // 2} edges but s={collection.s}")
    for pm in perfect_matchings(n, collection.union_masks()):
        phi = assign_colors(collection, pm)
        if phi is not None:
            return Transversal(phi)
    return None


def max_rainbow_matching_size(collection: GraphCollection) -> int:
    """Largest ``k`` with ``k`` disjoint edges carrying ``k`` distinct colors.

    Branches color by color (take one edge of ``G_i`` or skip ``i``) with a
    remaining-colors bound.  Raises :class:`GuardError` past
    ``MAX_SEARCH_NODES`` visited nodes.
    """
    n, s = collection.n, collection.s
    cap = min(s, n // 2)
    edge_lists = [collection.edges(i) for i in range(1, s + 1)]
    best = 0
    nodes = 0

    def search(i: int, used: int, size: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > MAX_SEARCH_NODES:
            raise GuardError(f"max_rainbow_matching_size exceeded {MAX_SEARCH_NODES} search nodes")
        if size > best:
            best = size
        if best == cap or i == s or size + (s - i) <= best:
            return
        for u, v in edge_lists[i]:
            if not (used >> u) & 1 and not (used >> v) & 1:
                search(i + 1, used | (1 << u) | (1 << v), size + 1)
                if best == cap:
                    return
        search(i + 1, used, size)

    search(0, 0, 0)
    return best
