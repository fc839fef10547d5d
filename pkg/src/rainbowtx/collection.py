"""Colored graph collections, color-set queries and the certificate verifier.

A collection holds ``s`` simple graphs on the shared vertex set ``0..n-1``.
Graph ``i`` is referred to by its color ``i`` (1-based).  Adjacency is kept
as Python ints used as bitsets, so neighbourhood restrictions such as "the
neighbours of ``u`` in ``G_i`` outside the current path" are single mask
operations.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Literal, Mapping, Sequence

import numpy as np

from .errors import InputError

Edge = tuple[int, int]
Problem = Literal["hamilton", "matching"]
PROBLEMS: tuple[str, ...] = ("hamilton", "matching")


def canon(u: int, v: int) -> Edge:
    """Return the pair with the smaller id first."""
    return (u, v) if u < v else (v, u)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    """Position of the lowest set bit; ``-1`` for an empty mask."""
    return (mask & -mask).bit_length() - 1


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def masks_to_matrix(row: Sequence[int], n: int) -> np.ndarray:
    """Boolean ``n x n`` adjacency matrix from bitset rows."""
    nbytes = (n + 7) // 8
    buf = b"".join(m.to_bytes(nbytes, "little") for m in row)
    bits = np.unpackbits(np.frombuffer(buf, dtype=np.uint8), bitorder="little")
    return bits.reshape(len(row), nbytes * 8)[:, :n].astype(bool)


class GraphCollection:
    """An immutable collection ``G_1, ..., G_s`` of graphs on ``0..n-1``.

    Use :meth:`from_edges` or :meth:`from_adjacency` to build one; the
    constructor takes already validated bitset rows.
    """

    __slots__ = ("_n", "_adj")

    def __init__(self, n: int, adjacency_masks: Sequence[Sequence[int]]):
        if n < 1:
            raise InputError(f"vertex count must be positive, got {n}")
        if len(adjacency_masks) < 1:
            raise InputError("a collection needs at least one graph")
        rows: list[tuple[int, ...]] = []
        for gi, masks in enumerate(adjacency_masks, start=1):
            if len(masks) != n:
                raise InputError(f"graph {gi}: expected {n} adjacency rows, got {len(masks)}")
            row = tuple(int(m) for m in masks)
            for u, m in enumerate(row):
                if m < 0 or m.bit_length() > n:
                    raise InputError(f"graph {gi}: vertex {u} has a neighbour id >= n")
                if (m >> u) & 1:
                    raise InputError(f"graph {gi}: self-loop at vertex {u}")
            a = masks_to_matrix(row, n)
            bad = np.argwhere(a != a.T)
            if bad.size:
                u, v = (int(x) for x in bad[0])
                raise InputError(f"graph {gi}: adjacency {u}-{v} is not symmetric")
            rows.append(row)
        self._n = n
        self._adj: tuple[tuple[int, ...], ...] = tuple(rows)

    @classmethod
    def from_edges(cls, n: int, graphs: Iterable[Iterable[tuple[int, int]]]) -> "GraphCollection":
        """Build from one edge list per graph.  Duplicate edges are merged."""
        rows = []
        for gi, edges in enumerate(graphs, start=1):
            row = [0] * n
            for u, v in edges:
                _check_pair(n, u, v)
                row[u] |= 1 << v
                row[v] |= 1 << u
            rows.append(row)
        return cls(n, rows)

    @classmethod
    def from_adjacency(cls, n: int, graphs: Iterable[Sequence[Iterable[int]]]) -> "GraphCollection":
        """Build from per-vertex neighbour sets, one list of sets per graph."""
        rows = []
        for nbrs in graphs:
            rows.append([mask_of(vs) for vs in nbrs])
        return cls(n, rows)

    @property
    def n(self) -> int:
        return self._n

    @property
    def s(self) -> int:
        return len(self._adj)

    @property
    def masks(self) -> tuple[tuple[int, ...], ...]:
        """Bitset rows: ``masks[i - 1][u]`` is the neighbourhood of ``u`` in ``G_i``."""
        return self._adj

    def graph(self, color: int) -> list[frozenset[int]]:
        """Per-vertex neighbour sets of ``G_color``."""
        self._check_color(color)
        return [frozenset(iter_bits(m)) for m in self._adj[color - 1]]

    @property
    def graphs(self) -> list[list[frozenset[int]]]:
        return [self.graph(i) for i in range(1, self.s + 1)]

    def nbr_mask(self, color: int, u: int) -> int:
        return self._adj[color - 1][u]

    def has_edge(self, color: int, u: int, v: int) -> bool:
        return bool((self._adj[color - 1][u] >> v) & 1)

    def edges(self, color: int) -> list[Edge]:
        """Edges of ``G_color`` as canonical pairs in lexicographic order."""
        self._check_color(color)
        out = []
        for u, m in enumerate(self._adj[color - 1]):
            for v in iter_bits(m >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def union_masks(self) -> list[int]:
        """Adjacency of the union of all graphs."""
        out = [0] * self._n
        for row in self._adj:
            for u, m in enumerate(row):
                out[u] |= m
        return out

    def degree(self, color: int, u: int) -> int:
        return self._adj[color - 1][u].bit_count()

    def _check_color(self, color: int) -> None:
        if not isinstance(color, int) or not 1 <= color <= self.s:
            raise InputError(f"color must be in 1..{self.s}, got {color!r}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GraphCollection):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def __repr__(self) -> str:
        return f"GraphCollection(n={self._n}, s={self.s})"


def _check_pair(n: int, u: int, v: int) -> None:
    if not (isinstance(u, int) and isinstance(v, int)):
        raise InputError(f"vertex ids must be integers, got {u!r}, {v!r}")
    if not (0 <= u < n and 0 <= v < n):
        raise InputError(f"vertex id out of range 0..{n - 1}: {u}-{v}")
    if u == v:
        raise InputError(f"loop at vertex {u}")


def color_set(collection: GraphCollection, e: tuple[int, int]) -> frozenset[int]:
    """All colors ``i`` such that ``e`` is an edge of ``G_i``."""
    u, v = e
    _check_pair(collection.n, u, v)
    return frozenset(
        i for i, row in enumerate(collection.masks, start=1) if (row[u] >> v) & 1
    )


def min_degree(collection: GraphCollection, i: int) -> int:
    collection._check_color(i)
    return min(m.bit_count() for m in collection.masks[i - 1])


def check_dirac(collection: GraphCollection, problem: str) -> bool:
    """Whether the collection meets the minimum-degree hypothesis for ``problem``.

    ``delta >= n/2`` is tested as ``2 * delta >= n`` so both parities stay integral.
    """
    n, s = collection.n, collection.s
    if problem == "hamilton":
        if s != n or n < 3:
            return False
    elif problem == "matching":
        if n < 2 or n % 2 or s != n // 2:
            return False
    else:
        raise InputError(f"unknown problem {problem!r}")
    return all(2 * min_degree(collection, i) >= n for i in range(1, s + 1))


@dataclass(frozen=True)
class Transversal:
    """Edges with an edge-to-color map.  Edges are canonical pairs."""

    phi: Mapping[Edge, int]

    @classmethod
    def from_triples(cls, triples: Iterable[tuple[int, int, int]]) -> "Transversal":
        phi: dict[Edge, int] = {}
        for u, v, c in triples:
            e = canon(u, v)
            if e in phi:
                raise InputError(f"edge {e[0]}-{e[1]} listed twice")
            phi[e] = c
        return cls(phi)

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset(self.phi)

    def triples(self) -> list[tuple[int, int, int]]:
        return sorted((u, v, c) for (u, v), c in self.phi.items())

    def __len__(self) -> int:
        return len(self.phi)


@dataclass(frozen=True)
class Finding:
    kind: str
    detail: str = ""


@dataclass(frozen=True)
class VerifyReport:
    failures: tuple[Finding, ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return not self.failures

    def kinds(self) -> set[str]:
        return {f.kind for f in self.failures}

    def __bool__(self) -> bool:
        return self.valid


def verify_transversal(collection: GraphCollection, t: Transversal, problem: str) -> VerifyReport:
    """Check that ``t`` is a full transversal of the requested shape.

    Never raises on bad certificates; every defect becomes a finding.
    """
    if problem not in PROBLEMS:
        raise InputError(f"unknown problem {problem!r}")
    n, s = collection.n, collection.s
    failures: list[Finding] = []
    good_edges: list[Edge] = []
    for e, c in t.phi.items():
        try:
            u, v = e
        except (TypeError, ValueError):
            failures.append(Finding("shape-mismatch", f"not a vertex pair: {e!r}"))
            continue
        if not (isinstance(u, int) and isinstance(v, int) and 0 <= u < v < n):
            failures.append(Finding("shape-mismatch", f"edge {e!r} is not a canonical pair in 0..{n - 1}"))
            continue
        if not isinstance(c, int) or not 1 <= c <= s:
            failures.append(Finding("shape-mismatch", f"edge {u}-{v} has color {c!r} outside 1..{s}"))
            continue
        good_edges.append((u, v))
        if not collection.has_edge(c, u, v):
            failures.append(Finding("color-membership-violation", f"edge {u}-{v} is not in G_{c}"))

    repeated = sorted(c for c, k in Counter(t.phi.values()).items() if k > 1)
    if repeated:
        failures.append(Finding("non-injective-phi", f"colors used more than once: {repeated}"))
    if len(t.phi) != s:
        failures.append(Finding("size-mismatch", f"{len(t.phi)} edges for {s} colors"))

    deg = [0] * n
    for u, v in good_edges:
        deg[u] += 1
        deg[v] += 1
    if problem == "hamilton":
        if not _is_hamilton_cycle(n, good_edges, deg) or len(good_edges) != len(t.phi):
            failures.append(Finding("not-a-cycle", "edges do not form one cycle through all vertices"))
    else:
        if any(d != 1 for d in deg) or len(good_edges) != len(t.phi):
            failures.append(Finding("not-a-perfect-matching", "some vertex is not covered exactly once"))
    return VerifyReport(tuple(failures))


def _is_hamilton_cycle(n: int, edges: list[Edge], deg: list[int]) -> bool:
    if n < 3 or len(edges) != n or any(d != 2 for d in deg):
        return False
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in nbrs[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n
