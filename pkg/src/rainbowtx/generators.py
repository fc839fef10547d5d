"""Seeded instance generators.

Randomness comes from ``numpy.random.Generator(numpy.random.PCG64(seed))``;
the same ``(parameters, seed)`` always yields the same collection.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .collection import GraphCollection
from .errors import InputError

DIRAC_BASE_DENSITY = 0.55
KINDS = ("random-dirac", "disjoint-cycles", "two-cliques", "matching-tight", "random")


def make_rng(seed: int) -> np.random.Generator:
    if not isinstance(seed, (int, np.integer)) or not 0 <= int(seed) < 2**64:
        raise InputError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return np.random.Generator(np.random.PCG64(int(seed)))


def _rows_from_matrix(a: np.ndarray) -> list[int]:
    packed = np.packbits(a.astype(np.uint8), axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def _sample(n: int, p: float, rng: np.random.Generator) -> np.ndarray:
    upper = np.triu(rng.random((n, n)) < p, k=1)
    return upper | upper.T


def _repair(a: np.ndarray, rng: np.random.Generator) -> None:
    # Raise every degree to at least n/2 by adding random edges, always fixing
    # the smallest deficient vertex.  Degrees never drop, so one sweep suffices.
    n = a.shape[0]
    deg = a.sum(axis=1)
    for v in range(n):
        while 2 * deg[v] < n:
            candidates = np.flatnonzero(~a[v])
            candidates = candidates[candidates != v]
            w = int(rng.choice(candidates))
            a[v, w] = a[w, v] = True
            deg[v] += 1
            deg[w] += 1


def gen_random_dirac(n: int, problem: str, seed: int, density: float = DIRAC_BASE_DENSITY) -> GraphCollection:
    """Random collection satisfying the minimum-degree condition for ``problem``.

    Each graph is sampled at ``density`` and then repaired.  Lowering
    ``density`` pushes degrees towards the ``n/2`` threshold, which is where
    the solvers' harder branches get exercised.
    """
    if problem == "hamilton":
        if n < 3:
            raise InputError(f"hamilton instances need n >= 3, got {n}")
        s = n
    elif problem == "matching":
        if n < 2 or n % 2:
            raise InputError(f"matching instances need even n >= 2, got {n}")
        s = n // 2
    else:
        raise InputError(f"unknown problem {problem!r}")
    if not 0.0 <= density <= 1.0:
        raise InputError(f"density must lie in [0, 1], got {density}")
    rng = make_rng(seed)
    rows = []
    for _ in range(s):
        a = _sample(n, density, rng)
        _repair(a, rng)
        rows.append(_rows_from_matrix(a))
    return GraphCollection(n, rows)


def gen_random(n: int, s: int, p: float, seed: int) -> GraphCollection:
    if n < 1 or s < 1:
        raise InputError(f"need n >= 1 and s >= 1, got n={n}, s={s}")
    if not 0.0 <= p <= 1.0:
        raise InputError(f"edge probability must lie in [0, 1], got {p}")
    rng = make_rng(seed)
    return GraphCollection(n, [_rows_from_matrix(_sample(n, p, rng)) for _ in range(s)])


def _cycle_edges(order: list[int]) -> list[tuple[int, int]]:
    return [(order[i], order[(i + 1) % len(order)]) for i in range(len(order))]


def gen_disjoint_cycles(s: int) -> GraphCollection:
    """``s - 1`` copies of the cycle ``0..s-1`` plus the edge-disjoint step-2 cycle."""
    if s < 5 or s % 2 == 0:
        raise InputError(f"s must be odd and at least 5, got {s}")
    base = _cycle_edges(list(range(s)))
    step2 = _cycle_edges([(2 * k) % s for k in range(s)])
    return GraphCollection.from_edges(s, [base] * (s - 1) + [step2])


def gen_two_cliques(n: int, problem: str = "hamilton") -> GraphCollection:
    """Every graph is two disjoint cliques of size ``n/2``; one below the degree bound."""
    if n < 4 or n % 2:
        raise InputError(f"n must be even and at least 4, got {n}")
    if problem not in ("hamilton", "matching"):
        raise InputError(f"unknown problem {problem!r}")
    h = n // 2
    edges = [(u, v) for part in (range(h), range(h, n)) for u in part for v in part if u < v]
    s = n if problem == "hamilton" else h
    return GraphCollection.from_edges(n, [edges] * s)


def gen_matching_counterexample(s: int) -> GraphCollection:
    """``2s - 2`` perfect matchings of ``C_{2s}``: ``s - 1`` even ones, ``s - 1`` odd ones."""
    if s < 2:
        raise InputError(f"s must be at least 2, got {s}")
    n = 2 * s
    even = [(2 * k, 2 * k + 1) for k in range(s)]
    odd = [(2 * k + 1, (2 * k + 2) % n) for k in range(s)]
    return GraphCollection.from_edges(n, [even] * (s - 1) + [odd] * (s - 1))


@dataclass(frozen=True)
class GenSpec:
    kind: str
    n: int
    s: int | None = None
    p: float | None = None
    seed: int = 0
    problem: str = "hamilton"


def generate(spec: GenSpec) -> GraphCollection:
    """Dispatch on ``spec.kind``; ``n`` doubles as ``s`` for the size-by-s families."""
    if spec.kind == "random-dirac":
        return gen_random_dirac(spec.n, spec.problem, spec.seed)
    if spec.kind == "disjoint-cycles":
        return gen_disjoint_cycles(spec.s if spec.s is not None else spec.n)
    if spec.kind == "two-cliques":
        return gen_two_cliques(spec.n, spec.problem)
    if spec.kind == "matching-tight":
        if spec.s is not None:
            return gen_matching_counterexample(spec.s)
        if spec.n % 2:
            raise InputError(f"matching-tight needs even n (n = 2s), got {spec.n}")
        return gen_matching_counterexample(spec.n // 2)
    if spec.kind == "random":
        if spec.p is None:
            raise InputError("kind=random needs --p")
        return gen_random(spec.n, spec.s if spec.s is not None else spec.n, spec.p, spec.seed)
    raise InputError(f"unknown generator kind {spec.kind!r}; expected one of {', '.join(KINDS)}")
