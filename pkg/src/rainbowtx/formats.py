"""Text formats: ``rgc`` instance files and JSON certificates.

rgc (one statement per line, ``#`` comments, blank lines ignored)::

    rgc 1
    n <int> s <int>
    g 1 <m_1>
    <u> <v>          # m_1 edge lines, 0 <= u < v < n
    ...
    g <s> <m_s>
    ...

Certificate::

    {"problem": "hamilton" | "matching", "n": <int>, "edges": [[u, v, color], ...]}

Vertices are 0-based, colors are 1-based.
"""

from __future__ import annotations

import json
from typing import Iterator

from .collection import PROBLEMS, GraphCollection, Transversal, canon
from .errors import InputError, RgcParseError

RGC_VERSION = 1


def _statements(text: str) -> Iterator[tuple[int, list[tuple[int, str]]]]:
    """Yield ``(line_no, [(column, token), ...])`` for each non-empty line."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = []
        col = 0
        for part in line.split():
            col = line.index(part, col)
            toks.append((col + 1, part))
            col += len(part)
        if toks:
            yield lineno, toks


def _int(tok: tuple[int, str], lineno: int) -> int:
    col, text = tok
    try:
        return int(text)
    except ValueError:
        raise RgcParseError(f"expected an integer, got {text!r}", lineno, col) from None


def _expect(toks: list[tuple[int, str]], lineno: int, shape: list[str | None]) -> list[int]:
    """Match keywords (strings) and integers (``None`` slots) in order."""
    if len(toks) != len(shape):
        want = " ".join(k if k is not None else "<int>" for k in shape)
        raise RgcParseError(f"expected '{want}'", lineno, toks[0][0])
    out = []
    for tok, kw in zip(toks, shape):
        if kw is None:
            out.append(_int(tok, lineno))
        elif tok[1] != kw:
            raise RgcParseError(f"expected {kw!r}, got {tok[1]!r}", lineno, tok[0])
    return out


def parse_rgc(text: str) -> GraphCollection:
    lines = list(_statements(text))
    if not lines:
        raise RgcParseError("empty input")
    it = iter(lines)

    lineno, toks = next(it)
    (version,) = _expect(toks, lineno, ["rgc", None])
    if version != RGC_VERSION:
        raise RgcParseError(f"unsupported rgc version {version}", lineno, toks[1][0])

    try:
        lineno, toks = next(it)
    except StopIteration:
        raise RgcParseError("missing 'n <int> s <int>' header") from None
    n, s = _expect(toks, lineno, ["n", None, "s", None])
    if n < 1:
        raise RgcParseError(f"n must be positive, got {n}", lineno)
    if s < 1:
        raise RgcParseError(f"s must be positive, got {s}", lineno)

    graphs: list[list[tuple[int, int]]] = []
    for i in range(1, s + 1):
        try:
            lineno, toks = next(it)
        except StopIteration:
            raise RgcParseError(f"missing block for graph {i} of {s}") from None
        gi, m = _expect(toks, lineno, ["g", None, None])
        if gi != i:
            raise RgcParseError(f"expected graph {i}, got {gi}", lineno, toks[1][0])
        if m < 0:
            raise RgcParseError(f"negative edge count {m}", lineno, toks[2][0])
        seen: set[tuple[int, int]] = set()
        for _ in range(m):
            try:
                lineno, toks = next(it)
            except StopIteration:
                raise RgcParseError(f"graph {i}: declared {m} edges, found {len(seen)}") from None
            if toks[0][1] == "g":
                raise RgcParseError(f"graph {i}: declared {m} edges, found {len(seen)}", lineno, toks[0][0])
            u, v = _expect(toks, lineno, [None, None])
            if not (0 <= u < n and 0 <= v < n):
                raise RgcParseError(f"vertex out of range 0..{n - 1}", lineno, toks[0][0])
            if u == v:
                raise RgcParseError(f"loop at vertex {u}", lineno, toks[0][0])
            e = canon(u, v)
            if e in seen:
                raise RgcParseError(f"graph {i}: duplicate edge {e[0]} {e[1]}", lineno, toks[0][0])
            seen.add(e)
        graphs.append(sorted(seen))

    for lineno, toks in it:
        raise RgcParseError("unexpected content after the last graph block", lineno, toks[0][0])
    return GraphCollection.from_edges(n, graphs)


def write_rgc(collection: GraphCollection) -> str:
    out = [f"rgc {RGC_VERSION}", f"n {collection.n} s {collection.s}"]
    for i in range(1, collection.s + 1):
        edges = collection.edges(i)
        out.append(f"g {i} {len(edges)}")
        out.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(out) + "\n"


def write_certificate(problem: str, n: int, t: Transversal) -> str:
    if problem not in PROBLEMS:
        raise InputError(f"unknown problem {problem!r}")
    body = {"problem": problem, "n": n, "edges": [list(tr) for tr in t.triples()]}
    return json.dumps(body) + "\n"


def parse_certificate(text: str) -> tuple[str, int, Transversal]:
    """Return ``(problem, n, transversal)``.  Membership is left to the verifier."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RgcParseError(f"certificate is not valid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(obj, dict) or set(obj) != {"problem", "n", "edges"}:
        raise RgcParseError("certificate must be an object with keys problem, n, edges")
    problem, n, edges = obj["problem"], obj["n"], obj["edges"]
    if problem not in PROBLEMS:
        raise RgcParseError(f"unknown problem {problem!r}")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise RgcParseError(f"n must be a positive integer, got {n!r}")
    if not isinstance(edges, list):
        raise RgcParseError("edges must be a list")
    triples = []
    for k, item in enumerate(edges):
        if (
            not isinstance(item, list)
            or len(item) != 3
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in item)
        ):
            raise RgcParseError(f"edges[{k}] must be [u, v, color] integers")
        triples.append(tuple(item))
    try:
        t = Transversal.from_triples(triples)
    except InputError as exc:
        raise RgcParseError(str(exc)) from None
    return problem, n, t
