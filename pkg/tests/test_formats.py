import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rainbowtx.collection import Transversal
from rainbowtx.errors import RgcParseError
from rainbowtx.formats import parse_certificate, parse_rgc, write_certificate, write_rgc

from conftest import collections

TRIANGLE = "rgc 1\nn 3 s 1\ng 1 3\n0 1\n1 2\n0 2\n"


def test_minimal_file():
    g = parse_rgc(TRIANGLE)
    assert g.n == 3 and g.s == 1
    assert g.edges(1) == [(0, 1), (0, 2), (1, 2)]


def test_comments_and_blank_lines():
    text = "# header\nrgc 1\n\nn 3 s 1  # sizes\ng 1 1\n2 0\n"
    assert parse_rgc(text).edges(1) == [(0, 2)]


@pytest.mark.parametrize(
    "text,line,fragment",
    [
        ("rgc 1\nn 3 s 1\ng 1 1\n0 0\n", 4, "loop"),
        ("rgc 1\nn 3 s 1\ng 1 2\n0 1\n", None, "declared 2"),
        ("rgc 1\nn 3 s 2\ng 1 1\n0 1\ng 2 2\n0 1\n", None, "declared 2"),
        ("rgc 1\nn 3 s 2\ng 1 2\n0 1\ng 2 0\n", 5, "declared 2"),
        ("rgc 1\nn 3 s 1\ng 1 1\n0 3\n", 4, "out of range"),
        ("rgc 1\nn 3 s 1\ng 1 2\n0 1\n1 0\n", 5, "duplicate"),
        ("rgc 2\nn 3 s 1\ng 1 0\n", 1, "version"),
        ("rgc 1\nn x s 1\n", 2, "integer"),
        ("rgc 1\nn 3 s 1\ng 2 0\n", 3, "expected graph 1"),
        ("rgc 1\nn 3 s 1\ng 1 0\n0 1\n", 4, "unexpected content"),
        ("", None, "empty"),
    ],
)
def test_parse_errors(text, line, fragment):
    with pytest.raises(RgcParseError) as info:
        parse_rgc(text)
    assert fragment in str(info.value)
    if line is not None:
        assert info.value.line == line


def test_error_carries_column():
    with pytest.raises(RgcParseError) as info:
        parse_rgc("rgc 1\nn 3 s 1\ng 1 1\n  0 9\n")
    assert info.value.column == 3


@given(collections(max_n=9, max_s=4, min_n=1))
def test_rgc_round_trip(g):
    assert parse_rgc(write_rgc(g)) == g


@given(
    st.sampled_from(["hamilton", "matching"]),
    st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9), st.integers(1, 9)), max_size=8),
)
def test_certificate_round_trip(problem, raw):
    seen, triples = set(), []
    for u, v, c in raw:
        key = (min(u, v), max(u, v))
        if u != v and key not in seen:
            seen.add(key)
            triples.append((u, v, c))
    t = Transversal.from_triples(triples)
    back = parse_certificate(write_certificate(problem, 10, t))
    assert back == (problem, 10, t)


@pytest.mark.parametrize(
    "obj",
    [
        "not json",
        json.dumps([1, 2]),
        json.dumps({"problem": "tsp", "n": 3, "edges": []}),
        json.dumps({"problem": "hamilton", "n": 0, "edges": []}),
        json.dumps({"problem": "hamilton", "n": 3, "edges": [[0, 1]]}),
        json.dumps({"problem": "hamilton", "n": 3, "edges": [[0, 1, 1], [1, 0, 2]]}),
        json.dumps({"problem": "hamilton", "n": 3, "edges": [], "extra": 1}),
    ],
)
def test_bad_certificates(obj):
    with pytest.raises(RgcParseError):
        parse_certificate(obj)
