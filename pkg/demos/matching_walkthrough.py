"""Rainbow perfect matchings: growth, then the digraph-driven last edge.

Run with ``python3 demos/matching_walkthrough.py``.
"""

from collections import Counter

from rainbowtx import brute_perfect_matching, find_perfect_matching, gen_random_dirac, verify_transversal
from rainbowtx.matching import MatchingStats

# Which completion route does the solver take on near-threshold instances?
routes = Counter()
for seed in range(200):
    g = gen_random_dirac(10, "matching", seed, density=0.0)
    stats = MatchingStats()
    t = find_perfect_matching(g, stats)
    assert verify_transversal(g, t, "matching").valid
    routes[stats.completion] += 1
print("completion routes over 200 instances with n=10:", dict(routes))

# One instance in detail, cross-checked against exhaustive search.
g = gen_random_dirac(8, "matching", seed=9, density=0.0)
stats = MatchingStats()
t = find_perfect_matching(g, stats)
print("matching:", t.triples())
print("stats:", stats.as_dict())
print("exhaustive search also finds one:", brute_perfect_matching(g) is not None)
