"""Why the degree condition cannot simply be dropped.

Run with ``python3 demos/sharpness.py``.
"""

from rainbowtx import (
    brute_hamilton,
    check_dirac,
    gen_disjoint_cycles,
    gen_matching_counterexample,
    gen_two_cliques,
    max_rainbow_matching_size,
    min_degree,
)

# Every graph is Hamiltonian, yet no rainbow Hamilton cycle exists: one
# graph's cycle shares no edge with the other s - 1 identical cycles.
for s in (5, 7, 9):
    g = gen_disjoint_cycles(s)
    print(f"disjoint cycles s={s}: rainbow Hamilton cycle found = {brute_hamilton(g) is not None}")

# Degree n/2 - 1 is one short of the bound, and the union is disconnected.
for n in (6, 8, 10):
    g = gen_two_cliques(n)
    print(
        f"two cliques n={n}: min degree {min_degree(g, 1)}, condition met = {check_dirac(g, 'hamilton')}, "
        f"found = {brute_hamilton(g) is not None}"
    )

# 2s - 2 perfect matchings of an even cycle: the largest rainbow matching has s - 1 edges.
for s in range(2, 6):
    g = gen_matching_counterexample(s)
    print(f"matchings of C_{2 * s}: {g.s} graphs, largest rainbow matching {max_rainbow_matching_size(g)} (s={s})")
