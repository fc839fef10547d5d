"""Watch the Hamilton solver grow a rainbow cycle step by step.

Run with ``python3 demos/hamilton_walkthrough.py``.
"""

import numpy as np

from rainbowtx import gen_random_dirac, verify_transversal
from rainbowtx.hamilton import (
    HamiltonStats,
    build_aux_digraph,
    finalize_hamilton,
    grow_step,
    initial_state,
    is_hamiltonian,
    is_near_hamilton,
)

# A random collection of 12 graphs on 12 vertices, every degree at least 6.
# density=0.0 keeps each graph close to the degree threshold.
g = gen_random_dirac(12, "hamilton", seed=4, density=0.0)
degrees = np.array([[g.degree(i, v) for v in range(g.n)] for i in range(1, g.s + 1)])
print("minimum degree per graph:", degrees.min(axis=1))

# Greedy start: a 3-edge path using the smallest available colors.
state = initial_state(g)
stats = HamiltonStats()
print(f"{'start':14s} -> path  {state.vertices} colors {state.colors} potential {state.potential}")

# Each move raises 2*edges + is_cycle by at least one.
while not (is_hamiltonian(state, g.n) or is_near_hamilton(state, g.n)):
    before = stats.moves.copy()
    state = grow_step(state, g, stats)
    (kind,) = stats.moves - before
    shape = "cycle" if state.is_cycle else "path "
    print(f"{kind:14s} -> {shape} {state.vertices} potential {state.potential}")

print("moves used:", dict(stats.moves))

if is_hamiltonian(state, g.n):
    t = state.to_transversal()
else:
    # n-1 vertices on a cycle, one color unused: complete through the digraph.
    D = build_aux_digraph(state, g)
    print(f"near-Hamilton cycle misses color {min(state.missed)} and vertex {D.y}")
    print(f"digraph: {D.arc_count} arcs, indegree of the outside vertex {D.indeg[D.y]}")
    t = finalize_hamilton(state, D, g, stats)
    print("completion case:", stats.finalize_case)

print("certificate:", t.triples())
print("valid:", verify_transversal(g, t, "hamilton").valid)
