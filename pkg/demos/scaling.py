"""Wall time of the Hamilton and matching solvers as n grows.

Run with ``python3 demos/scaling.py``.  Uses the same record format as the
``rainbowtx bench`` subcommand.
"""

import numpy as np

from rainbowtx.cli import bench_trial

for problem, sizes in (("hamilton", (25, 50, 100, 200, 400)), ("matching", (26, 50, 100, 200, 400))):
    print(problem)
    for n in sizes:
        recs = [bench_trial(problem, n, seed) for seed in range(3)]
        assert all(r["valid"] for r in recs)
        solve = np.array([r["wall_time_s"] for r in recs])
        gen = np.array([r["gen_time_s"] for r in recs])
        print(f"  n={n:4d}  solve {solve.mean():.3f} s  (generation {gen.mean():.3f} s)")
