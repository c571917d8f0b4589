# Edge sampling against per-bucket wedge sampling at the same certified width.

# %%
import time

import numpy as np

from triadic import RunConfig, exact_bucket_averages, make_partition, run_triad, run_wedge_sampler
from triadic.graph import erdos_renyi

g = erdos_renyi(3000, 0.008, 11)
part = make_partition(g, "deg", k=10)

# %%
for kind in ("clustering", "closure"):
    truth = exact_bucket_averages(g, part, kind)
    for seed in range(3):
        t0 = time.perf_counter()
        t = run_triad(g, part, kind, RunConfig(eps=0.05, seed=seed))
        t1 = time.perf_counter()
        w = run_wedge_sampler(g, part, kind, eps=0.05, eta=0.01, rng=seed)
        t2 = time.perf_counter()
        print(f"{kind:10s} seed {seed}: "
              f"edges {t.samples:6d} err {np.abs(t.estimates - truth).max():.4f} ({t1 - t0:.2f}s) | "
              f"wedges {w.samples:6d} err {np.abs(w.estimates - truth).max():.4f} ({t2 - t1:.2f}s)")
