# Watching the adaptive loop decide when it has seen enough edges.

# %%
import numpy as np

from triadic import NodePartition, RunConfig, exact_bucket_averages, run_triad
from triadic.graph import erdos_renyi

g = erdos_renyi(60, 0.2, 13)
# one bucket per node: each estimate rests on the few edges around that node
part = NodePartition.from_labels(np.arange(g.n))
truth = exact_bucket_averages(g, part, "closure")

# %% Tight target, no filtering, so sampling does all the work.
cfg = RunConfig(eps=0.05, eta=0.01, seed=5, filter_c=0, q=0.0)
r = run_triad(g, part, "closure", cfg)
print("R bound", round(r.bounds["R"], 3), " s_0", r.bounds["s_0"], " s_max", r.bounds["s_max"])
for a in r.audit:
    print(f"checkpoint {a['iteration']}: s={a['s']:7d}  eta_i={a['eta_i']:.5f}  "
          f"widest={max(a['eps_hat']):.4f}  met={a['met']}")

# %% The certificate against the truth.
print("stopped by", r.termination)
gap = np.abs(r.estimates - truth)
print("largest error", gap.max().round(4), " largest width", r.eps_hat.max().round(4))
print("buckets outside their width:", int(np.sum(gap > r.eps_hat)))

# %% The plain empirical Bernstein engine usually needs a few more edges.
eb = run_triad(g, part, "closure", RunConfig(eps=0.05, eta=0.01, seed=5, filter_c=0, q=0.0,
                                             width_engine="eb"))
print("prpl samples", r.samples, " eb samples", eb.samples)
