from fractions import Fraction

import numpy as np
import pytest

from oracles import coefficients, dense
from triadic.exact import exact_bucket_averages, exact_coefficients, headed_wedges
from triadic.graph import StructuralError, complete_graph, erdos_renyi, path_graph, star_graph
from triadic.partition import NodePartition, make_partition
from triadic.wedge import (closed_wedges, first_hop_distribution, hoeffding_size, run_wedge_sampler,
                           sample_2path, sample_wedge, two_path_from_draws, wedge_from_draws)


class ScriptedRng:
    """Stands in for a Generator: ``integers`` returns queued values reduced modulo ``high``."""

    def __init__(self, *queue):
        self.queue = [np.asarray(q, dtype=np.int64) for q in queue]

    def integers(self, low, high, size=None):
        vals = self.queue.pop(0)
        return low + vals % (np.asarray(high) - low)


def exact_closed_probability(g, v, kind) -> Fraction:
    """Sum of P(draw) * closed over the whole finite draw space of one head."""
    total = Fraction(0)
    if kind == "clustering":
        d = int(g.degrees[v])
        if d < 2:
            return total
        for r1 in range(d):
            for r2 in range(d - 1):
                total += Fraction(int(wedge_from_draws(g, v, r1, r2).closed), d * (d - 1))
        return total
    h = int(headed_wedges(g)[v])
    for r in range(h):
        first = two_path_from_draws(g, v, r, 0).pair[0]
        d1 = int(g.degrees[first])
        for r2 in range(d1 - 1):
            total += Fraction(int(two_path_from_draws(g, v, r, r2).closed), h * (d1 - 1))
    return total


def test_k3_always_closed():
    g = complete_graph(3)
    rng = np.random.default_rng(0)
    for _ in range(20):
        d = sample_wedge(g, 0, rng)
        assert d.closed and set(d.pair) == {1, 2}


def test_star_center_never_closed():
    g = star_graph(5)
    rng = np.random.default_rng(1)
    for _ in range(50):
        d = sample_wedge(g, 0, rng)
        assert not d.closed and d.pair[0] != d.pair[1]


def test_path_head_forced():
    g = path_graph(3)
    d = sample_2path(g, 0, np.random.default_rng(2))
    assert d.pair == (1, 2) and not d.closed


def test_k4_paths_closed():
    g = complete_graph(4)
    rng = np.random.default_rng(3)
    for v in range(4):
        for _ in range(10):
            d = sample_2path(g, v, rng)
            assert d.closed and d.pair[1] != v and d.pair[0] in g.neighbors_of(v)


def test_degenerate_heads_raise():
    with pytest.raises(StructuralError):
        sample_wedge(star_graph(3), 1, 0)
    with pytest.raises(StructuralError):
        sample_2path(complete_graph(2), 0, 0)


def test_first_hop_distribution():
    g = erdos_renyi(30, 0.3, 4)
    for v in range(g.n):
        p = first_hop_distribution(g, v)
        w = g.degrees[g.neighbors_of(v)] - 1
        assert p.sum() == pytest.approx(1.0)
        assert np.allclose(p * w.sum(), w)


def test_two_path_space_is_uniform():
    g = erdos_renyi(30, 0.3, 5)
    for v in range(g.n):
        h = int(headed_wedges(g)[v])
        probs = {}
        for r in range(h):
            u1 = two_path_from_draws(g, v, r, 0).pair[0]
            d1 = int(g.degrees[u1])
            for r2 in range(d1 - 1):
                path = two_path_from_draws(g, v, r, r2).pair
                probs[path] = probs.get(path, Fraction(0)) + Fraction(1, h * (d1 - 1))
        assert len(probs) == h
        assert all(p == Fraction(1, h) for p in probs.values())


@pytest.mark.parametrize("kind", ["clustering", "closure"])
def test_exhaustive_closed_probability(kind):
    g = erdos_renyi(25, 0.3, 6)
    want = coefficients(dense(g), kind)
    for v in range(g.n):
        assert exact_closed_probability(g, v, kind) == want[v]


def test_empirical_closed_rate():
    g = erdos_renyi(30, 0.3, 7)
    alpha = exact_coefficients(g, "clustering")
    rng = np.random.default_rng(8)
    v = int(np.argmax(g.degrees))
    draws = [sample_wedge(g, v, rng).closed for _ in range(20000)]
    sigma = np.sqrt(alpha[v] * (1 - alpha[v]) / len(draws))
    assert abs(np.mean(draws) - alpha[v]) <= 4 * sigma
    batch = closed_wedges(g, np.full(10**5, v), rng, "clustering")
    assert abs(batch.mean() - alpha[v]) <= 4 * np.sqrt(alpha[v] * (1 - alpha[v]) / 10**5)


def test_batch_uses_same_mapping():
    g = erdos_renyi(30, 0.3, 9)
    rng = np.random.default_rng(10)
    heads = rng.integers(0, g.n, 400)
    a, b = rng.integers(0, 10**6, 400), rng.integers(0, 10**6, 400)
    ok = g.degrees[heads] >= 2
    got = closed_wedges(g, heads, ScriptedRng(a[ok], b[ok]), "clustering")
    for i, v in enumerate(heads.tolist()):
        d = int(g.degrees[v])
        want = wedge_from_draws(g, v, int(a[i] % d), int(b[i] % (d - 1))).closed if d >= 2 else False
        assert got[i] == want
    h = headed_wedges(g)
    ok = h[heads] >= 1
    r = a[ok] % h[heads][ok]
    got = closed_wedges(g, heads, ScriptedRng(r, b[ok]), "closure")
    j = 0
    for i, v in enumerate(heads.tolist()):
        if h[v] < 1:
            assert not got[i]
            continue
        u1 = two_path_from_draws(g, v, int(r[j]), 0).pair[0]
        want = two_path_from_draws(g, v, int(r[j]), int(b[i] % (g.degrees[u1] - 1))).closed
        assert got[i] == want
        j += 1


def test_hoeffding_size():
    assert hoeffding_size(0.1, 0.01, 1) == 265
    with pytest.raises(ValueError):
        hoeffding_size(0.0, 0.01, 1)


def test_run_k3():
    g = complete_graph(3)
    for kind in ("clustering", "closure"):
        r = run_wedge_sampler(g, NodePartition.single(3), kind, 0.3, 0.1, rng=1)
        assert r.estimates.tolist() == [1.0]
        assert r.samples == hoeffding_size(0.3, 0.1, 1)
        assert r.eps_hat.tolist() == [0.3] and r.termination == "fixed_budget"


def test_run_per_bucket_sizes():
    g = erdos_renyi(200, 0.05, 11)
    part = make_partition(g, "deg", k=4)
    eps = [0.1, 0.2, 0.05, 0.3]
    r = run_wedge_sampler(g, part, "clustering", eps, 0.01, rng=2)
    assert r.samples == sum(hoeffding_size(e, 0.01, 4) for e in eps)
    assert np.all(np.abs(r.estimates - exact_bucket_averages(g, part, "clustering")) <= eps)


def test_degenerate_heads_count_as_open():
    g = star_graph(4)
    part = NodePartition.from_labels([0, 1, 1, 1, 1])
    r = run_wedge_sampler(g, part, "clustering", 0.2, 0.1, rng=3)
    assert r.estimates.tolist() == [0.0, 0.0]
