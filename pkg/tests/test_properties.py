import io

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import dense, triangles_by_triples
from triadic.bounds import upper_bounds
from triadic.estimator import edge_parts, exhaustive_mean, exhaustive_variance, minimax_quadratic, scale_factors
from triadic.exact import exact_bucket_averages, local_triangle_counts, wedge_denominators
from triadic.graph import Graph, edge_triangle_counts, load_edge_list, write_edge_list
from triadic.partition import NodePartition
from triadic.triad import filter_small_degree

KINDS = st.sampled_from(["clustering", "closure"])
Q = st.floats(0.0, 0.5)


@st.composite
def graphs(draw, max_n=24):
    n = draw(st.integers(3, max_n))
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), min_size=1,
                          max_size=n * 4))
    return Graph.from_edges(pairs, n=n)


@st.composite
def graph_and_partition(draw):
    g = draw(graphs())
    k = draw(st.integers(1, g.n))
    labels = draw(st.lists(st.integers(0, k - 1), min_size=g.n, max_size=g.n))
    return g, NodePartition.from_labels(labels)


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_triangle_counts(g):
    tri = local_triangle_counts(g).triangles
    assert np.array_equal(tri, triangles_by_triples(dense(g)))
    assert edge_triangle_counts(g).sum() == tri.sum()


@settings(max_examples=80, deadline=None)
@given(graph_and_partition(), KINDS, Q)
def test_unbiased_and_variance_bound(gp, kind, q):
    g, part = gp
    if g.m == 0:
        return
    den = wedge_denominators(g, kind)
    psi = exact_bucket_averages(g, part, kind)
    assert np.allclose(exhaustive_mean(g, part, den, q), psi, rtol=1e-9, atol=1e-12)
    var = exhaustive_variance(g, part, den, q)
    assert np.all(var <= (g.m - 1) * psi**2 * (1 + 1e-9) + 1e-12)


@settings(max_examples=80, deadline=None)
@given(graph_and_partition(), KINDS, Q)
def test_range_bound(gp, kind, q):
    g, part = gp
    if g.m == 0:
        return
    den = wedge_denominators(g, kind)
    b = upper_bounds(g, part, den, q)
    X = edge_parts(g, part, den, np.arange(g.m)).raw(q) * scale_factors(g.m, part)
    assert np.all(X <= b.R_j * (1 + 1e-12) + 1e-15)
    assert 1 <= b.zeta <= int(part.k).bit_length() + 1


@settings(max_examples=60, deadline=None)
@given(graph_and_partition(), st.floats(0.0, 50.0), KINDS, Q)
def test_filter_neutral(gp, C, kind, q):
    g, part = gp
    filt = filter_small_degree(g, C)
    assert np.array_equal(filt.leftover + local_triangle_counts(filt.graph).triangles,
                          local_triangle_counts(g).triangles)
    den = wedge_denominators(g, kind)
    inv = den.inverse()
    f = np.bincount(part.assignment, weights=filt.leftover * inv, minlength=part.k) / part.sizes
    if filt.graph.m:
        f = f + exhaustive_mean(filt.graph, part, den, q)
    assert np.allclose(f, exact_bucket_averages(g, part, kind), rtol=1e-9, atol=1e-12)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 8).flatmap(lambda k: st.tuples(
    st.lists(st.floats(-5, 5), min_size=k, max_size=k),
    st.lists(st.floats(-5, 5), min_size=k, max_size=k),
    st.lists(st.floats(0, 5), min_size=k, max_size=k))))
def test_minimax_beats_grid(abc):
    A, B, C = (np.asarray(x) for x in abc)
    q = minimax_quadratic(A, B, C)
    grid = np.linspace(0, 0.5, 2001)

    def env(x):
        return np.max(A[None, :] + B[None, :] * np.atleast_1d(x)[:, None]
                      + C[None, :] * np.atleast_1d(x)[:, None] ** 2, axis=1)

    assert 0.0 <= q <= 0.5
    assert env(q)[0] <= env(grid).min() + 1e-9


@settings(max_examples=40, deadline=None)
@given(graphs())
def test_text_round_trip(g):
    if g.m == 0:
        return
    buf = io.StringIO()
    write_edge_list(g, buf)
    again, labels = load_edge_list(buf.getvalue().encode())
    # ids absent from the edge list vanish on reload; compare through the labels
    assert np.array_equal(labels[again.edges], g.edges)
