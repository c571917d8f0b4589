import numpy as np
import pytest

from oracles import cores_by_deletion, dense
from triadic.graph import (GraphFormatError, StructuralError, complete_graph, erdos_renyi, path_graph,
                           star_graph)
from triadic.partition import (NodePartition, core_numbers, equal_frequency, load_partition_file,
                               log_degree_index, make_partition, write_partition)


def test_core_numbers_small():
    assert core_numbers(complete_graph(4)).tolist() == [3] * 4
    assert core_numbers(path_graph(6)).tolist() == [1] * 6
    assert core_numbers(star_graph(5)).tolist() == [1] * 6


def test_core_numbers_against_deletion():
    g = erdos_renyi(100, 0.1, 21)
    assert np.array_equal(core_numbers(g), cores_by_deletion(dense(g)))


def test_log_degree_index():
    assert log_degree_index([2]).tolist() == [2]
    assert log_degree_index([0, 1]).tolist() == [1, 1]
    d = np.arange(0, 500)
    idx = log_degree_index(d)
    assert np.all(np.diff(idx) >= 0)
    # ln(1 + (d-2)/ln 2) crosses 1 at d = 2 + (e-1) ln 2 ~ 3.19
    assert log_degree_index([3, 4]).tolist() == [2, 3]


def test_degree_scheme_sizes_and_monotone():
    g = erdos_renyi(1000, 0.01, 22)
    part = make_partition(g, "deg")
    assert part.k == 25
    assert part.sizes.max() - part.sizes.min() <= 1
    lo = [g.degrees[part.members(j)].min() for j in range(part.k)]
    hi = [g.degrees[part.members(j)].max() for j in range(part.k)]
    assert all(hi[j] <= lo[j + 1] for j in range(part.k - 1))


def test_core_scheme_default_k():
    g = erdos_renyi(600, 0.02, 23)
    part = make_partition(g, "core")
    assert part.k == 30 and part.sizes.sum() == g.n
    cores = core_numbers(g)
    hi = [cores[part.members(j)].max() for j in range(part.k)]
    lo = [cores[part.members(j)].min() for j in range(part.k)]
    assert all(hi[j] <= lo[j + 1] for j in range(part.k - 1))


def test_group_ties_keep_equal_values_together():
    stat = np.array([1, 1, 1, 1, 2, 2, 3, 3])
    labels = equal_frequency(stat, 4, ties="group")
    for v in np.unique(stat):
        assert np.unique(labels[stat == v]).size == 1
    split = equal_frequency(stat, 4)
    assert np.bincount(split).tolist() == [2, 2, 2, 2]


def test_random_scheme_is_seeded():
    g = erdos_renyi(300, 0.05, 24)
    a = make_partition(g, "rand", rng=5)
    b = make_partition(g, "random", rng=5)
    assert np.array_equal(a.assignment, b.assignment) and a.k <= 30


def test_logdeg_compaction():
    g = star_graph(3)  # center degree 3 -> raw 2, leaves -> raw 1
    part = make_partition(g, "logdeg")
    assert part.k == 2 and part.assignment.tolist() == [1, 0, 0, 0]
    assert part.raw_ids.tolist() == [1, 2]


def test_label_file_compaction(tmp_path):
    p = tmp_path / "labels.txt"
    p.write_text("5\n5\n9\n")
    part = load_partition_file(p, n=3)
    assert part.k == 2 and part.assignment.tolist() == [0, 0, 1]
    p.write_text("9\n5\n9\n")
    assert load_partition_file(p, n=3).assignment.tolist() == [0, 1, 0]
    p.write_text("4 4 4\n")
    assert load_partition_file(p, n=3).k == 1


def test_label_file_errors(tmp_path):
    p = tmp_path / "labels.txt"
    p.write_text("0\n1\n")
    with pytest.raises(StructuralError):
        load_partition_file(p, complete_graph(3))
    p.write_text("0\nx\n1\n")
    with pytest.raises(GraphFormatError):
        load_partition_file(p, complete_graph(3))


def test_write_read_round_trip(tmp_path):
    g = erdos_renyi(50, 0.1, 25)
    part = make_partition(g, "deg", k=7)
    p = tmp_path / "out.txt"
    write_partition(part, p)
    again = make_partition(g, "file", path=p)
    # labels are renumbered by first occurrence; raw_ids maps them back
    assert np.array_equal(again.raw_ids[again.assignment], part.assignment)


def test_partition_cover():
    g = erdos_renyi(200, 0.04, 26)
    for scheme in ("core", "deg", "logdeg", "rand"):
        part = make_partition(g, scheme, rng=1)
        assert part.sizes.sum() == g.n and np.all(part.sizes > 0)
        assert np.array_equal(np.bincount(part.assignment, minlength=part.k), part.sizes)


def test_bad_scheme():
    with pytest.raises(ValueError):
        make_partition(complete_graph(3), "metis")
    with pytest.raises(ValueError):
        make_partition(complete_graph(3), "deg", k=0)
