"""Brute-force oracles: orientation bound, load bound, arboricity."""
import itertools
from fractions import Fraction

import pytest

from recourse import CapacityError, RejectedInputError
from recourse.oracle import arboricity, is_forest, min_max_indegree, min_max_load

from util import all_small_forests, bf_min_max_load


def test_forest_fast_path_and_witness():
    edges = [(0, 1), (1, 2), (2, 3), (1, 4)]
    assert is_forest(edges)
    report = min_max_indegree(edges, want_witness=True)
    assert report.value == 1
    loads = {}
    for eid, head in report.witness.items():
        assert head in edges[eid]
        loads[head] = loads.get(head, 0) + 1
    assert max(loads.values()) == 1


def test_min_max_indegree_simple_cases():
    assert min_max_indegree([]).value == 0
    assert min_max_indegree([(0, 1)]).value == 1
    triangle = [(0, 1), (1, 2), (0, 2)]
    assert min_max_indegree(triangle).value == 1
    assert min_max_indegree(triangle, mode="exhaustive").value == 1
    k4 = list(itertools.combinations(range(4), 2))
    assert min_max_indegree(k4).value == 2
    doubled = [(0, 1)] * 3
    assert min_max_indegree(doubled).value == 2


def test_min_max_indegree_rejects_self_loop_and_capacity():
    with pytest.raises(RejectedInputError):
        min_max_indegree([(1, 1)])
    with pytest.raises(CapacityError):
        min_max_indegree([(0, i + 1) for i in range(23)], mode="exhaustive")


def test_exhaustive_and_feasibility_agree_on_all_small_graphs():
    # All simple graphs on 5 nodes (up to 10 edges).
    pairs = list(itertools.combinations(range(5), 2))
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        if not edges:
            continue
        a = min_max_indegree(edges, mode="exhaustive").value
        b = min_max_indegree(edges, mode="feasibility").value
        assert a == b, edges


def test_feasibility_witness_achieves_value():
    k4 = list(itertools.combinations(range(4), 2))
    report = min_max_indegree(k4, mode="feasibility", want_witness=True)
    loads = {}
    for eid, head in report.witness.items():
        assert head in k4[eid]
        loads[head] = loads.get(head, 0) + 1
    assert max(loads.values()) == report.value


def test_min_max_load_basics():
    assert min_max_load([]).value == 0
    assert min_max_load([(0,), (1,), (2,)]).value == 1
    assert min_max_load([(7,)] * 4).value == 4
    assert min_max_load([(0, 1), (1, 2), (0,)]).value == 1
    assert min_max_load([(0, 1), (1,), (0,)]).value == 2
    with pytest.raises(RejectedInputError):
        min_max_load([(0,), ()])


def test_min_max_load_matches_exhaustive_on_random_instances():
    import random
    for seed in range(40):
        rng = random.Random(1000 + seed)
        sets = []
        for _ in range(rng.randint(1, 7)):
            size = rng.randint(1, 3)
            sets.append(tuple(dict.fromkeys(rng.randrange(4) for _ in range(size))))
        assert min_max_load(sets).value == bf_min_max_load(sets)
        assert min_max_load(sets, mode="exhaustive").value == bf_min_max_load(sets)


def test_min_max_load_hall_characterization():
    # Value 1 exactly when every subset of lefts has enough neighbors.
    import random
    for seed in range(30):
        rng = random.Random(seed)
        sets = [tuple(dict.fromkeys(rng.randrange(4) for _ in range(rng.randint(1, 2))))
                for _ in range(rng.randint(1, 6))]
        value = min_max_load(sets).value
        hall = all(
            len(set().union(*(sets[i] for i in combo))) >= len(combo)
            for r in range(1, len(sets) + 1)
            for combo in itertools.combinations(range(len(sets)), r)
        )
        assert (value == 1) == hall


def test_min_max_load_witness():
    report = min_max_load([(0, 1), (0, 1), (0, 1)], want_witness=True)
    assert report.value == 2
    loads = {}
    for x, y in report.witness.items():
        assert y in (0, 1)
        loads[y] = loads.get(y, 0) + 1
    assert max(loads.values()) == 2


def test_arboricity_values():
    tree = [(0, 1), (1, 2), (2, 3)]
    assert arboricity(tree).value == Fraction(1)
    assert arboricity(tree).ceil_value == 1
    triangle = [(0, 1), (1, 2), (0, 2)]
    assert arboricity(triangle).value == Fraction(3, 2)
    assert arboricity(triangle).ceil_value == 2
    k4 = list(itertools.combinations(range(4), 2))
    assert arboricity(k4).value == Fraction(2)
    assert arboricity([]).value == Fraction(0)


def test_arboricity_on_every_small_forest_is_one():
    for edges in all_small_forests(5):
        if edges:
            assert arboricity(edges).value == Fraction(1)


def test_arboricity_capacity_limit():
    star = [(0, i) for i in range(1, 16)]
    with pytest.raises(CapacityError):
        arboricity(star)
