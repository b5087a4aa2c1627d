import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import brute_max_independent_size, brute_min_hitting_size, random_system

from hitlab.sampler import Dense, Sparse, sample_system, trial_seed
from hitlab.setsystem import (
    SetSystem,
    build,
    complement,
    is_hitting,
    is_maximal_independent,
    to_bits,
)
from hitlab.solver import (
    Status,
    count_hitting_sets,
    exhaustive_min_hitting,
    greedy_hitting,
    max_independent_size,
    packing_lower_bound,
    solve_min_hitting,
)

EXAMPLES = [
    (build(3, []), 0, 0),
    (build(2, [[1], [2]]), 2, to_bits([1, 2])),
]


@pytest.mark.parametrize("solve", [solve_min_hitting, exhaustive_min_hitting])
def test_examples(solve):
    for sys, size, witness in EXAMPLES:
        res = solve(sys)
        assert res.status is Status.OPTIMAL
        assert res.size == size
        assert res.witness == witness
    tri = build(3, [[1, 2], [2, 3], [1, 3]])
    assert brute_min_hitting_size(3, tri.edges) == 2
    res = solve(tri)
    assert res.size == 2 and is_hitting(tri, res.witness)


def test_exhaustive_first_in_lexicographic_order():
    tri = build(3, [[1, 2], [2, 3], [1, 3]])
    assert exhaustive_min_hitting(tri).witness == to_bits([1, 2])


def test_exhaustive_refuses_large_n():
    with pytest.raises(ValueError):
        exhaustive_min_hitting(build(21, [[1]]))


def test_greedy_examples():
    assert greedy_hitting(build(2, [[1], [2]])) == to_bits([1, 2])
    assert greedy_hitting(build(3, [[1, 2, 3]])) == to_bits([1])
    assert greedy_hitting(build(3, [])) == 0


def test_packing_examples():
    assert packing_lower_bound(build(2, [[1], [2]])) == 2
    assert packing_lower_bound(build(3, [[1, 2], [2, 3]])) == 1
    assert packing_lower_bound(build(3, [])) == 0


def test_max_independent_examples():
    assert max_independent_size(build(5, []))[0] == 5
    size, witness = max_independent_size(build(3, [[1], [2]]))
    assert size == 1 and witness == to_bits([3])


def test_random_n10_greedy_and_independence():
    rng = random.Random(21)
    for _ in range(30):
        sys = random_system(rng, 10, rng.choice([0.02, 0.1, 0.3]))
        exact = exhaustive_min_hitting(sys).size
        assert greedy_hitting(sys).bit_count() >= exact
        size, witness = max_independent_size(sys)
        assert size == brute_max_independent_size(10, sys.edges)
        assert is_maximal_independent(sys, witness)


def test_packing_bound_below_oracle_n12():
    rng = random.Random(22)
    for _ in range(50):
        sys = random_system(rng, 12, rng.choice([0.005, 0.02, 0.1]))
        assert packing_lower_bound(sys) <= exhaustive_min_hitting(sys).size


def test_oracle_equivalence_sandwich_duality_up_to_n14():
    rng = random.Random(23)
    for _ in range(120):
        n = rng.randint(1, 14)
        sys = random_system(rng, n, rng.choice([0.01, 0.05, 0.2, 0.5]))
        res = solve_min_hitting(sys)
        ex = exhaustive_min_hitting(sys)
        assert res.status is Status.OPTIMAL
        assert res.size == ex.size
        assert res.witness.bit_count() == res.size
        assert is_hitting(sys, res.witness)
        assert packing_lower_bound(sys) <= res.size <= greedy_hitting(sys).bit_count()
        assert is_maximal_independent(sys, complement(sys, res.witness))


@st.composite
def systems(draw):
    n = draw(st.integers(1, 12))
    edges = draw(st.lists(st.integers(1, (1 << n) - 1), max_size=40))
    return SetSystem.from_bits(n, edges)


@settings(max_examples=200, deadline=None)
@given(systems())
def test_solver_matches_brute_force(sys):
    res = solve_min_hitting(sys)
    assert res.size == brute_min_hitting_size(sys.n, sys.edges)
    assert is_hitting(sys, res.witness)


def test_determinism():
    sys = sample_system(24, Dense(0.5), trial_seed(0, 3))
    a = solve_min_hitting(sys)
    b = solve_min_hitting(sys)
    assert a == b


def test_monotone_under_edge_addition():
    rng = random.Random(24)
    for _ in range(10):
        n = rng.randint(6, 14)
        pool = rng.sample(range(1, 1 << n), 60)
        prev = 0
        for k in range(1, len(pool) + 1, 3):
            size = solve_min_hitting(SetSystem.from_bits(n, pool[:k])).size
            assert size >= prev
            prev = size


def test_multiword_ground_set_embedding():
    # a small instance placed on elements 60..73 of a 130-element ground set
    rng = random.Random(25)
    for _ in range(25):
        n = rng.randint(3, 14)
        small = random_system(rng, n, rng.choice([0.05, 0.2, 0.4]))
        shifted = SetSystem.from_bits(130, [e << 59 for e in small.edges])
        res = solve_min_hitting(shifted)
        assert res.size == exhaustive_min_hitting(small).size
        assert is_hitting(shifted, res.witness)


def test_sparse_n64_instance_solves_to_window():
    sys = sample_system(64, Sparse(2), trial_seed(0, 0))
    res = solve_min_hitting(sys)
    assert res.status is Status.OPTIMAL
    assert is_hitting(sys, res.witness)
    assert res.size in (7, 8, 9)


def test_budget_exceeded_keeps_a_hitting_witness():
    sys = sample_system(24, Dense(0.5), trial_seed(0, 1))
    res = solve_min_hitting(sys, node_budget=5)
    assert res.status is Status.BUDGET_EXCEEDED
    assert res.nodes <= 5
    assert is_hitting(sys, res.witness)
    assert res.size == res.witness.bit_count()
    with pytest.raises(RuntimeError):
        max_independent_size(sys, node_budget=5)


def test_count_hitting_sets_brute_force():
    rng = random.Random(26)
    for _ in range(20):
        n = rng.randint(3, 10)
        sys = random_system(rng, n, 0.05)
        for m in range(n + 1):
            expect = sum(
                1
                for c in combinations(range(n), m)
                if all(e & sum(1 << i for i in c) for e in sys.edges)
            )
            assert count_hitting_sets(sys, m) == expect
    big = SetSystem.from_bits(70, [0b111 << 66, 1])
    assert count_hitting_sets(big, 2) == 3
    with pytest.raises(ValueError):
        count_hitting_sets(build(64, [[1]]), 10)
