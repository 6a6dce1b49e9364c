from itertools import combinations, product

import numpy as np
import pytest

from bridgeopt.admissibility import (
    AdmissibilityProblem,
    SignedIndex,
    benchmark_problem,
    cone_member,
    enumerate_irreducible,
)

EXPECTED_BENCHMARK = [
    {(1, 1), (-1, 3), (1, 5)},
    {(1, 2), (1, 3), (1, 4)},
    {(1, 1), (1, 2)},
    {(1, 4), (1, 5)},
]


def as_pairs(index_set):
    return {(idx.sign, idx.spring) for idx in index_set}


def brute_force_sign_patterns(problem):
    """Exhaustive oracle over one-sign-per-spring subsets (3^m - 1 of them).

    Returns the inclusion-minimal admissible sets among them.
    """
    m = problem.n_springs
    admissible = []
    for pattern in product((-1, 0, 1), repeat=m):
        if all(s == 0 for s in pattern):
            continue
        subset = tuple(
            SignedIndex(sign, j + 1) for j, sign in enumerate(pattern) if sign != 0
        )
        gens = [problem.generator(s) for s in subset]
        if cone_member(problem.target, gens):
            admissible.append(frozenset(subset))
    minimal = [s for s in admissible if not any(o < s for o in admissible)]
    return {frozenset(as_pairs(s)) for s in minimal}


class TestConeMember:
    def test_benchmark_plastic_set(self):
        p = benchmark_problem()
        gens = [
            p.generator(SignedIndex(1, 1)),
            p.generator(SignedIndex(-1, 3)),
            p.generator(SignedIndex(1, 5)),
        ]
        assert cone_member(p.target, gens)

    def test_wrong_axis(self):
        p = benchmark_problem()
        g = p.generator(SignedIndex(1, 2))
        assert np.allclose(g, [0, 0, -1])
        assert not cone_member(p.target, [g])

    def test_target_is_generator(self):
        assert cone_member([1, 0, 0], [[1, 0, 0]])

    def test_empty_generators(self):
        assert not cone_member([1, 0, 0], [])
        assert cone_member([0, 0, 0], [])

    def test_scaling_invariance(self):
        rng = np.random.default_rng(5)
        p = benchmark_problem()
        for _ in range(100):
            size = rng.integers(1, 5)
            subset = [
                SignedIndex(int(rng.choice([-1, 1])), int(rng.integers(1, 6)))
                for _ in range(size)
            ]
            gens = [p.generator(s) for s in subset]
            scaled = [g * rng.uniform(0.1, 10) for g in gens]
            assert cone_member(p.target, gens) == cone_member(p.target, scaled)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            cone_member([1, 0], [[1, 0, 0]])


class TestEnumerateIrreducible:
    def test_benchmark_exact_sets(self):
        sets = enumerate_irreducible(benchmark_problem())
        assert [as_pairs(s) for s in sets] != []
        assert sorted(map(frozenset, (as_pairs(s) for s in sets)), key=sorted) == sorted(
            map(frozenset, EXPECTED_BENCHMARK), key=sorted
        )

    def test_matches_brute_force_oracle(self):
        p = benchmark_problem()
        assert {frozenset(as_pairs(s)) for s in enumerate_irreducible(p)} == brute_force_sign_patterns(p)

    def test_unit_problem(self):
        p = AdmissibilityProblem(matrix=((1.0,),), target=(1.0,))
        sets = enumerate_irreducible(p)
        assert [as_pairs(s) for s in sets] == [{(1, 1)}]

    def test_every_result_admissible_and_minimal(self):
        p = benchmark_problem()
        for s in enumerate_irreducible(p):
            members = sorted(s)
            assert cone_member(p.target, [p.generator(i) for i in members])
            for smaller in range(len(members)):
                subset = members[:smaller] + members[smaller + 1:]
                assert not cone_member(p.target, [p.generator(i) for i in subset])

    def test_no_result_contains_another(self):
        sets = enumerate_irreducible(benchmark_problem())
        for a, b in combinations(sets, 2):
            assert not (a <= b or b <= a)


class TestSignedIndex:
    def test_validation(self):
        with pytest.raises(ValueError):
            SignedIndex(0, 1)
        with pytest.raises(ValueError):
            SignedIndex(1, 0)

    def test_str(self):
        assert str(SignedIndex(1, 3)) == "(+,3)"
        assert str(SignedIndex(-1, 3)) == "(-,3)"


class TestProblemValidation:
    def test_ragged_matrix(self):
        with pytest.raises(ValueError):
            AdmissibilityProblem(matrix=((1.0, 2.0), (1.0,)), target=(1.0, 0.0))

    def test_target_mismatch(self):
        with pytest.raises(ValueError):
            AdmissibilityProblem(matrix=((1.0, 2.0),), target=(1.0, 0.0))
