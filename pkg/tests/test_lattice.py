import random
from fractions import Fraction
from itertools import product

import pytest

from torsionlab.lattice import (
    GpmSpec,
    InfiniteIndexError,
    Sublattice,
    UnsupportedRankError,
    alpha_min_norm,
    construct_gpm,
    cyclic_subgroup,
    dual_characters,
    next_primes,
    subgroup_from_generators,
)
from torsionlab.laurent import evaluate_at_character


def test_subgroup_cyclic():
    H = subgroup_from_generators([[7]])
    assert H.index == 7
    assert H.divisors == (7,)


def test_subgroup_diagonal_snf_forced():
    H = subgroup_from_generators([[2, 0], [0, 3]])
    assert H.index == 6
    assert H.divisors == (1, 6)


def test_subgroup_triangular():
    H = subgroup_from_generators([[1, 1], [0, 2]])
    assert H.index == 2


def test_subgroup_singular_rejected():
    with pytest.raises(InfiniteIndexError):
        subgroup_from_generators([[1, 2], [2, 4]])


def test_dual_characters_cyclic():
    H = cyclic_subgroup(5)
    angles = sorted(z.angles[0] for z in dual_characters(H))
    assert angles == [Fraction(k, 5) for k in range(5)]


def test_dual_characters_two_by_two():
    H = subgroup_from_generators([[2, 0], [0, 2]])
    pts = {z.angles for z in dual_characters(H)}
    assert pts == {
        (Fraction(a, 2), Fraction(b, 2)) for a in range(2) for b in range(2)
    }


def test_dual_characters_count_distinct_integral():
    rng = random.Random(11)
    for _ in range(12):
        rows = [[rng.randint(-4, 4) for _ in range(2)] for _ in range(2)]
        try:
            H = Sublattice(rows)
        except InfiniteIndexError:
            continue
        chars = dual_characters(H)
        assert len(chars) == H.index
        assert len(set(chars)) == H.index
        for z in chars:
            for row in H.generators:
                total = sum(Fraction(v) * a for v, a in zip(row, z.angles))
                assert total.denominator == 1


def test_dual_characters_gpm_parametrization():
    H, spec = construct_gpm(2, 5, 71)
    expected = {
        tuple(Fraction(k * r, 71) % 1 for r in spec.weights) for k in range(71)
    }
    got = {z.angles for z in dual_characters(H)}
    assert got == expected


def test_alpha_cyclic():
    assert alpha_min_norm(cyclic_subgroup(9)) == 9


def test_alpha_axis():
    assert alpha_min_norm(subgroup_from_generators([[5, 0], [0, 7]])) == 5


def test_alpha_congruence_lattice_vs_bruteforce():
    # H = {v : 7 v1 + 5 v2 = 0 mod 71}, exhaustive oracle over |v_i| <= 71.
    H, _ = construct_gpm(2, 5, 71)
    best = None
    for v1 in range(-71, 72):
        for v2 in range(-71, 72):
            if (v1, v2) == (0, 0):
                continue
            if (7 * v1 + 5 * v2) % 71 == 0:
                s = max(abs(v1), abs(v2))
                best = s if best is None else min(best, s)
    assert alpha_min_norm(H) == best
    assert best >= 5


def test_alpha_rank_limit():
    with pytest.raises(UnsupportedRankError):
        alpha_min_norm(Sublattice([[1 if i == j else 0 for j in range(5)] for i in range(5)]))


def test_next_primes():
    assert next_primes(5, 2) == [5, 7]
    assert next_primes(5, 3) == [5, 7, 11]
    assert next_primes(11, 2) == [11, 13]
    with pytest.raises(ValueError):
        next_primes(6, 2)


def test_construct_gpm_examples():
    H, spec = construct_gpm(2, 5, 71)
    assert H.index == 71
    assert spec.weights == (7, 5)
    assert 71 > spec.weight_bound == 2 * 5 * 7
    assert alpha_min_norm(H) >= 5

    H1, spec1 = construct_gpm(1, 2, 12)
    assert H1.index == 12
    assert H1.generators == ((12,),)

    # Membership definition: v in H iff <v, weights> = 0 mod M.
    H2, spec2 = construct_gpm(2, 3, 31)
    for v in product(range(-6, 7), repeat=2):
        lhs = H2.contains(v)
        rhs = (spec2.weights[0] * v[0] + spec2.weights[1] * v[1]) % 31 == 0
        assert lhs == rhs


def test_construct_gpm_alpha_guarantee_small_sweep():
    import sympy

    for m in (2, 3):
        for p in (2, 3, 5, 7):
            primes = next_primes(p, m)
            bound = m
            for q in primes:
                bound *= q
            M = int(sympy.nextprime(bound))
            H, spec = construct_gpm(m, p, M)
            assert H.index == M
            assert alpha_min_norm(H) >= p


def test_index_invariant_under_unimodular_row_ops():
    rng = random.Random(23)
    base = [[3, 1], [1, 4]]
    H0 = Sublattice(base)
    for _ in range(10):
        rows = [list(r) for r in base]
        for _ in range(6):
            i, j = rng.sample(range(2), 2)
            c = rng.randint(-3, 3)
            rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
        H = Sublattice(rows)
        assert H.index == H0.index
        assert H.divisors == H0.divisors


def test_characters_evaluate_to_roots_of_unity():
    H = subgroup_from_generators([[3, 1], [0, 4]])
    from torsionlab.laurent import LaurentPoly

    for z in dual_characters(H):
        for row in H.generators:
            mono = LaurentPoly.monomial(row, 1)
            assert evaluate_at_character(mono, z) == pytest.approx(1.0)


def test_cyclic_weights():
    H, spec = construct_gpm(2, 5, 71)
    w = H.cyclic_weights()
    assert w is not None
    # The weight vector of the quotient rotation must reproduce the dual set.
    expected = {tuple(Fraction(k * r, 71) % 1 for r in spec.weights) for k in range(71)}
    got = {tuple(Fraction(k * wi, 71) % 1 for wi in w) for k in range(71)}
    assert got == expected
    assert subgroup_from_generators([[2, 0], [0, 2]]).cyclic_weights() is None


def test_json_round_trip():
    H = subgroup_from_generators([[2, 1], [0, 5]])
    assert Sublattice.from_json(H.to_json()) == H
    _, spec = construct_gpm(2, 5, 71)
    js = spec.to_json()
    assert js["weights"] == [7, 5] and js["M"] == 71
