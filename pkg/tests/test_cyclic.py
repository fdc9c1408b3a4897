import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ekcodes import (
    CyclicGeneratorPair,
    ParameterError,
    canonical_generator_form,
    canonicalize,
    circular_distance,
    generators_equivalent,
    is_antagonistic,
    multi_orbit_code,
    orbit_code,
    search_antagonistic,
    verify_code,
)

# the published antagonistic pairs mod 2k^2+1, translated to residues
PAIR_K1 = CyclicGeneratorPair(3, (1,), (2,))
PAIR_K2 = CyclicGeneratorPair(9, (1, 8), (2, 3))
PAIR_K3 = CyclicGeneratorPair(19, (1, 5, 19), (2, 13, 15))  # 19 = 0 mod 19


def test_circular_distance_values():
    assert circular_distance(1, 8, 9) == 2
    assert circular_distance(5, 5, 7) == 0
    assert circular_distance(0, 5, 10) == 5
    assert circular_distance(-1, 1, 9) == 2  # inputs reduced mod m


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 100), st.data())
def test_circular_distance_shift_invariance(m, data):
    a = data.draw(st.integers(0, m - 1))
    b = data.draw(st.integers(0, m - 1))
    u = data.draw(st.integers(0, m - 1))
    assert circular_distance(a, b, m) == circular_distance(b, a, m)
    assert circular_distance(a + u, b + u, m) == circular_distance(a, b, m)
    assert 0 <= circular_distance(a, b, m) <= m // 2


def test_circular_distance_shift_invariance_exhaustive():
    for m in range(1, 31):
        for a in range(m):
            for b in range(m):
                base = circular_distance(a, b, m)
                assert base == circular_distance(a + 7, b + 7, m)
                assert base == circular_distance(b, a, m)


def test_generator_pair_validation():
    with pytest.raises(ParameterError):
        CyclicGeneratorPair(9, (1, 2), (2, 3))  # overlap
    with pytest.raises(ParameterError):
        CyclicGeneratorPair(9, (1, 10), (2, 3))  # 10 = 1 collides after reduction
    with pytest.raises(ParameterError):
        CyclicGeneratorPair(9, (1, 2), (3,))  # unequal sizes


def test_published_pairs_are_antagonistic():
    for pair in (PAIR_K1, PAIR_K2, PAIR_K3):
        report = is_antagonistic(pair)
        assert report.ok, report


def test_antagonism_violations_reported():
    report = is_antagonistic(CyclicGeneratorPair(9, (1, 2), (3, 4)))
    assert not report.ok
    assert report.condition == "i"  # equal within-set gaps
    report = is_antagonistic(CyclicGeneratorPair(11, (0, 4), (1, 3)))
    # within distances 4, 2 are distinct; cross d(0,3) = d(4,1) = 3 collide
    assert not report.ok and report.condition == "ii"
    report = is_antagonistic(CyclicGeneratorPair(8, (0,), (4,)))
    assert not report.ok and report.condition == "iii"


def test_cross_within_collisions_are_allowed():
    # the k=3 published pair has cross distances equal to within distances
    s, t = PAIR_K3.s_set, PAIR_K3.t_set
    within = set()
    for group in (s, t):
        for i, a in enumerate(group):
            for b in group[i + 1 :]:
                within.add(circular_distance(a, b, 19))
    cross = {circular_distance(a, b, 19) for a in s for b in t}
    assert within & cross  # collisions exist, yet the pair verifies
    assert is_antagonistic(PAIR_K3).ok


def test_is_antagonistic_invariant_under_symmetries():
    rng = random.Random(5)
    for pair in (PAIR_K2, PAIR_K3, CyclicGeneratorPair(9, (1, 2), (3, 4))):
        m = pair.m
        verdict = is_antagonistic(pair).ok
        for _ in range(10):
            c = rng.randrange(m)
            rotated = CyclicGeneratorPair(
                m, tuple((x + c) % m for x in pair.s_set), tuple((x + c) % m for x in pair.t_set)
            )
            reflected = CyclicGeneratorPair(
                m, tuple(-x % m for x in pair.s_set), tuple(-x % m for x in pair.t_set)
            )
            swapped = CyclicGeneratorPair(m, pair.t_set, pair.s_set)
            assert is_antagonistic(rotated).ok == verdict
            assert is_antagonistic(reflected).ok == verdict
            assert is_antagonistic(swapped).ok == verdict


def test_orbit_code_published_values():
    for pair, size, dist in ((PAIR_K1, 3, 1), (PAIR_K2, 9, 3), (PAIR_K3, 19, 5)):
        code = orbit_code(pair)
        assert len(code) == size
        assert code.d == 2 * pair.k - 1
        assert verify_code(code) == dist


def test_orbit_code_refuses_non_antagonistic():
    with pytest.raises(ParameterError, match="condition i"):
        orbit_code(CyclicGeneratorPair(9, (1, 2), (3, 4)))


def test_orbit_intersection_structure():
    # translate structure behind the distance guarantee, checked exhaustively
    for pair in (PAIR_K1, PAIR_K2, PAIR_K3):
        m = pair.m
        shifts = [
            (
                {(x + u) % m for x in pair.s_set},
                {(x + u) % m for x in pair.t_set},
            )
            for u in range(m)
        ]
        for u in range(m):
            su, tu = shifts[u]
            for v in range(u + 1, m):
                sv, tv = shifts[v]
                assert len(su & sv) <= 1
                assert len(tu & tv) <= 1
                assert len(su & tv) <= 1
                assert len(tu & sv) <= 1
                assert not (su & sv and tu & tv)
                assert not (su & tv and tu & sv)


def test_search_rediscovers_k2_pair():
    result = search_antagonistic(2, 9)
    assert result.exhausted
    assert any(generators_equivalent(p, PAIR_K2) for p in result.pairs)


def test_search_rediscovers_k3_pair():
    result = search_antagonistic(3, 19)
    assert result.exhausted
    assert any(generators_equivalent(p, PAIR_K3) for p in result.pairs)


def test_search_k1():
    result = search_antagonistic(1, 3)
    assert result.exhausted
    assert [(p.s_set, p.t_set) for p in result.pairs] == [((0,), (1,))]


def test_search_limit_and_budget():
    limited = search_antagonistic(2, 9, limit=1)
    assert len(limited.pairs) == 1 and not limited.exhausted
    budgeted = search_antagonistic(3, 19, node_budget=50)
    assert not budgeted.exhausted
    assert budgeted.nodes <= 50 + 1
    assert budgeted.frontier  # something left to explore


def test_search_results_canonical_and_sorted():
    result = search_antagonistic(2, 9)
    keys = [(p.s_set, p.t_set) for p in result.pairs]
    assert keys == sorted(keys)
    for pair in result.pairs:
        assert canonical_generator_form(pair) == (pair.s_set, pair.t_set)


def test_search_infeasible_parameters():
    with pytest.raises(ParameterError):
        search_antagonistic(3, 5)


def test_search_checkpoint_resume(tmp_path):
    ckpt = tmp_path / "frontier.txt"
    full = search_antagonistic(3, 19)
    first = search_antagonistic(3, 19, node_budget=500, checkpoint=ckpt)
    assert not first.exhausted
    assert ckpt.read_text().strip()
    found = {(p.s_set, p.t_set) for p in first.pairs}
    # resume until the tree is done
    for _ in range(100):
        step = search_antagonistic(3, 19, node_budget=2000, checkpoint=ckpt)
        found |= {(p.s_set, p.t_set) for p in step.pairs}
        if step.exhausted:
            break
    assert step.exhausted
    assert ckpt.read_text().strip() == ""
    assert {(p.s_set, p.t_set) for p in full.pairs} <= found


def test_every_small_search_find_yields_valid_orbit_code():
    # end-to-end distance guarantee over every find at desk scale
    for k in (2, 3):
        for m in range(2 * k, 26):
            result = search_antagonistic(k, m)
            assert result.exhausted
            for pair in result.pairs:
                code = orbit_code(pair)
                assert verify_code(code) >= 2 * k - 1


def test_multi_orbit_matches_single_orbit():
    single = orbit_code(PAIR_K2)
    multi = multi_orbit_code(9, [((1, 8), (2, 3))], d=3)
    assert multi.words == single.words
    assert multi.verified_min_distance == 3


def test_multi_orbit_17_point_code():
    code = multi_orbit_code(17, [((0, 7), (2, 6)), ((0, 11), (7, 8))], d=3)
    assert len(code) == 34
    assert code.verified_min_distance == 3


def test_multi_orbit_collision_detected():
    gen = ((0, 7), (2, 6))
    shifted = ((3, 10), (5, 9))  # same orbit, shifted by 3
    with pytest.raises(ParameterError, match="orbit"):
        multi_orbit_code(17, [gen, shifted], d=3)


def test_multi_orbit_accepts_stuple_generators():
    gen = canonicalize([(0, 7), (2, 6)], 17)
    code = multi_orbit_code(17, [gen], d=3)
    assert len(code) == 17
