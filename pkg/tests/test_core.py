import json
import math
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ekcodes import (
    Code,
    DegenerateParametersWarning,
    DisjointPair,
    ElementRangeError,
    KSubset,
    OverlapError,
    ParameterError,
    PartSizeError,
    QaryPairWord,
    QaryWord,
    STuple,
    canonicalize,
    code_from_json,
    code_to_json,
    enumerate_qary_words,
    enumerate_words,
    qary_word_count,
    word_count,
)


def test_canonicalize_sorts_elements():
    word = canonicalize([{3, 1}, {2, 4}], 5)
    assert word.as_lists() == [[1, 3], [2, 4]]


def test_canonicalize_unordered_pair_symmetry():
    assert canonicalize([(2, 4), (1, 3)], 5) == canonicalize([(1, 3), (2, 4)], 5)


def test_canonicalize_overlap_error():
    with pytest.raises(OverlapError):
        canonicalize([(1, 2), (2, 3)], 5)


def test_canonicalize_range_error():
    with pytest.raises(ElementRangeError):
        canonicalize([(1, 5), (2, 3)], 5)
    with pytest.raises(ElementRangeError):
        canonicalize([(-1, 2), (3, 4)], 5)


def test_canonicalize_part_size_error():
    with pytest.raises(PartSizeError):
        canonicalize([(1,), (2, 3)], 5)
    with pytest.raises(PartSizeError):
        canonicalize([(1, 2), (3, 4)], 5, k=3)
    with pytest.raises(PartSizeError):
        canonicalize([(1, 1, 2), (3, 4, 5)], 6)


def test_canonicalize_idempotent():
    word = canonicalize([(7, 2), (0, 4)], 8)
    again = canonicalize(word.as_lists(), 8)
    assert word == again


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_canonicalize_invariant_under_permutations(data):
    n = data.draw(st.integers(4, 10))
    k = data.draw(st.integers(1, n // 3 if n >= 6 else 2))
    s = data.draw(st.integers(2, min(3, n // k)))
    elems = data.draw(
        st.lists(st.integers(0, n - 1), min_size=s * k, max_size=s * k, unique=True)
    )
    parts = [elems[i * k : (i + 1) * k] for i in range(s)]
    base = canonicalize(parts, n)
    for perm in permutations(range(s)):
        shuffled = [list(reversed(parts[i])) for i in perm]
        assert canonicalize(shuffled, n) == base


def test_word_count_small_values():
    assert word_count(9, 2, 2) == 378  # (1/2) * 36 * 21
    assert word_count(2, 1, 2) == 1
    assert word_count(4, 2, 2) == 3
    assert word_count(3, 2, 2) == 0


@pytest.mark.parametrize("n", range(2, 13))
@pytest.mark.parametrize("k", (1, 2, 3))
@pytest.mark.parametrize("s", (2, 3))
def test_enumeration_matches_multinomial_count(n, k, s):
    if s * k > n:
        with pytest.warns(DegenerateParametersWarning):
            assert list(enumerate_words(n, k, s)) == []
        return
    words = list(enumerate_words(n, k, s))
    expected = math.prod(math.comb(n - i * k, k) for i in range(s)) // math.factorial(s)
    assert len(words) == expected
    assert len(set(words)) == expected


def test_enumeration_round_trip():
    for word in enumerate_words(7, 2, 2):
        assert canonicalize(word.as_lists(), 7) == word


def test_enumerate_trivial_cases():
    assert [w.as_lists() for w in enumerate_words(2, 1, 2)] == [[[0], [1]]]
    words = [w.as_lists() for w in enumerate_words(4, 2, 2)]
    assert words == [[[0, 1], [2, 3]], [[0, 2], [1, 3]], [[0, 3], [1, 2]]]


def test_ksubset_validation():
    with pytest.raises(ParameterError):
        KSubset(5, (2, 1))
    with pytest.raises(PartSizeError):
        KSubset(5, (1, 1))
    with pytest.raises(ElementRangeError):
        KSubset(5, (1, 7))
    sub = KSubset.of([4, 0, 2], 5)
    assert sub.elements == (0, 2, 4)
    assert sub.mask == 0b10101


def test_disjoint_pair_round_trips_with_stuple():
    pair = DisjointPair.from_sets([4, 1], [2, 3], 6)
    word = canonicalize([[1, 4], [2, 3]], 6)
    assert pair == word
    assert word.as_pair() == pair
    assert pair.a.elements == (1, 4)
    assert pair.b.elements == (2, 3)
    assert hash(pair) == hash(word)
    assert len({pair, word}) == 1


def test_disjoint_pair_needs_two_parts():
    with pytest.raises(ParameterError):
        DisjointPair((KSubset(5, (0, 1)),))


def test_qary_word_validation():
    word = QaryWord(4, 3, (1, 0, 2, 0))
    assert word.weight == 2
    assert word.support == (0, 2)
    with pytest.raises(ElementRangeError):
        QaryWord(3, 3, (1, 0, 3))
    with pytest.raises(ParameterError):
        QaryWord(3, 1, (0, 0, 0))


def test_qary_pair_canonical_order_and_disjointness():
    u = QaryWord(4, 3, (1, 2, 0, 0))
    v = QaryWord(4, 3, (0, 0, 2, 1))
    pair = QaryPairWord(u, v)
    assert pair.u == v and pair.v == u  # lexicographically smaller first
    assert pair == QaryPairWord(v, u)
    with pytest.raises(OverlapError):
        QaryPairWord(QaryWord(3, 2, (1, 1, 0)), QaryWord(3, 2, (0, 1, 1)))


def test_qary_enumeration_count():
    for n, k, q in ((4, 2, 3), (5, 1, 4), (5, 3, 2)):
        words = list(enumerate_qary_words(n, k, q))
        assert len(words) == qary_word_count(n, k, q) == math.comb(n, k) * (q - 1) ** k
        assert len(set(words)) == len(words)
        assert all(w.weight == k for w in words)


def test_code_json_round_trip_and_stability():
    words = frozenset(enumerate_words(6, 2, 2))
    code = Code(6, 2, 2, 0, 3, words, verified_min_distance=None)
    text = code_to_json(code)
    parsed = json.loads(text)
    assert list(parsed) == ["n", "k", "s", "q", "d", "words", "verified_min_distance"]
    assert parsed["words"] == sorted(parsed["words"])
    back = code_from_json(text)
    assert back.words == code.words
    assert code_to_json(back) == text  # byte-stable


def test_code_json_qary_round_trip():
    words = frozenset(enumerate_qary_words(4, 2, 3))
    code = Code(4, 2, 1, 3, 2, words)
    back = code_from_json(code_to_json(code))
    assert back.words == words

    u = QaryWord(4, 3, (1, 2, 0, 0))
    v = QaryWord(4, 3, (0, 0, 1, 1))
    pairs = frozenset({QaryPairWord(u, v)})
    code2 = Code(4, 2, 2, 3, 1, pairs)
    back2 = code_from_json(code_to_json(code2))
    assert back2.words == pairs


def test_code_rejects_mismatched_words():
    words = frozenset(enumerate_words(6, 2, 2))
    with pytest.raises(ParameterError):
        Code(7, 2, 2, 0, 3, words)
    with pytest.raises(ParameterError):
        Code(6, 2, 2, 1, 3, words)  # q=1 invalid


def test_code_infinite_sentinel_serializes_to_null():
    word = canonicalize([[0, 1], [2, 3]], 6)
    code = Code(6, 2, 2, 0, 3, frozenset({word}), verified_min_distance=math.inf)
    assert json.loads(code_to_json(code))["verified_min_distance"] is None
