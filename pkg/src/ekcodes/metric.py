"""Exact distances between codewords, and the witness families behind them.

The transportation distance between two words is the minimum, over
matchings of their parts, of the number of elements that must move.  For
pairs this is min(|A1-B1|+|A2-B2|, |A1-B2|+|A2-B1|); for s-tuples the
minimum runs over all part permutations (an assignment problem).

A witness of a pair-word {A, B} at design distance d is an unordered pair
{U, V} of disjoint sets with |U|+|V| = 2k-d+1 embedded in the word's two
sides.  Two words are at distance <= d-1 exactly when they share a
witness, which turns distance-threshold checks into set intersections.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

import numpy as np
from scipy.optimize import linear_sum_assignment

from .core import ParameterError, QaryPairWord, QaryWord, STuple

_PERMUTATION_LIMIT = 8
_AUTO_PERMUTATION_MAX = 4


def _check_same_world(x: STuple, y: STuple) -> None:
    if (x.n, x.k, x.s) != (y.n, y.k, y.s):
        raise ParameterError(
            f"mismatched parameters: ({x.n},{x.k},{x.s}) vs ({y.n},{y.k},{y.s})"
        )


def pair_distance(p: STuple, q: STuple) -> int:
    """Transportation distance between two 2-part words; 0 iff p == q."""
    _check_same_world(p, q)
    if p.s != 2:
        raise ParameterError(f"pair_distance needs 2-part words, got s={p.s}")
    a1, a2 = p.parts[0].mask, p.parts[1].mask
    b1, b2 = q.parts[0].mask, q.parts[1].mask
    straight = (a1 & b1).bit_count() + (a2 & b2).bit_count()
    crossed = (a1 & b2).bit_count() + (a2 & b1).bit_count()
    return 2 * p.k - max(straight, crossed)


def _move_cost_matrix(x: STuple, y: STuple) -> list[list[int]]:
    k = x.k
    return [
        [k - (xp.mask & yp.mask).bit_count() for yp in y.parts]
        for xp in x.parts
    ]


def tuple_distance(x: STuple, y: STuple, method: str = "auto") -> int:
    """Transportation distance between two s-part words.

    method="permutation" minimizes over all s! part matchings (the
    oracle, s <= 8); method="assignment" solves the assignment problem
    exactly.  "auto" picks by s.  Both methods are exact and agree.
    """
    _check_same_world(x, y)
    s = x.s
    if method == "auto":
        method = "permutation" if s <= _AUTO_PERMUTATION_MAX else "assignment"
    cost = _move_cost_matrix(x, y)
    if method == "permutation":
        if s > _PERMUTATION_LIMIT:
            raise ParameterError(f"permutation method limited to s <= {_PERMUTATION_LIMIT}")
        best = s * x.k
        for perm in permutations(range(s)):
            total = sum(cost[i][perm[i]] for i in range(s))
            if total < best:
                best = total
        return best
    if method == "assignment":
        rows, cols = linear_sum_assignment(np.asarray(cost))
        return int(np.asarray(cost)[rows, cols].sum())
    raise ParameterError(f"unknown method {method!r}")


def qary_distance(u: QaryWord, v: QaryWord) -> int:
    """Hamming distance between two q-ary words."""
    if (u.n, u.q) != (v.n, v.q):
        raise ParameterError(f"mismatched parameters: ({u.n},{u.q}) vs ({v.n},{v.q})")
    return sum(1 for a, b in zip(u.symbols, v.symbols) if a != b)


def qary_pair_distance(x: QaryPairWord, y: QaryPairWord) -> int:
    """Minimum over the two matchings of summed Hamming distances."""
    if (x.n, x.q) != (y.n, y.q):
        raise ParameterError(f"mismatched parameters: ({x.n},{x.q}) vs ({y.n},{y.q})")
    straight = qary_distance(x.u, y.u) + qary_distance(x.v, y.v)
    crossed = qary_distance(x.u, y.v) + qary_distance(x.v, y.u)
    return min(straight, crossed)


@dataclass(frozen=True)
class WitnessPair:
    """Unordered pair {U, V} of disjoint element sets, canonically ordered.

    u_set is the side that sorts first by (size, elements); either side
    may be empty.
    """

    u_set: tuple[int, ...]
    v_set: tuple[int, ...]

    def __post_init__(self) -> None:
        u = tuple(sorted(self.u_set))
        v = tuple(sorted(self.v_set))
        if set(u) & set(v):
            raise ParameterError(f"witness sides overlap: {u} and {v}")
        if (len(v), v) < (len(u), u):
            u, v = v, u
        object.__setattr__(self, "u_set", u)
        object.__setattr__(self, "v_set", v)


def witness_splits(k: int, d: int) -> list[tuple[int, int]]:
    """Admissible (u, v) size splits with u <= v, u + v = 2k - d + 1."""
    if not 1 <= d <= 2 * k:
        raise ParameterError(f"need 1 <= d <= 2k, got d={d}, k={k}")
    t = 2 * k - d + 1
    return [(u, t - u) for u in range(max(0, t - k), t // 2 + 1)]


def witness_set(p: STuple, d: int) -> frozenset[WitnessPair]:
    """All witnesses {U, V} of a 2-part word at design distance d.

    U sits inside one side of the word and V inside the other, over all
    admissible size splits (empty sides included, so the family stays
    intersection-complete at d = 2k).
    """
    if p.s != 2:
        raise ParameterError(f"witness_set needs 2-part words, got s={p.s}")
    a, b = p.parts[0].elements, p.parts[1].elements
    out: set[WitnessPair] = set()
    for u, v in witness_splits(p.k, d):
        for side1, side2 in ((a, b), (b, a)):
            for us in combinations(side1, u):
                for vs in combinations(side2, v):
                    out.add(WitnessPair(us, vs))
    return frozenset(out)


def words_conflict(p: STuple, q: STuple, d: int) -> bool:
    """True iff p and q share a witness, i.e. pair_distance(p, q) <= d - 1."""
    return bool(witness_set(p, d) & witness_set(q, d))
