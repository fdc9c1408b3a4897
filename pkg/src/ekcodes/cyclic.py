"""Antagonistic residue-set pairs mod m and the orbit codes they generate.

A pair of disjoint k-subsets S, T of Z_m is antagonistic when (i) the
k(k-1) circular distances inside S and inside T are all distinct as one
combined list, none equal to m/2, (ii) the k^2 cross distances are all
distinct, and (iii) no cross distance equals m/2.  Equivalently, all
within-set and all cross directed differences are distinct.  Translating
such a pair around the circle yields m words with pairwise transportation
distance >= 2k-1.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .core import Code, ParameterError, STuple, canonicalize


def circular_distance(a: int, b: int, m: int) -> int:
    """Shorter way around the circle Z_m between a and b; in [0, m/2]."""
    if m < 1:
        raise ParameterError(f"modulus must be >= 1, got m={m}")
    r = (b - a) % m
    return min(r, m - r)


@dataclass(frozen=True)
class CyclicGeneratorPair:
    """Disjoint k-subsets S, T of residues mod m, reduced and sorted."""

    m: int
    s_set: tuple[int, ...]
    t_set: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ParameterError(f"modulus must be >= 1, got m={self.m}")
        s = tuple(sorted({int(x) % self.m for x in self.s_set}))
        t = tuple(sorted({int(x) % self.m for x in self.t_set}))
        if len(s) != len(self.s_set) or len(t) != len(self.t_set):
            raise ParameterError("residues collide after reduction mod m")
        if len(s) != len(t):
            raise ParameterError(f"|S| = {len(s)} and |T| = {len(t)} must be equal")
        if not s:
            raise ParameterError("S and T must be nonempty")
        if set(s) & set(t):
            raise ParameterError(f"S and T must be disjoint, share {sorted(set(s) & set(t))}")
        object.__setattr__(self, "s_set", s)
        object.__setattr__(self, "t_set", t)

    @property
    def k(self) -> int:
        return len(self.s_set)


@dataclass(frozen=True)
class AntagonismReport:
    """Verdict plus, on failure, the first violated condition and its collision."""

    ok: bool
    condition: str | None = None
    detail: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_antagonistic(g: CyclicGeneratorPair) -> AntagonismReport:
    """Check conditions (i)-(iii); cross/within collisions are allowed.

    Condition (i) counts each within-set distance once per unordered pair
    but also rejects a within-set distance of exactly m/2: such a pair's
    two directed differences coincide, which makes the set invariant
    under the half-turn shift and breaks the orbit distance guarantee.
    """
    m = g.m
    within: dict[int, tuple[int, int]] = {}
    for group in (g.s_set, g.t_set):
        for i, a in enumerate(group):
            for b in group[i + 1 :]:
                dist = circular_distance(a, b, m)
                if dist in within:
                    return AntagonismReport(
                        False, "i",
                        f"within-set distance {dist} from {within[dist]} and {(a, b)}",
                    )
                if 2 * dist == m:
                    return AntagonismReport(
                        False, "i", f"within-set distance m/2 from {(a, b)}"
                    )
                within[dist] = (a, b)
    cross: dict[int, tuple[int, int]] = {}
    for a in g.s_set:
        for b in g.t_set:
            dist = circular_distance(a, b, m)
            if dist in cross:
                return AntagonismReport(
                    False, "ii",
                    f"cross distance {dist} from {cross[dist]} and {(a, b)}",
                )
            cross[dist] = (a, b)
    if m % 2 == 0:
        for dist, pair in cross.items():
            if 2 * dist == m:
                return AntagonismReport(False, "iii", f"cross distance m/2 from {pair}")
    return AntagonismReport(True)


def canonical_generator_form(g: CyclicGeneratorPair) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Least representative of g's orbit under rotation, reflection, and swap."""
    m = g.m
    best: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    for sign in (1, -1):
        s0 = [sign * x % m for x in g.s_set]
        t0 = [sign * x % m for x in g.t_set]
        for first, second in ((s0, t0), (t0, s0)):
            for shift in range(m):
                cand = (
                    tuple(sorted((x + shift) % m for x in first)),
                    tuple(sorted((x + shift) % m for x in second)),
                )
                if best is None or cand < best:
                    best = cand
    assert best is not None
    return best


def generators_equivalent(g1: CyclicGeneratorPair, g2: CyclicGeneratorPair) -> bool:
    """True iff g1 and g2 differ only by rotation, reflection, or swap."""
    if g1.m != g2.m:
        return False
    return canonical_generator_form(g1) == canonical_generator_form(g2)


@dataclass
class AntagonisticSearch:
    """Outcome of a backtracking run: distinct pairs (canonical, sorted)."""

    pairs: list[CyclicGeneratorPair]
    exhausted: bool
    nodes: int = 0
    frontier: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)


def _extensions(state: tuple[tuple[int, ...], tuple[int, ...]], k: int, m: int) -> list:
    """Valid children of a partial assignment, in increasing element order.

    Re-derives the used-distance sets from the partial pair; a child is
    kept only if its new within/cross distances avoid every collision the
    antagonism conditions forbid.
    """
    s, t = state
    half = m // 2 if m % 2 == 0 else -1
    within: set[int] = set()
    for group in (s, t):
        for i, a in enumerate(group):
            for b in group[i + 1 :]:
                within.add(circular_distance(a, b, m))
    if len(s) < k:
        children = []
        start = s[-1] + 1 if s else 0
        for e in range(start, m):
            new = [circular_distance(a, e, m) for a in s]
            if len(set(new)) != len(new) or within.intersection(new):
                continue
            if half > 0 and half in new:
                continue
            children.append(((*s, e), t))
        return children
    cross = set()
    for a in s:
        for b in t:
            cross.add(circular_distance(a, b, m))
    children = []
    start = t[-1] + 1 if t else 1
    used = set(s)
    for e in range(start, m):
        if e in used:
            continue
        new_within = [circular_distance(a, e, m) for a in t]
        if len(set(new_within)) != len(new_within) or within.intersection(new_within):
            continue
        if half > 0 and half in new_within:
            continue
        new_cross = [circular_distance(a, e, m) for a in s]
        if len(set(new_cross)) != len(new_cross) or cross.intersection(new_cross):
            continue
        if half > 0 and half in new_cross:
            continue
        children.append((s, (*t, e)))
    return children


def search_antagonistic(
    k: int,
    m: int,
    limit: int | None = None,
    seed: int | None = None,
    *,
    node_budget: int | None = None,
    wall_budget_s: float | None = None,
    checkpoint: str | Path | None = None,
) -> AntagonisticSearch:
    """Backtracking search for antagonistic pairs, up to symmetry.

    Rotation is broken by fixing min(S) = 0; reflection and swap are
    removed by emitting only canonical representatives.  The tree is
    traversed depth first with element candidates in increasing order, so
    runs are deterministic; `seed` is accepted for interface uniformity
    but plays no role.  The exhaustion flag is set only when the whole
    symmetry-reduced tree was traversed (no limit or budget stop).

    When `checkpoint` names an existing nonempty file, the search resumes
    from the partial assignments listed there (one JSON object per line);
    on a budget stop the unexplored frontier is written back to it.
    """
    del seed  # traversal is deterministic by design
    if k < 1:
        raise ParameterError(f"need k >= 1, got k={k}")
    if 2 * k > m:
        raise ParameterError(f"infeasible: 2k = {2 * k} exceeds m = {m}")

    stack: list[tuple[tuple[int, ...], tuple[int, ...]]]
    ckpt = Path(checkpoint) if checkpoint is not None else None
    if ckpt is not None and ckpt.exists() and ckpt.read_text(encoding="utf-8").strip():
        stack = []
        for line in ckpt.read_text(encoding="utf-8").splitlines():
            if line.strip():
                obj = json.loads(line)
                stack.append((tuple(obj["S"]), tuple(obj["T"])))
        stack.reverse()  # file lists frontier top-first
    else:
        stack = [((0,), ())]

    found: dict[tuple[tuple[int, ...], tuple[int, ...]], CyclicGeneratorPair] = {}
    nodes = 0
    stopped = False
    t0 = time.monotonic()
    while stack:
        if node_budget is not None and nodes >= node_budget:
            stopped = True
            break
        if wall_budget_s is not None and time.monotonic() - t0 > wall_budget_s:
            stopped = True
            break
        state = stack.pop()
        nodes += 1
        s, t = state
        if len(t) == k:
            pair = CyclicGeneratorPair(m, s, t)
            canon = canonical_generator_form(pair)
            if canon not in found:
                found[canon] = CyclicGeneratorPair(m, canon[0], canon[1])
                if limit is not None and len(found) >= limit:
                    stopped = True
                    break
            continue
        stack.extend(reversed(_extensions(state, k, m)))

    frontier = list(reversed(stack))
    if ckpt is not None:
        lines = [json.dumps({"S": list(s), "T": list(t)}) for s, t in frontier]
        ckpt.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
    pairs = [found[key] for key in sorted(found)]
    return AntagonisticSearch(pairs, exhausted=not stopped, nodes=nodes, frontier=frontier)


def orbit_code(g: CyclicGeneratorPair) -> Code:
    """The m translates {S+u, T+u} as a code with claimed distance 2k-1.

    Refuses non-antagonistic input; antagonism guarantees the m words are
    distinct and pairwise at distance >= 2k-1.
    """
    report = is_antagonistic(g)
    if not report:
        raise ParameterError(
            f"generator pair is not antagonistic (condition {report.condition}: {report.detail})"
        )
    m, k = g.m, g.k
    words = frozenset(
        canonicalize(
            (((x + u) % m for x in g.s_set), ((x + u) % m for x in g.t_set)), m, k
        )
        for u in range(m)
    )
    if len(words) != m:
        raise ParameterError("orbit collapsed; generator pair is degenerate")
    return Code(n=m, k=k, s=2, q=0, d=2 * k - 1, words=words)


def multi_orbit_code(m: int, generators: Sequence[STuple | Iterable[Iterable[int]]], d: int) -> Code:
    """Union of the full cyclic orbits of several generator words.

    No antagonism is assumed: the minimum distance is established by full
    verification and stored on the returned code.  Two generators landing
    in one orbit is an error naming the collision.
    """
    from .search import verify_code

    if not generators:
        raise ParameterError("need at least one generator")
    gens: list[STuple] = []
    for gen in generators:
        if isinstance(gen, STuple):
            if gen.n != m:
                raise ParameterError(f"generator {gen._key()} not over [0, {m})")
            gens.append(gen)
        else:
            gens.append(canonicalize(gen, m))
    k = gens[0].k
    orbits: list[frozenset[STuple]] = []
    for gen in gens:
        orbit = frozenset(
            canonicalize([[(x + u) % m for x in part.elements] for part in gen.parts], m, k)
            for u in range(m)
        )
        orbits.append(orbit)
    words: set[STuple] = set()
    for i, orbit in enumerate(orbits):
        clash = words & orbit
        if clash:
            shared = sorted(clash)[0]
            raise ParameterError(
                f"generator {i} shares orbit word {shared._key()} with an earlier generator"
            )
        words |= orbit
    code = Code(n=m, k=k, s=2, q=0, d=d, words=frozenset(words))
    verify_code(code)
    return code
