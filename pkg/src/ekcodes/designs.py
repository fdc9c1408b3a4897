"""Block designs and packings: construction, verification, and composition.

A (v, K, t)-packing covers every t-subset of the point set at most once;
a design covers each exactly once.  Packings with t = 2k-d+1 let codes on
the blocks combine into one code on [v]: words in different blocks share
at most t-1 = 2k-d points, which already forces distance >= d.
"""

from __future__ import annotations

import json
import math
import random
import warnings
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Mapping

from .core import Code, ParameterError, STuple, canonicalize

_VERIFY_T_SUBSET_CAP = 5_000_000
_GREEDY_BLOCK_CAP = 2_000_000


@dataclass(frozen=True)
class BlockDesign:
    """Blocks over the point set [0, v) with a claimed strength-t kind."""

    v: int
    t: int
    blocks: tuple[tuple[int, ...], ...]
    kind_claim: str | None = None

    def __post_init__(self) -> None:
        if self.v < 0 or self.t < 1:
            raise ParameterError(f"need v >= 0 and t >= 1, got v={self.v}, t={self.t}")
        blocks = []
        for block in self.blocks:
            b = tuple(sorted(int(x) for x in block))
            if len(set(b)) != len(b):
                raise ParameterError(f"block {block} repeats a point")
            if b and (b[0] < 0 or b[-1] >= self.v):
                raise ParameterError(f"block {block} leaves the point set [0, {self.v})")
            blocks.append(b)
        object.__setattr__(self, "blocks", tuple(sorted(blocks)))
        if self.kind_claim not in (None, "packing", "design"):
            raise ParameterError(f"unknown kind claim {self.kind_claim!r}")


@dataclass(frozen=True)
class DesignVerification:
    """Strongest valid label, with a violating t-subset as the certificate."""

    label: str  # "design" | "packing" | "invalid"
    violation: tuple[int, ...] | None = None
    covered: int = 0


def verify_design(design: BlockDesign) -> DesignVerification:
    """Exhaustively count t-subset coverage and label the block family.

    Refuses point sets whose C(v, t) exceeds the desk-scale cap rather
    than sampling.
    """
    v, t = design.v, design.t
    total = math.comb(v, t)
    if total > _VERIFY_T_SUBSET_CAP:
        raise ParameterError(
            f"C({v},{t}) = {total} t-subsets exceeds the verification cap {_VERIFY_T_SUBSET_CAP}"
        )
    seen: set[tuple[int, ...]] = set()
    for block in design.blocks:
        for sub in combinations(block, t):
            if sub in seen:
                return DesignVerification("invalid", violation=sub, covered=len(seen))
            seen.add(sub)
    label = "design" if len(seen) == total else "packing"
    return DesignVerification(label, covered=len(seen))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def affine_plane(p: int) -> BlockDesign:
    """The affine plane of prime order p as an S(p^2, p, 2).

    Points are (x, y) encoded as x*p + y; blocks are the p^2 lines
    y = a*x + b plus the p verticals.
    """
    if not _is_prime(p):
        raise ParameterError(f"order must be prime, got {p}")
    blocks = []
    for c in range(p):
        blocks.append(tuple(c * p + y for y in range(p)))
    for a in range(p):
        for b in range(p):
            blocks.append(tuple(sorted(x * p + (a * x + b) % p for x in range(p))))
    return BlockDesign(v=p * p, t=2, blocks=tuple(blocks), kind_claim="design")


def zero_sum_quadruples(r: int) -> BlockDesign:
    """All 4-subsets of GF(2)^r with zero XOR, an S(2^r, 4, 3)."""
    if r < 2:
        raise ParameterError(f"need r >= 2, got {r}")
    v = 1 << r
    blocks = []
    for a in range(v):
        for b in range(a + 1, v):
            for c in range(b + 1, v):
                d = a ^ b ^ c
                if d > c:
                    blocks.append((a, b, c, d))
    return BlockDesign(v=v, t=3, blocks=tuple(blocks), kind_claim="design")


def planar_difference_set(q: int) -> tuple[int, ...] | None:
    """Search for q+1 residues mod q^2+q+1 with all nonzero differences distinct.

    Backtracking over increasing residues; {0, 1} is fixed without loss
    of generality (any solution can be translated to contain a pair at
    difference 1).  Returns None when the full tree exhausts without a
    solution, which is the expected outcome for orders with no projective
    plane.
    """
    if q < 2:
        raise ParameterError(f"need q >= 2, got {q}")
    m = q * q + q + 1
    size = q + 1
    used = bytearray(m)
    chosen = [0, 1]
    used[1] = 1
    used[m - 1] = 1

    def extend(last: int) -> bool:
        if len(chosen) == size:
            return True
        for e in range(last + 1, m):
            marked = []
            ok = True
            for x in chosen:
                d1 = (e - x) % m
                d2 = (x - e) % m
                if used[d1] or used[d2]:
                    ok = False
                    break
                used[d1] = 1
                used[d2] = 1
                marked.append((d1, d2))
            if ok:
                chosen.append(e)
                if extend(e):
                    return True
                chosen.pop()
            for d1, d2 in marked:
                used[d1] = 0
                used[d2] = 0
        return False

    return tuple(chosen) if extend(1) else None


def develop_difference_set(base: tuple[int, ...] | list[int], m: int) -> BlockDesign:
    """All m translates of a residue set mod m, as strength-2 blocks."""
    pts = [int(x) % m for x in base]
    if len(set(pts)) != len(pts):
        raise ParameterError(f"base set {base} collides mod {m}")
    blocks = tuple(tuple(sorted((x + u) % m for x in pts)) for u in range(m))
    return BlockDesign(v=m, t=2, blocks=blocks, kind_claim="packing")


def greedy_packing(v: int, p: int, t: int, seed: int) -> BlockDesign:
    """Random-order greedy (v, p, t)-packing; deterministic given seed."""
    if not v >= p >= t >= 1:
        raise ParameterError(f"need v >= p >= t >= 1, got ({v},{p},{t})")
    if math.comb(v, p) > _GREEDY_BLOCK_CAP:
        raise ParameterError(f"C({v},{p}) exceeds the greedy candidate cap {_GREEDY_BLOCK_CAP}")
    rng = random.Random(seed)
    candidates = list(combinations(range(v), p))
    rng.shuffle(candidates)
    covered: set[tuple[int, ...]] = set()
    blocks = []
    for block in candidates:
        subs = list(combinations(block, t))
        if any(sub in covered for sub in subs):
            continue
        covered.update(subs)
        blocks.append(block)
    return BlockDesign(v=v, t=t, blocks=tuple(blocks), kind_claim="packing")


def compose_code(
    design: BlockDesign,
    bases: Mapping[int, Code] | Code,
    k: int,
    d: int,
) -> Code:
    """Embed a verified base code into every block of a t-packing.

    Requires t = 2k-d+1 and, for each block size used, a base code with
    that many points, the same k, and a *verified* minimum distance >= d.
    Blocks with no matching base code contribute nothing (a warning is
    emitted).  The embedding maps base point i to the block's i-th
    smallest point, so outputs are reproducible.
    """
    t = 2 * k - d + 1
    if design.t != t:
        raise ParameterError(f"packing strength t={design.t}, composition needs t={t}")
    verdict = verify_design(design)
    if verdict.label == "invalid":
        raise ParameterError(f"blocks cover t-subset {verdict.violation} more than once")
    if isinstance(bases, Code):
        bases = {bases.n: bases}
    for size, base in bases.items():
        if base.n != size:
            raise ParameterError(f"base code keyed {size} has n={base.n}")
        if base.k != k or base.s != 2 or base.q != 0:
            raise ParameterError(f"base code on {size} points does not match (k={k}, s=2, set world)")
        vmd = base.verified_min_distance
        if vmd is None:
            raise ParameterError(f"base code on {size} points is unverified; verify it first")
        if vmd < d:
            raise ParameterError(f"base code on {size} points has verified distance {vmd} < {d}")
    words: set[STuple] = set()
    for block in design.blocks:
        base = bases.get(len(block))
        if base is None:
            warnings.warn(
                f"no base code for block size {len(block)}; block skipped",
                stacklevel=2,
            )
            continue
        for word in base.words:
            mapped = canonicalize(
                [[block[e] for e in part.elements] for part in word.parts], design.v, k
            )
            if mapped in words:  # blocks share < 2k points, so this cannot happen
                raise ParameterError(f"duplicate embedded word {mapped._key()}")
            words.add(mapped)
    return Code(n=design.v, k=k, s=2, q=0, d=d, words=frozenset(words))


def design_to_json(design: BlockDesign) -> str:
    """Stable wire format: {"v":int,"t":int,"blocks":[[int,...],...]}."""
    payload = {
        "v": design.v,
        "t": design.t,
        "blocks": [list(b) for b in design.blocks],
    }
    return json.dumps(payload, separators=(",", ":"))


def design_from_json(text: str) -> BlockDesign:
    try:
        obj = json.loads(text)
        v = int(obj["v"])
        t = int(obj["t"])
        blocks = tuple(tuple(int(x) for x in b) for b in obj["blocks"])
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise ParameterError(f"malformed design file: {exc}") from exc
    return BlockDesign(v=v, t=t, blocks=blocks)


def save_design(design: BlockDesign, path: str | Path) -> None:
    Path(path).write_text(design_to_json(design), encoding="utf-8")


def load_design(path: str | Path) -> BlockDesign:
    return design_from_json(Path(path).read_text(encoding="utf-8"))
