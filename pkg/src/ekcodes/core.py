"""Canonical codeword types over a finite ground set, plus enumerators.

Ground sets are 0-based: elements live in [0, n).  Every word type is
immutable and normalized to one canonical representative on construction,
so structural equality, hashing, and byte-stable serialization hold
everywhere else in the package without further care.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from itertools import combinations, product
from pathlib import Path
from typing import Iterable, Iterator


class ParameterError(ValueError):
    """Parameters outside an operation's domain."""


class PartSizeError(ParameterError):
    """A part has the wrong number of distinct elements."""


class ElementRangeError(ParameterError):
    """An element falls outside the ground set [0, n)."""


class OverlapError(ParameterError):
    """Two parts of one word share an element."""


class DegenerateParametersWarning(UserWarning):
    """Parameters admit no words at all (s*k > n)."""


def _as_mask(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


@dataclass(frozen=True)
class KSubset:
    """A strictly increasing k-subset of the ground set [0, n)."""

    n: int
    elements: tuple[int, ...]
    mask: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ParameterError(f"ground set size must be nonnegative, got n={self.n}")
        elems = tuple(int(e) for e in self.elements)
        object.__setattr__(self, "elements", elems)
        for prev, cur in zip(elems, elems[1:]):
            if prev == cur:
                raise PartSizeError(f"duplicate element {cur} in part {elems}")
            if prev > cur:
                raise ParameterError(f"elements must be sorted ascending, got {elems}")
        if elems and (elems[0] < 0 or elems[-1] >= self.n):
            bad = elems[0] if elems[0] < 0 else elems[-1]
            raise ElementRangeError(f"element {bad} outside ground set [0, {self.n})")
        object.__setattr__(self, "mask", _as_mask(elems))

    @classmethod
    def of(cls, elements: Iterable[int], n: int) -> "KSubset":
        """Build from an unordered collection, sorting the elements."""
        return cls(n, tuple(sorted(int(e) for e in elements)))

    def isdisjoint(self, other: "KSubset") -> bool:
        return not (self.mask & other.mask)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, e: int) -> bool:
        return bool(self.mask >> e & 1) if 0 <= e < self.n else False


@dataclass(frozen=True, eq=False)
class STuple:
    """An unordered tuple of pairwise disjoint k-subsets, stored sorted.

    Parts are sorted lexicographically; since they are disjoint this is
    the same as sorting by smallest element.  Subclasses compare equal to
    plain STuples with the same parts, so the pair view and the general
    view of one word are interchangeable.
    """

    parts: tuple[KSubset, ...]

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        if not parts:
            raise ParameterError("a word needs at least one part")
        n, k = parts[0].n, len(parts[0])
        if k < 1:
            raise PartSizeError("parts must have k >= 1 elements")
        union = 0
        for p in parts:
            if p.n != n:
                raise ParameterError(f"mixed ground sets: {p.n} != {n}")
            if len(p) != k:
                raise PartSizeError(f"part {p.elements} has size {len(p)}, expected {k}")
            if union & p.mask:
                shared = union & p.mask
                raise OverlapError(
                    f"parts overlap on element {shared.bit_length() - 1}"
                )
            union |= p.mask
        object.__setattr__(self, "parts", tuple(sorted(parts, key=lambda p: p.elements)))

    @property
    def n(self) -> int:
        return self.parts[0].n

    @property
    def k(self) -> int:
        return len(self.parts[0])

    @property
    def s(self) -> int:
        return len(self.parts)

    def masks(self) -> tuple[int, ...]:
        return tuple(p.mask for p in self.parts)

    def as_lists(self) -> list[list[int]]:
        return [list(p.elements) for p in self.parts]

    def as_pair(self) -> "DisjointPair":
        """View a 2-part word as a DisjointPair (round-trips freely)."""
        return DisjointPair(self.parts)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, STuple) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __lt__(self, other: "STuple") -> bool:
        return self._key() < other._key()

    def _key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(p.elements for p in self.parts)


@dataclass(frozen=True, eq=False)
class DisjointPair(STuple):
    """A word with exactly two parts; the s=2 special case of STuple."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if len(self.parts) != 2:
            raise ParameterError(f"a DisjointPair has 2 parts, got {len(self.parts)}")

    @classmethod
    def from_sets(cls, a: Iterable[int], b: Iterable[int], n: int) -> "DisjointPair":
        return cls((KSubset.of(a, n), KSubset.of(b, n)))

    @property
    def a(self) -> KSubset:
        return self.parts[0]

    @property
    def b(self) -> KSubset:
        return self.parts[1]


def canonicalize(raw: Iterable[Iterable[int]], n: int, k: int | None = None) -> STuple:
    """Build the canonical STuple from raw part collections.

    Elements are sorted within parts and parts are sorted among
    themselves, so the result is independent of any input ordering.
    Overlaps, out-of-range elements, and wrong part sizes raise
    OverlapError, ElementRangeError, and PartSizeError respectively.
    """
    parts = [KSubset.of(p, n) for p in raw]
    if k is not None:
        for p in parts:
            if len(p) != k:
                raise PartSizeError(f"part {p.elements} has size {len(p)}, expected {k}")
    return STuple(tuple(parts))


def word_count(n: int, k: int, s: int = 2) -> int:
    """Number of words: (1/s!) * prod_i C(n - i*k, k)."""
    if k < 1 or s < 1:
        raise ParameterError(f"need k >= 1 and s >= 1, got k={k}, s={s}")
    if s * k > n:
        return 0
    total = math.prod(math.comb(n - i * k, k) for i in range(s))
    return total // math.factorial(s)


def enumerate_words(n: int, k: int, s: int = 2) -> Iterator[STuple]:
    """Yield every canonical word on [0, n) exactly once, in lex order.

    Degenerate parameters (s*k > n) yield an empty stream and emit a
    DegenerateParametersWarning.
    """
    if k < 1 or s < 1:
        raise ParameterError(f"need k >= 1 and s >= 1, got k={k}, s={s}")
    if s * k > n:
        warnings.warn(
            f"no words exist for n={n}, k={k}, s={s} (s*k > n)",
            DegenerateParametersWarning,
            stacklevel=2,
        )
        return

    def extend(chosen: list[KSubset], remaining: list[int], low: int) -> Iterator[STuple]:
        if len(chosen) == s:
            yield STuple(tuple(chosen))
            return
        for combo in combinations(remaining, k):
            # parts are ordered by their minima, so anchor on the first element
            if combo[0] < low:
                continue
            part = KSubset(n, combo)
            rest = [e for e in remaining if e not in combo]
            yield from extend(chosen + [part], rest, combo[0] + 1)

    yield from extend([], list(range(n)), 0)


@dataclass(frozen=True)
class QaryWord:
    """A length-n word over {0, ..., q-1}; its weight is its support size."""

    n: int
    q: int
    symbols: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ParameterError(f"alphabet needs q >= 2, got q={self.q}")
        syms = tuple(int(x) for x in self.symbols)
        object.__setattr__(self, "symbols", syms)
        if len(syms) != self.n:
            raise ParameterError(f"expected {self.n} symbols, got {len(syms)}")
        for x in syms:
            if not 0 <= x < self.q:
                raise ElementRangeError(f"symbol {x} outside alphabet [0, {self.q})")

    @property
    def weight(self) -> int:
        return sum(1 for x in self.symbols if x)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.symbols) if x)


@dataclass(frozen=True)
class QaryPairWord:
    """An unordered pair of q-ary words with disjoint supports."""

    u: QaryWord
    v: QaryWord

    def __post_init__(self) -> None:
        u, v = self.u, self.v
        if (u.n, u.q) != (v.n, v.q):
            raise ParameterError("pair members must share (n, q)")
        if u.weight != v.weight:
            raise ParameterError("pair members must have equal weight")
        if any(a and b for a, b in zip(u.symbols, v.symbols)):
            raise OverlapError("supports of the two words overlap")
        if v.symbols < u.symbols:
            object.__setattr__(self, "u", v)
            object.__setattr__(self, "v", u)

    @property
    def n(self) -> int:
        return self.u.n

    @property
    def q(self) -> int:
        return self.u.q


def qary_word_count(n: int, k: int, q: int) -> int:
    """Number of weight-k q-ary words: C(n, k) * (q-1)^k."""
    if k < 0 or q < 2:
        raise ParameterError(f"need k >= 0 and q >= 2, got k={k}, q={q}")
    return math.comb(n, k) * (q - 1) ** k


def enumerate_qary_words(n: int, k: int, q: int) -> Iterator[QaryWord]:
    """Yield every weight-k q-ary word of length n, in lex order of (support, values)."""
    if k < 0 or q < 2:
        raise ParameterError(f"need k >= 0 and q >= 2, got k={k}, q={q}")
    nonzero = range(1, q)
    for support in combinations(range(n), k):
        for values in product(nonzero, repeat=k):
            word = [0] * n
            for pos, val in zip(support, values):
                word[pos] = val
            yield QaryWord(n, q, tuple(word))


Word = STuple | QaryWord | QaryPairWord

# q == 0 marks set-world codes; q >= 2 marks q-ary codes (s=1 single words,
# s=2 disjoint-support pairs).
@dataclass
class Code:
    """A set of canonical codewords with shared parameters and a claimed distance."""

    n: int
    k: int
    s: int
    q: int
    d: int
    words: frozenset
    verified_min_distance: int | float | None = None

    def __post_init__(self) -> None:
        if self.k < 1 or self.s < 1 or self.d < 1:
            raise ParameterError(
                f"need k, s, d >= 1, got k={self.k}, s={self.s}, d={self.d}"
            )
        if self.q == 0:
            for w in self.words:
                if not isinstance(w, STuple) or (w.n, w.k, w.s) != (self.n, self.k, self.s):
                    raise ParameterError(f"word {w!r} does not match code parameters")
        elif self.q >= 2:
            if self.s == 1:
                for w in self.words:
                    if not isinstance(w, QaryWord) or (w.n, w.q) != (self.n, self.q):
                        raise ParameterError(f"word {w!r} does not match code parameters")
                    if w.weight != self.k:
                        raise ParameterError(f"word {w!r} has weight {w.weight}, expected {self.k}")
            elif self.s == 2:
                for w in self.words:
                    if not isinstance(w, QaryPairWord) or (w.n, w.q) != (self.n, self.q):
                        raise ParameterError(f"word {w!r} does not match code parameters")
                    if w.u.weight != self.k:
                        raise ParameterError(f"word {w!r} has weight {w.u.weight}, expected {self.k}")
            else:
                raise ParameterError(f"q-ary codes support s in {{1, 2}}, got s={self.s}")
        else:
            raise ParameterError(f"q must be 0 (set world) or >= 2, got q={self.q}")
        if not isinstance(self.words, frozenset):
            self.words = frozenset(self.words)

    def __len__(self) -> int:
        return len(self.words)


def _word_rows(code: Code) -> list[list[list[int]]]:
    if code.q == 0:
        rows = [w.as_lists() for w in code.words]
    elif code.s == 1:
        rows = [[list(w.symbols)] for w in code.words]
    else:
        rows = [[list(w.u.symbols), list(w.v.symbols)] for w in code.words]
    rows.sort()
    return rows


def code_to_json(code: Code) -> str:
    """Serialize to the stable wire format (fixed key order, no whitespace)."""
    vmd = code.verified_min_distance
    payload = {
        "n": code.n,
        "k": code.k,
        "s": code.s,
        "q": code.q,
        "d": code.d,
        "words": _word_rows(code),
        "verified_min_distance": vmd if isinstance(vmd, int) else None,
    }
    return json.dumps(payload, separators=(",", ":"))


def code_from_json(text: str) -> Code:
    """Parse the wire format back into a Code, re-canonicalizing every word."""
    try:
        obj = json.loads(text)
        n, k, s, q, d = (int(obj[key]) for key in ("n", "k", "s", "q", "d"))
        raw_words = obj["words"]
        vmd = obj.get("verified_min_distance")
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise ParameterError(f"malformed code file: {exc}") from exc
    words: set = set()
    for row in raw_words:
        if q == 0:
            words.add(canonicalize(row, n, k))
        elif s == 1:
            words.add(QaryWord(n, q, tuple(row[0])))
        else:
            words.add(QaryPairWord(QaryWord(n, q, tuple(row[0])), QaryWord(n, q, tuple(row[1]))))
    if len(words) != len(raw_words):
        raise ParameterError("code file contains duplicate words")
    return Code(n, k, s, q, d, frozenset(words), int(vmd) if vmd is not None else None)


def save_code(code: Code, path: str | Path) -> None:
    Path(path).write_text(code_to_json(code), encoding="utf-8")


def load_code(path: str | Path) -> Code:
    return code_from_json(Path(path).read_text(encoding="utf-8"))
