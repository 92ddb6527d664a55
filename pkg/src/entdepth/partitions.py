"""Integer partitions, the refinement and dominance orders, and conjugation.

Partitions are stored canonically as weakly decreasing tuples of positive
integers.  ``refines(u, x)`` means ``x`` arises from ``u`` by adding up
groups of parts (partial summation); ``dominated_by(u, x)`` is the
majorization order on the same vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate
from typing import Iterable, Iterator

from .errors import LimitError

DEFAULT_LIMIT = 40
SET_PARTITION_LIMIT = 7


@dataclass(frozen=True, order=False)
class Partition:
    """Multiset of positive integers, kept as a weakly decreasing tuple."""

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int]):
        vals = tuple(sorted((int(p) for p in parts), reverse=True))
        if not vals:
            raise ValueError("a partition needs at least one part")
        if vals[-1] < 1:
            raise ValueError(f"parts must be positive, got {vals}")
        object.__setattr__(self, "parts", vals)

    @classmethod
    def top(cls, n: int) -> Partition:
        return cls((n,))

    @classmethod
    def bottom(cls, n: int) -> Partition:
        return cls((1,) * n)

    @classmethod
    def parse(cls, text: str) -> Partition:
        """Read ``"3+2+1"``, ``"3,2,1"`` or ``"{3,2,1}"``."""
        cleaned = text.strip().strip("{}[]()")
        tokens = cleaned.replace("+", ",").split(",")
        return cls(int(t) for t in tokens if t.strip())

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def height(self) -> int:
        return len(self.parts)

    @property
    def width(self) -> int:
        return self.parts[0]

    @property
    def rank(self) -> int:
        return self.parts[0] - len(self.parts)

    @property
    def toughness(self) -> int:
        return self.parts[-1]

    @property
    def s2(self) -> int:
        return sum(x * x for x in self.parts)

    @property
    def label(self) -> str:
        return "+".join(str(x) for x in self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __repr__(self) -> str:
        return "{" + ",".join(str(x) for x in self.parts) + "}"


def _check_n(n: int, limit: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise LimitError(f"n must be a positive integer, got {n!r}")
    if n > limit:
        raise LimitError(f"n={n} exceeds the configured limit {limit}")


def _partitions_desc(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_desc(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[Partition, ...]:
    return tuple(Partition(p) for p in _partitions_desc(n, n))


def enumerate_partitions(n: int, limit: int = DEFAULT_LIMIT) -> list[Partition]:
    """All partitions of ``n`` in reverse-lexicographic order (top first, bottom last)."""
    _check_n(n, limit)
    return list(_enumerate(n))


def partition_index(n: int) -> dict[Partition, int]:
    return {p: i for i, p in enumerate(_enumerate(n))}


def conjugate(xi: Partition) -> Partition:
    """Column lengths of the Young diagram."""
    return Partition(sum(1 for x in xi.parts if x > j) for j in range(xi.width))


def _same_n(u: Partition, x: Partition) -> None:
    if u.n != x.n:
        raise ValueError(f"partitions of different n: {u!r} ({u.n}) vs {x!r} ({x.n})")


def dominated_by(u: Partition, x: Partition) -> bool:
    """True iff every prefix sum of ``u`` is at most the matching prefix sum of ``x``."""
    _same_n(u, x)
    pu = list(accumulate(u.parts))
    px = list(accumulate(x.parts))
    for m in range(max(len(pu), len(px))):
        a = pu[m] if m < len(pu) else u.n
        b = px[m] if m < len(px) else x.n
        if a > b:
            return False
    return True


def refines(u: Partition, x: Partition) -> bool:
    """True iff ``x`` is obtained from ``u`` by summing groups of parts.

    Backtracking assignment of the parts of ``u`` (largest first) into bins
    sized by the parts of ``x``.  Bins with identical remaining capacity are
    interchangeable, so only one of them is tried, and states are memoised on
    the sorted capacity vector.
    """
    _same_n(u, x)
    if len(u) < len(x):
        return False
    if u == x:
        return True
    if not dominated_by(u, x):
        return False
    ys = u.parts

    @lru_cache(maxsize=None)
    def place(i: int, caps: tuple[int, ...]) -> bool:
        if i == len(ys):
            return True
        y = ys[i]
        tried = set()
        for b, c in enumerate(caps):
            if c < y or c in tried:
                continue
            tried.add(c)
            rest = caps[:b] + (c - y,) + caps[b + 1:]
            if place(i + 1, tuple(sorted(rest, reverse=True))):
                return True
        return False

    return place(0, x.parts)


def upper_refinement_covers(u: Partition) -> list[Partition]:
    """Partitions obtained from ``u`` by adding exactly two of its parts."""
    out = set()
    ps = u.parts
    for i in range(len(ps)):
        for j in range(i + 1, len(ps)):
            merged = ps[:i] + ps[i + 1:j] + ps[j + 1:] + (ps[i] + ps[j],)
            out.add(Partition(merged))
    return sorted(out, key=lambda p: p.parts, reverse=True)


def lower_refinement_covers(x: Partition) -> list[Partition]:
    """Partitions obtained from ``x`` by splitting one part in two."""
    out = set()
    ps = x.parts
    for i, part in enumerate(ps):
        rest = ps[:i] + ps[i + 1:]
        for a in range(1, part // 2 + 1):
            out.add(Partition(rest + (a, part - a)))
    return sorted(out, key=lambda p: p.parts, reverse=True)


def refinement_covers(n: int, limit: int = DEFAULT_LIMIT) -> list[tuple[Partition, Partition]]:
    """All covering pairs ``(finer, coarser)`` of the refinement order on P(n)."""
    parts = enumerate_partitions(n, limit)
    idx = partition_index(n)
    edges = [(u, x) for u in parts for x in upper_refinement_covers(u)]
    edges.sort(key=lambda e: (idx[e[0]], idx[e[1]]))
    return edges


def dominance_covers(xi: Partition) -> list[Partition]:
    """Upper covers of ``xi`` in the dominance lattice.

    A box moves from the end of row ``j`` to the end of row ``i < j``, allowed
    when ``j == i + 1`` or rows ``i..j`` share one length; emptied rows vanish.
    """
    y = xi.parts
    out = set()
    for i in range(len(y)):
        for j in range(i + 1, len(y)):
            if not (j == i + 1 or y[i] == y[j]):
                continue
            x = list(y)
            x[i] += 1
            x[j] -= 1
            if i > 0 and x[i] > x[i - 1]:
                continue
            if j + 1 < len(x) and x[j] < x[j + 1]:
                continue
            out.add(Partition(v for v in x if v > 0))
    return sorted(out, key=lambda p: p.parts, reverse=True)


def dominance_cover_pairs(n: int, limit: int = DEFAULT_LIMIT) -> list[tuple[Partition, Partition]]:
    """All covering pairs ``(dominated, dominating)`` of the dominance order on P(n)."""
    parts = enumerate_partitions(n, limit)
    idx = partition_index(n)
    edges = [(u, x) for u in parts for x in dominance_covers(u)]
    edges.sort(key=lambda e: (idx[e[0]], idx[e[1]]))
    return edges


def down_closure(members: Iterable[Partition]) -> frozenset[Partition]:
    """Smallest refinement down-set containing ``members``."""
    seen: set[Partition] = set()
    stack = list(members)
    while stack:
        p = stack.pop()
        if p in seen:
            continue
        seen.add(p)
        stack.extend(lower_refinement_covers(p))
    return frozenset(seen)


# set partitions: used only as an independent oracle for the integer orders

def set_partitions(n: int) -> Iterator[tuple[frozenset[int], ...]]:
    """All partitions of ``{1..n}`` via restricted growth strings (n <= 7)."""
    if n > SET_PARTITION_LIMIT:
        raise LimitError(f"set partitions are capped at n={SET_PARTITION_LIMIT}")

    def grow(prefix: list[int], top: int) -> Iterator[list[int]]:
        if len(prefix) == n:
            yield prefix
            return
        for b in range(top + 2):
            yield from grow(prefix + [b], max(top, b))

    for rgs in grow([0], 0):
        blocks: dict[int, set[int]] = {}
        for elem, b in enumerate(rgs, start=1):
            blocks.setdefault(b, set()).add(elem)
        yield tuple(frozenset(s) for s in blocks.values())


def set_partition_type(blocks: tuple[frozenset[int], ...]) -> Partition:
    return Partition(len(b) for b in blocks)


def set_refines(fine: tuple[frozenset[int], ...], coarse: tuple[frozenset[int], ...]) -> bool:
    return all(any(b <= c for c in coarse) for b in fine)
