"""Quantum Fisher information bounds attached to generator-function levels.

For a level ``k`` of a generator function ``f``, the largest Fisher
information reachable by a (k,f)-separable state under a collective operator
of spectral width n is ``b_f(k)``: the maximum of the squareability s2 over
the level's down-set.  Brute force over all partitions is the reference
computation here; the closed formulas known for a few families are checked
against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .classify import Ensemble, ensemble_avg_depth, pure_depth
from .errors import InconsistentInputError, LevelError, LimitError, RangeError
from .genfun import (
    AVG,
    INC,
    GenFun,
    Number,
    attained_level,
    compose,
    level_classes,
    lookup,
    on_bottom_side,
    value_range,
    values,
)
from .partitions import Partition, dominated_by, enumerate_partitions

BRUTEFORCE_LIMIT = 30
CLOSED_FAMILIES = ("prod", "prod_weak", "part", "str", "tgh", "sq")


def _check_limit(n: int, limit: int) -> None:
    if n > limit:
        raise LimitError(f"n={n} exceeds the brute-force cap {limit}")


def _ordered_levels(f: GenFun, n: int, limit: int) -> list[Number]:
    """Attained levels ordered from the bottom partition toward the top one."""
    rng = value_range(f, n, limit)
    return rng if f.direction == INC else rng[::-1]


def bound_bruteforce(f: GenFun, k: Number, n: int, limit: int = BRUTEFORCE_LIMIT) -> tuple[int, list[Partition]]:
    """Max of s2 over the level's down-set, with every maximizing partition."""
    _check_limit(n, limit)
    k = attained_level(f, n, k, limit)
    best = -1
    wit: list[Partition] = []
    for p, v in zip(enumerate_partitions(n, limit), values(f, n, limit)):
        if not on_bottom_side(f, v, k):
            continue
        s = p.s2
        if s > best:
            best, wit = s, [p]
        elif s == best:
            wit.append(p)
    return best, wit


def bound_closed(family: str, k: Number, n: int) -> int:
    """Closed-form bound for producibility, partitionability, stretchability,
    toughness and squareability levels."""
    if family not in CLOSED_FAMILIES:
        raise ValueError(f"unknown closed-form family {family!r}")
    if float(k) != int(k):
        raise RangeError(f"{family} level must be an integer, got {k!r}")
    k = int(k)
    if family in ("prod", "prod_weak", "part"):
        if not 1 <= k <= n:
            raise RangeError(f"{family} needs 1 <= k <= n, got k={k}, n={n}")
        if family == "prod":
            q = n // k
            return q * k * k + (n - q * k) ** 2
        if family == "prod_weak":
            return n * k
        return k * k - (2 * n + 1) * k + n * (n + 2)
    if family == "str":
        if not -(n - 1) <= k <= n - 1:
            raise RangeError(f"str needs -(n-1) <= k <= n-1, got k={k}, n={n}")
        s = n + k
        if s == 10 and n >= 8:
            return n + 24
        if s == 16 and n >= 12:
            return n + 60
        if s % 2 == 0:
            return s * s // 4 + (n - k) // 2 + 2
        return (s + 1) ** 2 // 4 + (n - k - 1) // 2
    if family == "tgh":
        if k == n:
            return n * n
        if 1 <= k <= n // 2:
            return n * n - 2 * n + 2
        raise RangeError(f"toughness levels are 1..{n // 2} and {n}, got {k}")
    if not n <= k <= n * n:
        raise RangeError(f"squareability levels lie in [n, n^2], got {k}")
    return k


def closed_family(f: GenFun) -> str | None:
    """Name of the closed formula matching ``f``, if any."""
    if f.family == "width":
        return "prod"
    if f.family == "height":
        return "part"
    if f.family == "rank":
        return "str"
    if f.family == "toughness":
        return "tgh"
    if f.family == "squareability" or (f.family == "power_sum_q" and f.param == 2):
        return "sq"
    return None


@dataclass
class BoundRow:
    k: Number
    b: int
    witnesses: list[Partition]


@dataclass
class BoundTable:
    """Rows ordered from the bottom level (f of the finest partition) to the top level."""

    f: GenFun
    n: int
    rows: list[BoundRow]

    def lookup(self, k: Number) -> int:
        for row in self.rows:
            if row.k == k or math.isclose(row.k, k, rel_tol=1e-9, abs_tol=1e-12):
                return row.b
        raise LevelError(f"level {k!r} not in bound table")

    def as_transform(self):
        return lookup((row.k, row.b) for row in self.rows)


def bound_curve(f: GenFun, n: int, limit: int = BRUTEFORCE_LIMIT) -> BoundTable:
    """b_f at every attained level, computed in one sweep from the bottom level up."""
    _check_limit(n, limit)
    levels = _ordered_levels(f, n, limit)
    by_level = level_classes(f, n, limit)
    rows = []
    best, wit = -1, []
    for k in levels:
        for p in by_level[k]:
            s = p.s2
            if s > best:
                best, wit = s, [p]
            elif s == best:
                wit.append(p)
        rows.append(BoundRow(k, best, sorted(wit, key=lambda p: p.parts, reverse=True)))
    return BoundTable(f, n, rows)


@dataclass
class UsefulnessReport:
    f: GenFun
    n: int
    levels: list[Number]
    bounds: list[int]
    strict: list[bool]
    step_count: int
    dominance_comparable: list[bool]

    def as_dict(self) -> dict:
        return {
            "f": self.f.spec,
            "n": self.n,
            "step_count": self.step_count,
            "rows": [
                {"k": k, "b": b, "strict": s, "witnesses_dominance_comparable": d}
                for k, b, s, d in zip(self.levels, self.bounds, self.strict, self.dominance_comparable)
            ],
        }


def _comparable_witnesses(lo: list[Partition], hi: list[Partition]) -> bool:
    for a in lo:
        for b in hi:
            if a != b and (dominated_by(a, b) or dominated_by(b, a)):
                return True
    return False


def usefulness_report(f: GenFun, n: int, limit: int = BRUTEFORCE_LIMIT) -> UsefulnessReport:
    """Whether b_f strictly increases from each level to the next one toward the top.

    The top level is strict by convention.  ``dominance_comparable`` records,
    per step, whether some witness at the level is strictly dominance-related
    to a distinct witness at the next level; for dominance-monotone f that
    forces the step to be strict.
    """
    table = bound_curve(f, n, limit)
    rows = table.rows
    strict, comp = [], []
    for i, row in enumerate(rows):
        if i + 1 == len(rows):
            strict.append(True)
            comp.append(False)
            continue
        nxt = rows[i + 1]
        strict.append(row.b < nxt.b)
        comp.append(_comparable_witnesses(row.witnesses, nxt.witnesses))
    bs = [r.b for r in rows]
    return UsefulnessReport(f, n, [r.k for r in rows], bs, strict, len(set(bs)), comp)


def bound_generator(f: GenFun, n: int, limit: int = BRUTEFORCE_LIMIT) -> GenFun:
    """The increasing generator function b_f o f on P(n)."""
    return compose(bound_curve(f, n, limit).as_transform(), f)


def induced_depth_bound(f: GenFun, finest: Partition, n: int | None = None, limit: int = BRUTEFORCE_LIMIT) -> int:
    """B_f = b_f(D_f) for a pure state with the given finest separating type."""
    n = finest.n if n is None else n
    if n != finest.n:
        raise ValueError(f"partition {finest!r} is not a partition of n={n}")
    return bound_curve(f, n, limit).lookup(pure_depth(f, finest))


def convex_bound(f: GenFun, E: Ensemble, limit: int = BRUTEFORCE_LIMIT) -> float:
    """Sum of p_j b_f(D_f(member j)), the decomposition-averaged Fisher bound."""
    table = bound_curve(f, E.n, limit)
    return math.fsum(p * table.lookup(pure_depth(f, xi)) for p, xi in E.members)


def criteria_exclude(f: GenFun, n: int, fq_measured: float, limit: int = BRUTEFORCE_LIMIT,
                     tol: float = 1e-9) -> list[Number]:
    """Levels whose bound lies below the measured Fisher information.

    A level counts as excluded only when ``b_f(k) < F_Q - tol*max(1, F_Q)``,
    so a measured value equal to an attainable bound up to rounding never
    excludes the class it actually belongs to.  Returned bottom level first.
    """
    if fq_measured < -tol:
        raise InconsistentInputError(f"Fisher information cannot be negative: {fq_measured}")
    if fq_measured > n * n * (1 + tol):
        raise InconsistentInputError(f"F_Q={fq_measured} exceeds the absolute maximum n^2={n * n}")
    cut = fq_measured - tol * max(1.0, abs(fq_measured))
    return [row.k for row in bound_curve(f, n, limit).rows if row.b < cut]


def ases(E: Ensemble) -> float:
    """Decomposition-averaged s2/n, an upper bound on the average entangled-subsystem size."""
    return ensemble_avg_depth(AVG, E)
