"""Generator functions on integer partitions.

A generator function is a real function on P(n) that is monotone for the
refinement order, either increasing or decreasing.  Its sub-level sets (for
increasing functions) or super-level sets (for decreasing ones) are down-sets
and label a one-parameter family of separability properties.

The catalog is closed: every family knows its proven monotonicity range,
direction, and whether it is also monotone for the dominance order.  Range
checks can be switched off (``checked=False``) only to reproduce documented
violations outside the proven ranges.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Union

from .errors import LevelError, NoNeighborError, RangeError
from .partitions import (
    DEFAULT_LIMIT,
    Partition,
    dominance_cover_pairs,
    enumerate_partitions,
    lower_refinement_covers,
    refinement_covers,
)

INC = "increasing"
DEC = "decreasing"

REL_TOL = 1e-9
ABS_TOL = 1e-12

Number = Union[int, float]

FAMILIES = (
    "height", "width", "rank", "toughness", "w_m", "t_m",
    "power_sum_q", "q_sum", "q_mean", "tsallis_q", "renyi_q", "shannon", "p_q",
    "dim_b", "dimp_b", "dof_b", "dofp_b", "squareability", "avg", "composed",
)
_Q_FAMILIES = {"power_sum_q", "q_sum", "q_mean", "tsallis_q", "renyi_q", "p_q"}
_B_FAMILIES = {"dim_b", "dimp_b", "dof_b", "dofp_b"}
_M_FAMILIES = {"w_m", "t_m"}
_PLAIN = {"height", "width", "rank", "toughness", "shannon", "squareability", "avg"}


def close(a: Number, b: Number) -> bool:
    if a == b:
        return True
    return math.isclose(a, b, rel_tol=REL_TOL, abs_tol=ABS_TOL)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _norm_param(p):
    if p is None:
        return None
    if isinstance(p, bool):
        raise RangeError("boolean is not a valid parameter")
    if _is_int(p):
        return p
    p = float(p)
    if math.isnan(p):
        raise RangeError("parameter is NaN")
    if math.isfinite(p) and p.is_integer():
        return int(p)
    return p


# ---------------------------------------------------------------------------
# monotone transforms


_TRANSFORM_KINDS = ("affine", "ln", "exp", "power", "reciprocal", "negate", "floor", "neglog", "lookup")


@dataclass(frozen=True)
class MonotoneTransform:
    """A monotone map g: R -> R from a closed list of kinds.

    ``convexity`` is one of ``"affine"``, ``"convex"``, ``"concave"`` or
    ``"none"``; it decides which inequality survives averaging over an
    ensemble.
    """

    kind: str
    params: tuple[float, ...] = ()
    table: tuple[tuple[Number, Number], ...] = ()

    def __post_init__(self):
        if self.kind not in _TRANSFORM_KINDS:
            raise ValueError(f"unknown transform {self.kind!r}")
        if self.kind == "affine":
            a, _ = self.params
            if a == 0:
                raise ValueError("affine transform with zero slope is not monotone")
        elif self.kind == "power":
            (p,) = self.params
            if p == 0:
                raise ValueError("power 0 is constant, not strictly monotone")
        elif self.kind == "floor":
            (step,) = self.params
            if step <= 0:
                raise ValueError("floor grid step must be positive")
        elif self.kind == "neglog":
            (c,) = self.params
            if c <= 0:
                raise ValueError("neglog scale must be positive")
        elif self.kind == "lookup":
            vals = [v for _, v in self.table]
            up = all(a <= b for a, b in zip(vals, vals[1:]))
            down = all(a >= b for a, b in zip(vals, vals[1:]))
            if not (up or down):
                raise ValueError("lookup table values must be monotone in the key")

    @property
    def direction(self) -> str:
        if self.kind == "affine":
            return INC if self.params[0] > 0 else DEC
        if self.kind == "power":
            return INC if self.params[0] > 0 else DEC
        if self.kind in ("reciprocal", "negate", "neglog"):
            return DEC
        if self.kind == "lookup":
            vals = [v for _, v in self.table]
            return DEC if vals and vals[0] > vals[-1] else INC
        return INC

    @property
    def convexity(self) -> str:
        k = self.kind
        if k in ("affine", "negate"):
            return "affine"
        if k == "ln":
            return "concave"
        if k in ("exp", "reciprocal", "neglog"):
            return "convex"
        if k == "power":
            p = self.params[0]
            if p == 1:
                return "affine"
            return "concave" if 0 < p < 1 else "convex"
        return "none"

    @property
    def strict(self) -> bool:
        return self.kind not in ("floor", "lookup")

    @property
    def preserves_integers(self) -> bool:
        if self.kind == "negate":
            return True
        if self.kind == "affine":
            return all(float(v).is_integer() for v in self.params)
        if self.kind == "floor":
            return float(self.params[0]).is_integer()
        if self.kind == "lookup":
            return all(_is_int(v) for _, v in self.table)
        return False

    def __call__(self, u: Number) -> Number:
        k = self.kind
        if k == "affine":
            a, b = self.params
            return a * u + b
        if k == "ln":
            return math.log(u)
        if k == "exp":
            return math.exp(u)
        if k == "power":
            return u ** self.params[0]
        if k == "reciprocal":
            return 1.0 / u
        if k == "negate":
            return -u
        if k == "floor":
            step = self.params[0]
            return type(u)(step * math.floor(u / step)) if _is_int(u) and _is_int(step) else step * math.floor(u / step)
        if k == "neglog":
            return -math.log(u / self.params[0])
        for key, val in self.table:
            if close(key, u):
                return val
        raise LevelError(f"value {u!r} not in lookup table")

    @property
    def spec(self) -> str:
        k = self.kind
        if k == "affine":
            return f"affine({_fmt(self.params[0])},{_fmt(self.params[1])})"
        if k == "power":
            return f"pow({_fmt(self.params[0])})"
        if k == "floor":
            return f"floor({_fmt(self.params[0])})"
        if k == "neglog":
            return f"neglog({_fmt(self.params[0])})"
        return {"ln": "ln", "exp": "exp", "reciprocal": "recip", "negate": "neg", "lookup": "lookup"}[k]


def affine(a: float, b: float = 0.0) -> MonotoneTransform:
    return MonotoneTransform("affine", (a, b))


def lookup(pairs: Iterable[tuple[Number, Number]]) -> MonotoneTransform:
    return MonotoneTransform("lookup", table=tuple(sorted(pairs)))


LN = MonotoneTransform("ln")
EXP = MonotoneTransform("exp")
RECIPROCAL = MonotoneTransform("reciprocal")
NEGATE = MonotoneTransform("negate")


def _fmt(x) -> str:
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if isinstance(x, float) and x.is_integer():
        return str(int(x))
    return repr(x) if isinstance(x, float) else str(x)


# ---------------------------------------------------------------------------
# generator-function descriptors


@dataclass(frozen=True)
class GenFun:
    family: str
    param: Optional[Number] = None
    checked: bool = True
    inner: Optional["GenFun"] = field(default=None, repr=False)
    transform: Optional[MonotoneTransform] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown generator family {self.family!r}")
        object.__setattr__(self, "param", _norm_param(self.param))
        if self.family == "composed":
            if self.inner is None or self.transform is None:
                raise ValueError("composed generator needs inner function and transform")
            return
        p = self.param
        if self.family in _PLAIN or self.family in ("height",):
            if p is not None:
                raise RangeError(f"{self.family} takes no parameter")
            return
        if p is None:
            raise RangeError(f"{self.family} needs a parameter")
        if self.family in _M_FAMILIES:
            if not _is_int(p) or p < 1:
                raise RangeError(f"{self.family} needs an integer m >= 1, got {p!r}")
            return
        if self.family in _Q_FAMILIES:
            self._check_q(p)
        else:
            self._check_b(p)

    def _check_q(self, q):
        fam = self.family
        if fam == "power_sum_q" and q == math.inf:
            raise RangeError("s_q diverges for q -> +inf")
        if fam == "q_sum" and q == 0:
            raise RangeError("N_q has no limit at q = 0")
        if fam == "tsallis_q" and q == -math.inf:
            raise RangeError("T_q diverges for q -> -inf")
        if fam == "q_mean" and self.checked and q < 1:
            raise RangeError(f"M_q is a generator function only for q >= 1, got q={q!r}")

    def _check_b(self, b):
        fam = self.family
        if b <= 0:
            raise RangeError(f"{fam} needs b > 0, got {b!r}")
        if fam in ("dof_b", "dofp_b") and b == 1:
            raise RangeError(f"{fam} is undefined for b = 1 (logarithm base)")
        if not self.checked:
            return
        if fam == "dim_b" and 1 < b < 2:
            raise RangeError(f"Dim_b is monotone only for b >= 2 or 0 < b <= 1, got {b!r}")
        if fam == "dof_b" and 1 < b < 2:
            raise RangeError(f"DoF_b is monotone only for b >= 2 or 0 < b < 1, got {b!r}")
        if fam == "dofp_b" and b <= 1:
            raise RangeError(f"DoF'_b requires b > 1, got {b!r}")

    @property
    def direction(self) -> str:
        fam, p = self.family, self.param
        if fam == "composed":
            d = self.inner.direction
            if self.transform.direction == DEC:
                return INC if d == DEC else DEC
            return d
        if fam == "height":
            return DEC
        if fam == "power_sum_q":
            return INC if p >= 1 else DEC
        if fam == "q_sum":
            return DEC if 0 < p < 1 else INC
        if fam in ("tsallis_q", "renyi_q", "shannon", "p_q"):
            return DEC
        if fam == "dim_b":
            return DEC if p <= 1 else INC
        return INC

    @property
    def dominance_monotone(self) -> bool:
        fam, p = self.family, self.param
        if fam == "composed":
            return self.inner.dominance_monotone
        if fam in ("toughness", "t_m"):
            return False
        if fam == "power_sum_q":
            return p >= 0
        if fam == "q_sum":
            return p > 0
        if fam == "q_mean":
            return p >= 1
        if fam in ("tsallis_q", "renyi_q", "p_q"):
            return p >= 0
        if fam in ("dim_b", "dof_b"):
            return p >= 2
        if fam in ("dimp_b", "dofp_b"):
            return True
        return True

    @property
    def exact_integer(self) -> bool:
        fam, p = self.family, self.param
        if fam == "composed":
            return self.inner.exact_integer and self.transform.preserves_integers
        if fam in ("height", "width", "rank", "toughness", "w_m", "t_m", "squareability"):
            return True
        if fam == "power_sum_q":
            return _is_int(p) and p >= 0
        if fam in ("dim_b", "dimp_b"):
            return _is_int(p)
        return False

    @property
    def spec(self) -> str:
        """Textual form accepted by :func:`parse_genfun`."""
        if self.family == "composed":
            return f"compose:{self.transform.spec}:{self.inner.spec}"
        name = _SPEC_NAMES[self.family]
        if self.param is None:
            return name
        key = "m" if self.family in _M_FAMILIES else "q" if self.family in _Q_FAMILIES else "b"
        return f"{name}:{key}={_fmt(self.param)}"

    def __call__(self, xi: Partition) -> Number:
        return evaluate(self, xi)


def genfun(family: str, param: Optional[Number] = None, *, checked: bool = True) -> GenFun:
    return GenFun(family, param, checked)


def compose(g: MonotoneTransform, f: GenFun) -> GenFun:
    """The generator function ``g o f``; its direction flips when ``g`` decreases."""
    if not isinstance(g, MonotoneTransform):
        raise TypeError("compose needs a MonotoneTransform; arbitrary callables are not monotone-checked")
    return GenFun("composed", None, f.checked, inner=f, transform=g)


HEIGHT = GenFun("height")
WIDTH = GenFun("width")
RANK = GenFun("rank")
TOUGHNESS = GenFun("toughness")
SQUAREABILITY = GenFun("squareability")
SHANNON = GenFun("shannon")
AVG = GenFun("avg")


# ---------------------------------------------------------------------------
# evaluation


def _lse(q: float, parts: tuple[int, ...]) -> float:
    """log(sum x**q), computed stably."""
    logs = [q * math.log(x) for x in parts]
    m = max(logs)
    return m + math.log(math.fsum(math.exp(v - m) for v in logs))


def _shannon(parts: tuple[int, ...], n: int) -> float:
    return math.log(n) - math.fsum(x * math.log(x) for x in parts) / n


def _power_sum(parts: tuple[int, ...], q) -> Number:
    if q == -math.inf:
        return sum(1 for x in parts if x == 1)
    if _is_int(q) and q >= 0:
        return sum(x ** q for x in parts)
    return math.fsum(float(x) ** q for x in parts)


def evaluate(f: GenFun, xi: Partition) -> Number:
    """Value of ``f`` on ``xi``.

    Exact families return ``int``; the rest return ``float``.  Parameter
    values 0, 1 and +-inf dispatch to their closed limit forms.
    """
    fam, q = f.family, f.param
    ps = xi.parts
    n = xi.n
    h = len(ps)
    if fam == "composed":
        return f.transform(evaluate(f.inner, xi))
    if fam == "height":
        return h
    if fam == "width":
        return ps[0]
    if fam == "rank":
        return ps[0] - h
    if fam == "toughness":
        return ps[-1]
    if fam == "w_m":
        return sum(ps[:q])
    if fam == "t_m":
        return sum(ps[-q:])
    if fam == "squareability":
        return sum(x * x for x in ps)
    if fam == "avg":
        return sum(x * x for x in ps) / n
    if fam == "shannon":
        return _shannon(ps, n)
    if fam == "power_sum_q":
        return _power_sum(ps, q)
    if fam == "q_sum":
        if q == math.inf:
            return float(ps[0])
        if q == -math.inf:
            return float(ps[-1])
        if q == 1:
            return float(n)
        return math.exp(_lse(q, ps) / q)
    if fam == "q_mean":
        if q == math.inf:
            return float(ps[0])
        if q == -math.inf:
            return float(ps[-1])
        if q == 0:
            return math.exp(math.fsum(math.log(x) for x in ps) / h)
        if q == 1:
            return n / h
        return math.exp((_lse(q, ps) - math.log(h)) / q)
    if fam == "tsallis_q":
        if q == 1:
            return _shannon(ps, n)
        if q == math.inf:
            return 0.0
        if q == 0:
            return float(h - 1)
        return math.expm1(_lse(q, ps) - q * math.log(n)) / (1 - q)
    if fam in ("renyi_q", "p_q"):
        if q == 1:
            r = _shannon(ps, n)
        elif q == math.inf:
            r = math.log(n) - math.log(ps[0])
        elif q == -math.inf:
            r = math.log(n) - math.log(ps[-1])
        elif q == 0:
            r = math.log(h)
        else:
            r = (_lse(q, ps) - q * math.log(n)) / (1 - q)
        if fam == "renyi_q":
            return r
        if q == math.inf:
            return n / ps[0]
        if q == -math.inf:
            return n / ps[-1]
        if q == 0:
            return float(h)
        return math.exp(r)
    # b families
    b = q
    if _is_int(b):
        dim = sum(b ** x for x in ps)
    else:
        dim = math.fsum(b ** x for x in ps)
    if fam == "dim_b":
        return dim
    if fam == "dimp_b":
        return dim - h + 1
    if fam == "dof_b":
        return math.log(dim) / math.log(b)
    return math.log(dim - h + 1) / math.log(b)


@lru_cache(maxsize=512)
def _values(f: GenFun, n: int) -> tuple[Number, ...]:
    return tuple(evaluate(f, p) for p in enumerate_partitions(n, max(n, DEFAULT_LIMIT)))


def values(f: GenFun, n: int, limit: int = DEFAULT_LIMIT) -> list[Number]:
    """``f`` on every partition of ``n``, aligned with :func:`enumerate_partitions`."""
    enumerate_partitions(n, limit)
    return list(_values(f, n))


def dedupe_sorted(vals: Iterable[Number]) -> list[Number]:
    out: list[Number] = []
    for v in sorted(vals):
        if out and close(out[-1], v):
            continue
        out.append(v)
    return out


def value_range(f: GenFun, n: int, limit: int = DEFAULT_LIMIT) -> list[Number]:
    """Distinct attained values of ``f`` over P(n), ascending."""
    return dedupe_sorted(values(f, n, limit))


def attained_level(f: GenFun, n: int, k: Number, limit: int = DEFAULT_LIMIT) -> Number:
    """Return the attained value matching ``k`` (within tolerance) or raise LevelError."""
    for v in value_range(f, n, limit):
        if close(v, k):
            return v
    raise LevelError(f"level {k!r} is not attained by {f.spec} on P({n})")


def on_bottom_side(f: GenFun, v: Number, k: Number) -> bool:
    """True when ``v`` lies at or beyond level ``k`` toward the bottom partition."""
    if close(v, k):
        return True
    return v < k if f.direction == INC else v > k


# ---------------------------------------------------------------------------
# down-sets


@dataclass(frozen=True)
class DownSet:
    """A nonempty set of partitions closed downward under refinement."""

    members: frozenset[Partition]

    def __post_init__(self):
        if not self.members:
            raise ValueError("a down-set must be nonempty")
        object.__setattr__(self, "members", frozenset(self.members))
        ns = {p.n for p in self.members}
        if len(ns) != 1:
            raise ValueError(f"down-set mixes partitions of different n: {sorted(ns)}")
        for p in self.members:
            for lower in lower_refinement_covers(p):
                if lower not in self.members:
                    raise ValueError(f"not a down-set: {p!r} present but {lower!r} missing")

    @property
    def n(self) -> int:
        return next(iter(self.members)).n

    def __contains__(self, p: Partition) -> bool:
        return p in self.members

    def __len__(self) -> int:
        return len(self.members)

    def sorted(self) -> list[Partition]:
        return sorted(self.members, key=lambda p: p.parts, reverse=True)


def extend_to_downset(f: GenFun, ds: DownSet | Iterable[Partition]) -> Number:
    """Max of ``f`` over the set for increasing ``f``, min for decreasing."""
    members = ds.members if isinstance(ds, DownSet) else list(ds)
    if not members:
        raise ValueError("cannot extend a generator function to an empty set")
    vals = [evaluate(f, p) for p in members]
    return max(vals) if f.direction == INC else min(vals)


def sublevel_downset(f: GenFun, k: Number, n: int, limit: int = DEFAULT_LIMIT) -> DownSet:
    """Partitions whose ``f`` value is at or on the bottom side of level ``k``."""
    k = attained_level(f, n, k, limit)
    parts = enumerate_partitions(n, limit)
    vals = _values(f, n)
    return DownSet(frozenset(p for p, v in zip(parts, vals) if on_bottom_side(f, v, k)))


def neighbor_level(f: GenFun, n: int, k: Number, limit: int = DEFAULT_LIMIT) -> Number:
    """The attained level adjacent to ``k`` on the bottom side."""
    k = attained_level(f, n, k, limit)
    rng = value_range(f, n, limit)
    i = next(i for i, v in enumerate(rng) if v == k)
    if f.direction == INC:
        if i == 0:
            raise NoNeighborError(f"{k!r} is the bottom level of {f.spec}")
        return rng[i - 1]
    if i == len(rng) - 1:
        raise NoNeighborError(f"{k!r} is the bottom level of {f.spec}")
    return rng[i + 1]


def level_of_each(f: GenFun, n: int, limit: int = DEFAULT_LIMIT) -> list[Number]:
    """The attained level (as stored in :func:`value_range`) of every partition."""
    rng = value_range(f, n, limit)
    out = []
    for v in values(f, n, limit):
        i = bisect.bisect_left(rng, v)
        cands = [rng[j] for j in (i - 1, i) if 0 <= j < len(rng)]
        out.append(next(k for k in cands if close(k, v)))
    return out


def level_classes(f: GenFun, n: int, limit: int = DEFAULT_LIMIT) -> dict[Number, list[Partition]]:
    """Level sets ``{xi : f(xi) = k}`` keyed by attained level."""
    out: dict[Number, list[Partition]] = {k: [] for k in value_range(f, n, limit)}
    for p, k in zip(enumerate_partitions(n, limit), level_of_each(f, n, limit)):
        out[k].append(p)
    return out


# ---------------------------------------------------------------------------
# monotonicity verification


@dataclass
class MonotonicityReport:
    spec: str
    n: int
    order: str
    ok: bool
    checked_edges: int
    violations: list[tuple[Partition, Partition, Number, Number]]

    def as_dict(self) -> dict:
        return {
            "f": self.spec,
            "n": self.n,
            "order": self.order,
            "ok": self.ok,
            "checked_edges": self.checked_edges,
            "violations": [
                {"lower": list(u.parts), "upper": list(x.parts), "f_lower": a, "f_upper": b}
                for u, x, a, b in self.violations
            ],
        }


def _violates(direction: str, a: Number, b: Number) -> bool:
    if close(a, b):
        return False
    return a > b if direction == INC else a < b


def _verify(f: GenFun, n: int, pairs, order: str) -> MonotonicityReport:
    bad = []
    for u, x in pairs:
        a, b = evaluate(f, u), evaluate(f, x)
        if _violates(f.direction, a, b):
            bad.append((u, x, a, b))
    return MonotonicityReport(f.spec, n, order, not bad, len(pairs), bad)


def verify_refinement_monotone(f: GenFun, n: int, limit: int = DEFAULT_LIMIT) -> MonotonicityReport:
    """Check the declared direction of ``f`` on every refinement covering pair of P(n)."""
    return _verify(f, n, refinement_covers(n, limit), "refinement")


def verify_dominance_monotone(f: GenFun, n: int, limit: int = DEFAULT_LIMIT) -> MonotonicityReport:
    """Check the declared direction of ``f`` on every dominance covering pair of P(n)."""
    return _verify(f, n, dominance_cover_pairs(n, limit), "dominance")


# ---------------------------------------------------------------------------
# textual specs

_SPEC_NAMES = {
    "height": "height", "width": "width", "rank": "rank", "toughness": "toughness",
    "w_m": "w_m", "t_m": "t_m", "power_sum_q": "s_q", "q_sum": "q_sum", "q_mean": "q_mean",
    "tsallis_q": "tsallis", "renyi_q": "renyi", "shannon": "shannon", "p_q": "p_q",
    "dim_b": "dim", "dimp_b": "dimp", "dof_b": "dof", "dofp_b": "dofp",
    "squareability": "squareability", "avg": "avg",
}
_ALIASES = {v: k for k, v in _SPEC_NAMES.items()}
_ALIASES.update({
    "h": "height", "w": "width", "r": "rank", "t": "toughness", "s2": "squareability",
    "sq": "squareability", "N_q": "q_sum", "M_q": "q_mean", "T_q": "tsallis_q",
    "R_q": "renyi_q", "S": "shannon", "P_q": "p_q", "tsallis_q": "tsallis_q",
    "renyi_q": "renyi_q", "power_sum_q": "power_sum_q", "dim_b": "dim_b",
    "dimp_b": "dimp_b", "dof_b": "dof_b", "dofp_b": "dofp_b",
})


def _parse_number(text: str) -> Number:
    t = text.strip().lower()
    if t in ("inf", "+inf", "infinity"):
        return math.inf
    if t in ("-inf", "-infinity"):
        return -math.inf
    v = float(t)
    return int(v) if v.is_integer() else v


def parse_transform(text: str, n: Optional[int] = None) -> MonotoneTransform:
    t = text.strip()
    if t == "ln":
        return LN
    if t == "exp":
        return EXP
    if t == "recip":
        return RECIPROCAL
    if t == "neg":
        return NEGATE
    if t == "neglog2":
        if n is None:
            raise ValueError("transform 'neglog2' (-ln(u/n^2)) needs n")
        return MonotoneTransform("neglog", (float(n * n),))
    if "(" in t and t.endswith(")"):
        name, args = t[:-1].split("(", 1)
        nums = tuple(float(_parse_number(a)) for a in args.split(",") if a.strip())
        kind = {"affine": "affine", "pow": "power", "floor": "floor", "neglog": "neglog"}.get(name)
        if kind is None:
            raise ValueError(f"unknown transform {t!r}")
        return MonotoneTransform(kind, nums)
    raise ValueError(f"unknown transform {t!r}")


def parse_genfun(text: str, n: Optional[int] = None, *, checked: bool = True) -> GenFun:
    """Parse ``"width"``, ``"s_q:q=2"``, ``"w_m:m=2"``, ``"compose:neglog2:s_q:q=2"`` and friends."""
    tokens = text.strip().split(":")
    if tokens[0] == "compose":
        if len(tokens) < 3:
            raise ValueError(f"compose spec needs a transform and an inner function: {text!r}")
        g = parse_transform(tokens[1], n)
        return compose(g, parse_genfun(":".join(tokens[2:]), n, checked=checked))
    fam = _ALIASES.get(tokens[0])
    if fam is None:
        raise ValueError(f"unknown generator function {tokens[0]!r}")
    param = None
    for tok in tokens[1:]:
        key, _, val = tok.partition("=")
        if key.strip() not in ("q", "m", "b") or not val:
            raise ValueError(f"bad parameter {tok!r} in {text!r}")
        param = _parse_number(val)
    return GenFun(fam, param, checked)
