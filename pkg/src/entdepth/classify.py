"""f-entanglement depth of pure separability structures and of decompositions.

A pure state is described by its finest separating partition type; its
f-depth is just f of that type.  A mixed state is described here by one
pure-state decomposition (an :class:`Ensemble`).  The depth computed from an
ensemble certifies that decomposition only: it bounds the true depth of the
mixed state (from above for increasing f, from below for decreasing f) and is
exact only when the decomposition happens to be optimal.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import NoNeighborError, SchemaError
from .genfun import (
    HEIGHT,
    INC,
    RANK,
    WIDTH,
    GenFun,
    MonotoneTransform,
    Number,
    compose,
    evaluate,
    neighbor_level,
)
from .partitions import DEFAULT_LIMIT, Partition

WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class Ensemble:
    """Weights with the finest separating type of each pure member."""

    members: tuple[tuple[float, Partition], ...]

    def __post_init__(self):
        members = tuple((float(p), xi if isinstance(xi, Partition) else Partition(xi)) for p, xi in self.members)
        object.__setattr__(self, "members", members)
        if not members:
            raise ValueError("an ensemble needs at least one member")
        ns = {xi.n for _, xi in members}
        if len(ns) != 1:
            raise ValueError(f"ensemble members have different n: {sorted(ns)}")
        for p, _ in members:
            if not p > 0:
                raise ValueError(f"ensemble weights must be positive, got {p}")
        total = math.fsum(p for p, _ in members)
        if abs(total - 1.0) > WEIGHT_TOL:
            raise ValueError(f"ensemble weights sum to {total!r}, not 1")

    @property
    def n(self) -> int:
        return self.members[0][1].n

    @property
    def weights(self) -> list[float]:
        return [p for p, _ in self.members]

    @property
    def types(self) -> list[Partition]:
        return [xi for _, xi in self.members]

    @classmethod
    def pure(cls, xi: Partition) -> "Ensemble":
        return cls(((1.0, xi),))

    def to_dict(self) -> dict:
        return {"n": self.n, "members": [{"p": p, "parts": list(xi.parts)} for p, xi in self.members]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"

    @classmethod
    def from_dict(cls, doc) -> "Ensemble":
        if not isinstance(doc, dict) or "members" not in doc:
            raise SchemaError("ensemble document needs a 'members' list")
        members = doc["members"]
        if not isinstance(members, list):
            raise SchemaError("'members' must be a list")
        try:
            out = cls(tuple((m["p"], Partition(m["parts"])) for m in members))
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"bad ensemble member: {exc}") from exc
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
        if "n" in doc and doc["n"] != out.n:
            raise SchemaError(f"declared n={doc['n']} but members sum to {out.n}")
        return out

    @classmethod
    def from_json(cls, text: str) -> "Ensemble":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(doc)


@dataclass(frozen=True)
class ClassLabel:
    f: GenFun
    k: Number
    k_neighbor: Optional[Number]


def pure_depth(f: GenFun, finest: Partition) -> Number:
    """D_f of a pure state whose finest separating type is ``finest``."""
    return evaluate(f, finest)


def class_of(f: GenFun, finest: Partition, limit: int = DEFAULT_LIMIT) -> ClassLabel:
    k = pure_depth(f, finest)
    try:
        nb = neighbor_level(f, finest.n, k, limit)
    except NoNeighborError:
        nb = None
    return ClassLabel(f, k, nb)


def ensemble_depth(f: GenFun, E: Ensemble) -> Number:
    """Depth certified by this decomposition: worst member depth."""
    ds = [pure_depth(f, xi) for xi in E.types]
    return max(ds) if f.direction == INC else min(ds)


def ensemble_avg_depth(f: GenFun, E: Ensemble) -> float:
    """Weighted mean member depth, a one-decomposition bound on the depth of formation."""
    return math.fsum(p * pure_depth(f, xi) for p, xi in E.members)


def depth_transform(g: MonotoneTransform, f: GenFun, finest: Partition) -> Number:
    return pure_depth(compose(g, f), finest)


@dataclass
class RelationCheck:
    name: str
    lower: float
    value: float
    upper: float
    ok: bool


def _sqrt_lhs_ok(r, n, rhs) -> bool:
    # sqrt(r^2 + 4n) <= rhs, decided without square roots when rhs >= 0
    return rhs >= 0 and r * r + 4 * n <= rhs * rhs


def depth_relation_report(finest: Partition) -> list[RelationCheck]:
    """Six two-sided inequalities tying partitionability, producibility and
    stretchability depths together, evaluated exactly on one partition."""
    n, h, w, r = finest.n, finest.height, finest.width, finest.rank
    return _relations(n, Fraction(h), Fraction(w), Fraction(r), exact=True)


def _relations(n, h, w, r, exact: bool, tol: float = 0.0) -> list[RelationCheck]:
    def le(a, b):
        return a <= b if exact else a <= b + tol * max(1.0, abs(a), abs(b))

    def sq_le(rr, rhs):
        if exact:
            return _sqrt_lhs_ok(rr, n, rhs)
        return le(math.sqrt(rr * rr + 4 * n), rhs)

    rows = [
        ("n/w <= h <= n+1-w", n / w, h, n + 1 - w, le(n / w, h) and le(h, n + 1 - w)),
        ("n/h <= w <= n+1-h", n / h, w, n + 1 - h, le(n / h, w) and le(w, n + 1 - h)),
        ("n/h-h <= r <= n+1-2h", n / h - h, r, n + 1 - 2 * h, le(n / h - h, r) and le(r, n + 1 - 2 * h)),
        ("2w-(n+1) <= r <= w-n/w", 2 * w - (n + 1), r, w - n / w, le(2 * w - (n + 1), r) and le(r, w - n / w)),
        (
            "sqrt(r^2+4n)-r <= 2h <= n+1-r",
            math.sqrt(float(r * r + 4 * n)) - float(r), 2 * h, n + 1 - r,
            sq_le(r, 2 * h + r) and le(2 * h, n + 1 - r),
        ),
        (
            "sqrt(r^2+4n)+r <= 2w <= n+1+r",
            math.sqrt(float(r * r + 4 * n)) + float(r), 2 * w, n + 1 + r,
            sq_le(r, 2 * w - r) and le(2 * w, n + 1 + r),
        ),
    ]
    return [RelationCheck(name, float(lo), float(v), float(hi), ok) for name, lo, v, hi, ok in rows]


def ensemble_relation_report(E: Ensemble, tol: float = 1e-9) -> list[RelationCheck]:
    """The same six inequalities between decomposition-averaged depths.

    Each left side is convex and each right side affine in the averaged
    quantity, so Jensen's inequality carries the partition-level bounds over
    to the averages of any one decomposition.
    """
    n = E.n
    h = ensemble_avg_depth(HEIGHT, E)
    w = ensemble_avg_depth(WIDTH, E)
    r = ensemble_avg_depth(RANK, E)
    return _relations(n, h, w, r, exact=False, tol=tol)
