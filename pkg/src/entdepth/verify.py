"""Exhaustive and seeded verification suites used by ``entdepth verify``.

Each suite returns a :class:`SuiteResult` whose ``checks`` list has one
entry per claim checked; the suite passes only when every check passes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .bounds import bound_closed, bound_curve, closed_family, usefulness_report
from .genfun import (
    DEC,
    INC,
    GenFun,
    evaluate,
    parse_genfun,
    verify_dominance_monotone,
    verify_refinement_monotone,
)
from .partitions import (
    Partition,
    conjugate,
    dominance_cover_pairs,
    dominated_by,
    enumerate_partitions,
    refinement_covers,
    refines,
    set_partition_type,
    set_partitions,
    set_refines,
)

SUITES = ("orders", "monotonicity", "limits", "bounds", "qfi")

INF = math.inf


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class SuiteResult:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(ok), detail))

    def as_dict(self) -> dict:
        failed = [c for c in self.checks if not c.ok]
        return {
            "suite": self.suite,
            "ok": self.ok,
            "checks": len(self.checks),
            "failed": [{"name": c.name, "detail": c.detail} for c in failed],
        }


# ---------------------------------------------------------------------------
# orders


def covers_from_relation(parts: list[Partition], rel: Callable[[Partition, Partition], bool]) -> set[tuple[Partition, Partition]]:
    """Transitive reduction of a partial order given as a predicate."""
    below = {x: [u for u in parts if u != x and rel(u, x)] for x in parts}
    out = set()
    for x in parts:
        for u in below[x]:
            if not any(u in below[z] for z in below[x] if z != u):
                out.add((u, x))
    return out


def set_partition_refinement(n: int) -> set[tuple[Partition, Partition]]:
    """Type pairs (u, x) realised by some set partition of type u refining one of type x."""
    sps = list(set_partitions(n))
    types = [set_partition_type(s) for s in sps]
    out = set()
    for a, ta in zip(sps, types):
        for b, tb in zip(sps, types):
            if (ta, tb) not in out and set_refines(a, b):
                out.add((ta, tb))
    return out


def suite_orders(n_max: int = 9) -> SuiteResult:
    res = SuiteResult("orders")
    for n in range(1, n_max + 1):
        parts = enumerate_partitions(n)
        bad = [(u, x) for u in parts for x in parts if refines(u, x) and not dominated_by(u, x)]
        res.add(f"refinement implies dominance n={n}", not bad, repr(bad[:3]))
        anti = [(u, x) for u in parts for x in parts
                if dominated_by(u, x) != dominated_by(conjugate(x), conjugate(u))]
        res.add(f"conjugation reverses dominance n={n}", not anti, repr(anti[:3]))
        invol = all(conjugate(conjugate(p)) == p for p in parts)
        res.add(f"conjugation is an involution n={n}", invol)
        if n <= 8:
            ref = set(refinement_covers(n))
            res.add(f"refinement covers n={n}", ref == covers_from_relation(parts, refines))
            dom = set(dominance_cover_pairs(n))
            res.add(f"dominance covers n={n}", dom == covers_from_relation(parts, dominated_by))
        if n <= min(6, n_max):
            oracle = set_partition_refinement(n)
            mine = {(u, x) for u in parts for x in parts if refines(u, x)}
            res.add(f"refinement matches set-partition quotient n={n}", oracle == mine)
    if n_max >= 4:
        a, b = Partition((2, 2)), Partition((3, 1))
        ok = dominated_by(a, b) and not refines(a, b) and not refines(b, a)
        res.add("{2,2} < {3,1} in dominance but refinement-incomparable", ok)
    return res


# ---------------------------------------------------------------------------
# monotonicity tables

Q_GRIDS: dict[str, list[list[float]]] = {
    "power_sum_q": [[-INF, -5, -2, -1, -0.5, 0, 0.25, 0.5, 0.75], [1, 1.5, 2, 2.5, 3, 4, 5, 10]],
    "q_sum": [[-INF, -10, -5, -2, -1, -0.5, -0.25, -0.1], [0.1, 0.2, 0.3, 0.5, 0.6, 0.75, 0.9, 0.99],
              [1, 1.5, 2, 3, 4, 5, 10, INF]],
    "q_mean": [[1, 1.5, 2, 3, 4, 5, 10, INF]],
    "tsallis_q": [[-5, -3, -2, -1, -0.5, 0, 0.5, 1, 2, 3, 5, INF]],
    "renyi_q": [[-INF, -5, -2, -1, -0.5, 0, 0.5, 1, 2, 3, 5, INF]],
    "p_q": [[-INF, -5, -2, -1, -0.5, 0, 0.5, 1, 2, 3, 5, INF]],
    "dim_b": [[0.05, 0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9, 1], [2, 2.5, 3, 4, 5, 7, 10, 16]],
    "dimp_b": [[0.1, 0.25, 0.5, 0.9, 1, 1.5, 2, 3, 5, 10]],
    "dof_b": [[0.05, 0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9], [2, 2.5, 3, 4, 5, 7, 10, 16]],
    "dofp_b": [[1.1, 1.25, 1.5, 2, 2.5, 3, 5, 10]],
    "w_m": [[1, 2, 3, 4, 5, 6, 7, 8]],
    "t_m": [[1, 2, 3, 4, 5, 6, 7, 8]],
}
PLAIN = ("height", "width", "rank", "toughness", "shannon", "squareability", "avg")


def catalog() -> list[GenFun]:
    """Every (family, parameter) pair on the verification grid."""
    out = [GenFun(fam) for fam in PLAIN]
    for fam, branches in Q_GRIDS.items():
        for branch in branches:
            out.extend(GenFun(fam, p) for p in branch)
    return out


def suite_monotonicity(n_max: int = 10, extra: Iterable[GenFun] = ()) -> SuiteResult:
    res = SuiteResult("monotonicity")
    extra = list(extra)
    for f in catalog() + extra:
        for n in range(1, n_max + 1):
            rep = verify_refinement_monotone(f, n)
            if not rep.ok:
                res.add(f"{f.spec} refinement n={n}", False, _fmt_violation(rep))
                break
        else:
            res.add(f"{f.spec} refinement n<={n_max}", True)
        if not f.dominance_monotone:
            continue
        for n in range(1, n_max + 1):
            rep = verify_dominance_monotone(f, n)
            if not rep.ok:
                res.add(f"{f.spec} dominance n={n}", False, _fmt_violation(rep))
                break
        else:
            res.add(f"{f.spec} dominance n<={n_max}", True)
    if n_max >= 4:
        rep = verify_dominance_monotone(GenFun("toughness"), 4)
        pairs = {(u.parts, x.parts) for u, x, _, _ in rep.violations}
        res.add("toughness breaks dominance at {2,2} < {3,1}", ((2, 2), (3, 1)) in pairs)
    return res


def _fmt_violation(rep) -> str:
    u, x, a, b = rep.violations[0]
    return f"{len(rep.violations)} violations, first {u!r}->{x!r}: {a!r} vs {b!r}"


# ---------------------------------------------------------------------------
# q-limits and q-monotonicity


def _limit_forms(xi: Partition) -> dict[tuple[str, float], float]:
    n = xi.n
    mx, mn = xi.width, xi.toughness
    ones = sum(1 for x in xi.parts if x == 1)
    return {
        ("q_sum", INF): mx, ("q_sum", -INF): mn,
        ("q_mean", INF): mx, ("q_mean", -INF): mn,
        ("renyi_q", INF): math.log(n) - math.log(mx), ("renyi_q", -INF): math.log(n) - math.log(mn),
        ("p_q", INF): n / mx, ("p_q", -INF): n / mn,
        ("tsallis_q", INF): 0.0,
        ("power_sum_q", -INF): ones,
    }


def limit_errors(xi: Partition, q_abs: float) -> dict[tuple[str, float], float]:
    """|f_q(xi) - f_limit(xi)| at q = +-q_abs for every finite limit form."""
    out = {}
    for (fam, lim), target in _limit_forms(xi).items():
        q = q_abs if lim > 0 else -q_abs
        f = GenFun(fam, q, checked=False)
        out[(fam, lim)] = abs(evaluate(f, xi) - target)
    return out


LIMIT_Q = (50, 500, 5000, 5e4, 5e6, 1e9)
QMON_GRID = (-5, -2, -1, -0.5, 0.5, 2, 3, 5)


def q_monotone_violations(xi: Partition, grid=QMON_GRID, tol: float = 1e-9) -> list[str]:
    """Families whose value is not monotone in q along the grid, in the expected direction."""
    bad = []

    def check(name, qs, direction):
        vals = [evaluate(GenFun(name, q, checked=False), xi) for q in qs]
        for a, b in zip(vals, vals[1:]):
            slack = tol * max(1.0, abs(a), abs(b))
            if (direction == INC and b < a - slack) or (direction == DEC and b > a + slack):
                bad.append(f"{name} on {qs}: {vals}")
                return

    neg = [q for q in grid if q < 0]
    pos = [q for q in grid if q > 0]
    check("power_sum_q", list(grid), INC)
    check("q_mean", list(grid), INC)
    for name in ("tsallis_q", "renyi_q", "p_q"):
        check(name, list(grid), DEC)
    check("q_sum", neg, DEC)
    check("q_sum", pos, DEC)
    n_neg = evaluate(GenFun("q_sum", neg[-1]), xi)
    n_pos = evaluate(GenFun("q_sum", pos[-1]), xi)
    if n_neg > n_pos + tol * n_pos:
        bad.append(f"q_sum negative branch above positive branch: {n_neg} > {n_pos}")
    return bad


def suite_limits(n: int = 8, tol: float = 1e-6) -> SuiteResult:
    """Convergence of q-families to their +-inf forms and monotonicity in q.

    The distance to the limit shrinks like 1/|q| for most families, so it is
    required to decrease along ``LIMIT_Q`` and to fall below ``tol`` at the
    largest |q|, rather than at a fixed moderate |q|.
    """
    res = SuiteResult("limits")
    worst: dict[tuple[str, float], list[float]] = {}
    for xi in enumerate_partitions(n):
        errs = [limit_errors(xi, q) for q in LIMIT_Q]
        for key in errs[0]:
            seq = [e[key] for e in errs]
            w = worst.setdefault(key, [0.0] * len(seq))
            for i, v in enumerate(seq):
                w[i] = max(w[i], v)
    for (fam, lim), seq in sorted(worst.items()):
        decreasing = all(b <= a + 1e-12 for a, b in zip(seq, seq[1:]))
        res.add(f"{fam} -> {'+' if lim > 0 else '-'}inf limit, n={n}",
                decreasing and seq[-1] < tol,
                "max errors at |q| in %s: %s" % (list(LIMIT_Q), ["%.3g" % v for v in seq]))
    for xi in enumerate_partitions(n):
        bad = q_monotone_violations(xi)
        if bad:
            res.add(f"q-monotonicity {xi!r}", False, "; ".join(bad))
    res.add(f"q-monotonicity on all of P({n})", all(c.ok for c in res.checks if c.name.startswith("q-mono")))
    return res


# ---------------------------------------------------------------------------
# bounds


def suite_bounds(n_max: int = 20) -> SuiteResult:
    res = SuiteResult("bounds")
    fams = [GenFun("width"), GenFun("height"), GenFun("rank"), GenFun("toughness"), GenFun("squareability")]
    for n in range(2, n_max + 1):
        for f in fams:
            table = bound_curve(f, n)
            cf = closed_family(f)
            bad = [(r.k, r.b, bound_closed(cf, r.k, n)) for r in table.rows if r.b != bound_closed(cf, r.k, n)]
            res.add(f"{cf} closed form n={n}", not bad, repr(bad[:3]))
            bs = [r.b for r in table.rows]
            mono = all(a <= b for a, b in zip(bs, bs[1:]))
            top = table.rows[-1]
            res.add(f"{f.spec} bound monotone n={n}",
                    mono and top.b == n * n and top.witnesses == [Partition.top(n)])
        weak = all(bound_closed("prod_weak", k, n) >= bound_closed("prod", k, n)
                   and (bound_closed("prod_weak", k, n) == bound_closed("prod", k, n)) == (n % k == 0)
                   for k in range(1, n + 1))
        res.add(f"prod_weak dominates with equality at divisors n={n}", weak)
        res.add(f"witness structure n={n}", _witness_structure_ok(n))
    for n in range(2, min(n_max, 12) + 1):
        for f in catalog():
            if not f.dominance_monotone:
                continue
            rep = usefulness_report(f, n)
            bad = [k for k, s, c in zip(rep.levels, rep.strict, rep.dominance_comparable) if c and not s]
            if bad:
                res.add(f"dominance-comparable witnesses force strict steps {f.spec} n={n}", False, repr(bad))
    res.add(f"dominance-comparable witnesses force strict steps n<={min(n_max, 12)}",
            all(c.ok for c in res.checks if c.name.startswith("dominance-comparable")))
    return res


def _witness_structure_ok(n: int) -> bool:
    if n > 20:
        return True
    prod = bound_curve(GenFun("width"), n)
    for row in prod.rows:
        k = row.k
        expected = Partition((k,) * (n // k) + ((n % k,) if n % k else ()))
        if expected not in row.witnesses:
            return False
    part = bound_curve(GenFun("height"), n)
    for row in part.rows:
        if Partition((n - row.k + 1,) + (1,) * (row.k - 1)) not in row.witnesses:
            return False
    tgh = bound_curve(GenFun("toughness"), n)
    for row in tgh.rows[:-1]:
        if row.witnesses != [Partition((n - 1, 1))]:
            return False
    return True


# ---------------------------------------------------------------------------
# quantum Fisher information


def suite_qfi(n_max: int = 10, seed: int = 0, n_states: int = 10, n_decomp: int = 10) -> SuiteResult:
    from . import qstate as qs

    res = SuiteResult("qfi")
    for n in range(1, min(n_max, 10) + 1):
        jz = qs.collective_jz(n)
        bad = []
        for xi in enumerate_partitions(n):
            fq = qs.qfi_pure(qs.ghz_product_state(xi), jz)
            if abs(fq - xi.s2) > 1e-9:
                bad.append((xi, fq))
        res.add(f"GHZ-product attainability n={n}", not bad, repr(bad[:3]))
    rng = qs.rng_from_seed(seed)
    for n in range(1, min(n_max, 5) + 1):
        jz = qs.collective_jz(n)
        psi = qs.random_pure_state(n, rng)
        res.add(f"pure qfi equals 4 var n={n}",
                abs(qs.qfi(qs.projector(psi), jz) - qs.qfi_pure(psi, jz)) < 1e-9)
        mm = np.eye(2 ** n) / 2 ** n
        res.add(f"maximally mixed qfi n={n}", abs(qs.qfi(mm, jz)) < 1e-12)
        for c in (0, 1, -1, 1j):
            rho = qs.extremal_variance_state(n, c)
            res.add(f"variance attains n^2/4, c={c}, n={n}", abs(qs.variance(rho, jz) - n * n / 4) < 1e-9)
        for _ in range(n_states):
            rho = qs.random_density_matrix(n, rng, rank=int(rng.integers(1, 2 ** n + 1)))
            fq = qs.qfi(rho, jz)
            ok = fq <= 4 * qs.variance(rho, jz) + 1e-9
            for _ in range(n_decomp):
                m = int(rng.integers(2 ** n, 2 ** n + 4))
                dec = qs.random_decomposition(rho, m, seed=int(rng.integers(2 ** 63)))
                roof = math.fsum(p * qs.qfi_pure(psi, jz) for p, psi in dec)
                ok = ok and fq <= roof + 1e-9
            rho2 = qs.random_density_matrix(n, rng)
            w = float(rng.uniform())
            mix = w * rho + (1 - w) * rho2
            ok = ok and qs.qfi(mix, jz) <= w * fq + (1 - w) * qs.qfi(rho2, jz) + 1e-9
            if not ok:
                res.add(f"convexity and roof bounds n={n}", False)
                break
        else:
            res.add(f"convexity and roof bounds n={n}", True)
    return res


def run_suite(name: str, n_max: int | None = None, seed: int = 0, extra_f: Iterable[str] = (),
              unchecked: bool = False) -> SuiteResult:
    if name == "orders":
        return suite_orders(9 if n_max is None else n_max)
    if name == "monotonicity":
        n = 10 if n_max is None else n_max
        extra = [parse_genfun(s, n, checked=not unchecked) for s in extra_f]
        return suite_monotonicity(n, extra)
    if name == "limits":
        return suite_limits(8 if n_max is None else n_max)
    if name == "bounds":
        return suite_bounds(20 if n_max is None else n_max)
    if name == "qfi":
        return suite_qfi(10 if n_max is None else n_max, seed)
    raise ValueError(f"unknown suite {name!r}; expected one of {SUITES}")
