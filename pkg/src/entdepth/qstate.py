"""Small dense n-qubit states, collective spin-z, variances and Fisher information.

Qubit 0 is the most significant bit of the computational-basis index.  The
collective operator J^z is kept as its diagonal, so pure-state quantities
never build a matrix and work up to 20 qubits; density matrices are capped
at 8 qubits.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .bounds import BRUTEFORCE_LIMIT, bound_curve, criteria_exclude
from .classify import Ensemble, ensemble_depth, pure_depth
from .errors import LimitError, SchemaError
from .genfun import GenFun
from .partitions import Partition

PURE_CAP = 20
MIXED_CAP = 8
NORM_TOL = 1e-12
PSD_TOL = 1e-10

State = np.ndarray


@dataclass(frozen=True)
class CollectiveOp:
    """A diagonal collective observable; ``collective_jz`` builds J^z."""

    n: int
    diagonal: np.ndarray

    @property
    def spectral_width(self) -> float:
        return float(self.diagonal.max() - self.diagonal.min())

    @property
    def normalization(self) -> float:
        """(a_max - a_min)^2, equal to 4 s^2 for total spin s; n^2 for J^z on qubits."""
        return self.spectral_width ** 2


def _popcount(n: int) -> np.ndarray:
    idx = np.arange(2 ** n, dtype=np.int64)
    bits = np.zeros_like(idx)
    for q in range(n):
        bits += (idx >> q) & 1
    return bits


def collective_jz(n: int, cap: int = PURE_CAP) -> CollectiveOp:
    if n > cap:
        raise LimitError(f"{n} qubits exceeds the cap {cap}")
    return CollectiveOp(n, (n - 2 * _popcount(n)) / 2.0)


def _nqubits(dim: int) -> int:
    n = dim.bit_length() - 1
    if 2 ** n != dim or n < 1:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def check_state_vector(psi: np.ndarray) -> int:
    psi = np.asarray(psi)
    if psi.ndim != 1:
        raise ValueError("a state vector must be one-dimensional")
    n = _nqubits(psi.shape[0])
    nrm = np.vdot(psi, psi).real
    if abs(nrm - 1.0) > 1e-10:
        raise ValueError(f"state vector has norm^2 {nrm}, not 1")
    return n


def check_density_matrix(rho: np.ndarray) -> int:
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("a density matrix must be square")
    n = _nqubits(rho.shape[0])
    if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-12:
        raise ValueError(f"density matrix has trace {np.trace(rho).real}, not 1")
    if np.linalg.eigvalsh(rho).min() < -PSD_TOL:
        raise ValueError("density matrix is not positive semidefinite")
    return n


def ghz(x: int, theta: float = 0.0) -> State:
    """(|0..0> + e^{i theta}|1..1>)/sqrt(2) on x qubits."""
    v = np.zeros(2 ** x, dtype=complex)
    v[0] += 1 / math.sqrt(2)
    v[-1] += np.exp(1j * theta) / math.sqrt(2)
    return v


def ghz_product_state(xi: Partition, theta: float = 0.0, blocks: Sequence[int] | None = None,
                      cap: int = PURE_CAP) -> State:
    """Tensor product of one GHZ vector per part, on contiguous qubit blocks.

    Blocks are laid out in decreasing part size unless ``blocks`` gives
    another ordering of the same parts.
    """
    if xi.n > cap:
        raise LimitError(f"{xi.n} qubits exceeds the pure-state cap {cap}")
    order = list(xi.parts) if blocks is None else list(blocks)
    if sorted(order) != sorted(xi.parts):
        raise ValueError(f"block order {order} is not a rearrangement of {xi!r}")
    psi = np.ones(1, dtype=complex)
    for x in order:
        psi = np.kron(psi, ghz(x, theta))
    return psi


def basis_state(bits: str) -> State:
    if not bits or set(bits) - {"0", "1"}:
        raise ValueError(f"basis label must be a 0/1 string, got {bits!r}")
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2)] = 1.0
    return v


def projector(psi: State) -> np.ndarray:
    return np.outer(psi, psi.conj())


def extremal_variance_state(n: int, c: complex) -> np.ndarray:
    """0.5(|0..0><0..0| + |1..1><1..1| + c|0..0><1..1| + conj(c)|1..1><0..0|), |c| <= 1.

    Every member of this family has the largest possible J^z variance n^2/4;
    c = 0 is the incoherent mixture and |c| = 1 a GHZ state.
    """
    if abs(c) > 1 + 1e-12:
        raise ValueError("|c| must be at most 1")
    if n > MIXED_CAP:
        raise LimitError(f"{n} qubits exceeds the mixed-state cap {MIXED_CAP}")
    d = 2 ** n
    rho = np.zeros((d, d), dtype=complex)
    rho[0, 0] = rho[-1, -1] = 0.5
    rho[0, -1] = 0.5 * c
    rho[-1, 0] = 0.5 * np.conj(c)
    return rho


def _diag(A: Union[CollectiveOp, np.ndarray]) -> np.ndarray:
    return A.diagonal if isinstance(A, CollectiveOp) else np.asarray(A, dtype=float)


def variance(state: np.ndarray, A: Union[CollectiveOp, np.ndarray]) -> float:
    """<A^2> - <A>^2 for a diagonal observable."""
    d = _diag(A)
    state = np.asarray(state)
    if state.shape[0] != d.shape[0]:
        raise ValueError(f"state dimension {state.shape[0]} does not match operator dimension {d.shape[0]}")
    if state.ndim == 1:
        probs = np.abs(state) ** 2
    else:
        probs = np.diagonal(state).real
    mean = float(probs @ d)
    return float(probs @ (d * d)) - mean * mean


def qfi_pure(psi: State, A: Union[CollectiveOp, np.ndarray]) -> float:
    """Four times the variance, valid for normalized pure states."""
    return 4.0 * variance(psi, A)


def qfi(rho: np.ndarray, A: Union[CollectiveOp, np.ndarray], cap: int = MIXED_CAP) -> float:
    """Fisher information 2 sum (l_i - l_j)^2/(l_i + l_j) |<i|A|j>|^2.

    Pairs with l_i + l_j at or below 1e-12 (times the trace) are skipped.
    Inside a degenerate eigenspace (l_i - l_j)^2 vanishes, so the arbitrary
    basis the eigensolver returns there does not affect the sum.
    """
    rho = np.asarray(rho)
    n = _nqubits(rho.shape[0])
    if n > cap:
        raise LimitError(f"{n} qubits exceeds the mixed-state cap {cap}")
    d = _diag(A)
    if d.shape[0] != rho.shape[0]:
        raise ValueError("state and operator dimensions differ")
    lam, vecs = np.linalg.eigh(rho)
    lam = np.where((lam < 0) & (lam > -PSD_TOL), 0.0, lam)
    tr = float(lam.sum())
    a = vecs.conj().T @ (d[:, None] * vecs)
    li, lj = lam[:, None], lam[None, :]
    s = li + lj
    mask = s > 1e-12 * tr
    num = (li - lj) ** 2
    terms = np.zeros_like(s)
    terms[mask] = num[mask] / s[mask] * np.abs(a[mask]) ** 2
    return float(2.0 * terms.sum())


# random states


def rng_from_seed(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_pure_state(n: int, rng: np.random.Generator) -> State:
    v = rng.standard_normal(2 ** n) + 1j * rng.standard_normal(2 ** n)
    return v / np.linalg.norm(v)


def random_density_matrix(n: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Normalized G G^dagger for a complex Gaussian G of shape (2^n, rank)."""
    d = 2 ** n
    r = d if rank is None else rank
    g = rng.standard_normal((d, r)) + 1j * rng.standard_normal((d, r))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return rho / np.trace(rho).real


def random_isometry(m: int, r: int, rng: np.random.Generator) -> np.ndarray:
    """An m x r matrix with orthonormal columns from a seeded Gaussian draw."""
    g = rng.standard_normal((m, r)) + 1j * rng.standard_normal((m, r))
    q, rr = np.linalg.qr(g)
    return q * (np.diagonal(rr) / np.abs(np.diagonal(rr)))


def random_decomposition(rho: np.ndarray, m: int, seed: int | None = None,
                         isometry: np.ndarray | None = None) -> list[tuple[float, State]]:
    """An m-member pure-state decomposition of ``rho``.

    Member j is proportional to sum_i U_ji sqrt(l_i) v_i for eigenpairs
    (l_i, v_i) and an isometry U; any isometry reproduces ``rho``.  Pass
    ``isometry`` to fix U (the identity gives the eigen-ensemble), otherwise
    it is drawn from ``seed``.
    """
    lam, vecs = np.linalg.eigh(rho)
    tr = float(np.trace(rho).real)
    keep = lam > 1e-12 * tr
    lam, vecs = lam[keep][::-1], vecs[:, keep][:, ::-1]
    r = len(lam)
    if m < r:
        raise ValueError(f"m={m} is smaller than the rank {r}")
    if isometry is None:
        if seed is None:
            raise ValueError("a seed is required for a random decomposition")
        U = random_isometry(m, r, rng_from_seed(seed))
    else:
        U = np.asarray(isometry)[:, :r]
    w = U @ (np.sqrt(lam)[:, None] * vecs.T)
    out = []
    for row in w:
        p = float(np.vdot(row, row).real)
        if p > 1e-15:
            out.append((p, row / math.sqrt(p)))
    return out


# criteria


def fisher_information(state: np.ndarray, A: CollectiveOp | None = None) -> float:
    state = np.asarray(state)
    n = _nqubits(state.shape[0])
    A = collective_jz(n) if A is None else A
    return qfi_pure(state, A) if state.ndim == 1 else qfi(state, A)


@dataclass
class CriterionReport:
    f: str
    n: int
    fq: float
    depth: float
    bound: float
    convex_bound: float
    normalization: float

    @property
    def margin(self) -> float:
        return self.bound - self.fq

    @property
    def convex_margin(self) -> float:
        return self.convex_bound - self.fq

    @property
    def ok(self) -> bool:
        tol = 1e-9 * max(1.0, self.fq)
        return self.margin >= -tol and self.convex_margin >= -tol

    def as_dict(self) -> dict:
        return {
            "f": self.f, "n": self.n, "fq": self.fq, "depth": self.depth,
            "bound": self.bound, "margin": self.margin,
            "convex_bound": self.convex_bound, "convex_margin": self.convex_margin,
            "normalization": self.normalization, "ok": self.ok,
        }


def verify_criterion(state: np.ndarray, f: GenFun, certified: Ensemble | Partition,
                     limit: int = BRUTEFORCE_LIMIT) -> CriterionReport:
    """Compare F_Q(state, J^z) with b_f of the certified depth and with the
    decomposition-averaged bound sum_j p_j b_f(D_f(member j))."""
    E = Ensemble.pure(certified) if isinstance(certified, Partition) else certified
    state = np.asarray(state)
    n = _nqubits(state.shape[0])
    if n != E.n:
        raise ValueError(f"certificate is for n={E.n}, state has {n} qubits")
    jz = collective_jz(n)
    fq = fisher_information(state, jz)
    table = bound_curve(f, n, limit)
    depth = ensemble_depth(f, E)
    convex = math.fsum(p * table.lookup(pure_depth(f, xi)) for p, xi in E.members)
    return CriterionReport(f.spec, n, fq, depth, table.lookup(depth), convex, jz.normalization)


# JSON state specs


def _build(spec) -> tuple[list[tuple[float, State, Partition]], int]:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise SchemaError("state spec must be an object with a 'kind'")
    kind = spec["kind"]
    try:
        if kind == "ghz_product":
            xi = Partition(spec["parts"])
            psi = ghz_product_state(xi, float(spec.get("theta", 0.0)))
            return [(1.0, psi, xi)], xi.n
        if kind == "basis":
            psi = basis_state(str(spec["bits"]))
            return [(1.0, psi, Partition.bottom(len(spec["bits"])))], len(spec["bits"])
        if kind == "mixture":
            terms = spec["terms"]
            if not isinstance(terms, list) or not terms:
                raise SchemaError("mixture needs a nonempty 'terms' list")
            out, ns = [], set()
            for t in terms:
                w = float(t["w"])
                if not w > 0:
                    raise SchemaError(f"mixture weights must be positive, got {w}")
                sub, n = _build(t["state"])
                ns.add(n)
                out.extend((w * p, psi, xi) for p, psi, xi in sub)
            if len(ns) != 1:
                raise SchemaError(f"mixture terms act on different qubit numbers: {sorted(ns)}")
            total = math.fsum(p for p, _, _ in out)
            if abs(total - 1.0) > 1e-12:
                raise SchemaError(f"mixture weights sum to {total!r}, not 1")
            return out, ns.pop()
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad {kind!r} state spec: {exc!r}") from exc
    except ValueError as exc:
        if isinstance(exc, (SchemaError, LimitError)):
            raise
        raise SchemaError(str(exc)) from exc
    raise SchemaError(f"unknown state kind {kind!r}")


def state_from_spec(spec: dict) -> tuple[np.ndarray, Ensemble]:
    """Build a state vector (single pure term) or density matrix, plus the
    decomposition certificate implied by the spec."""
    terms, n = _build(spec)
    E = Ensemble(tuple((p, xi) for p, _, xi in terms))
    if spec.get("kind") != "mixture":
        return terms[0][1], E
    if n > MIXED_CAP:
        raise LimitError(f"{n} qubits exceeds the mixed-state cap {MIXED_CAP}")
    rho = sum(p * projector(psi) for p, psi, _ in terms)
    return rho, E


def state_from_json(text: str) -> tuple[np.ndarray, Ensemble]:
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return state_from_spec(spec)


def witness_report(state: np.ndarray, f: GenFun, certified: Ensemble) -> dict:
    rep = verify_criterion(state, f, certified)
    out = rep.as_dict()
    out["excluded"] = criteria_exclude(f, rep.n, rep.fq)
    return out
