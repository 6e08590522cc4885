"""Product-state overlaps and the alternating (higher-order power iteration)
estimate of the best product-state approximation of a statevector.

The estimate exhibits a feasible product state, so ``best_overlap`` is a lower
bound on the true maximum overlap and ``e0_upper = -log2(best_overlap)`` an
upper bound on E_0.  Nothing here certifies global optimality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .clifford import conjugate_by_clifford, random_circuit
from .errors import DimensionError, InvalidCodeError
from .pauli import StabilizerCode, distance
from .statevec import DEFAULT_MAX_QUBITS, num_qubits, stabilizer_logical_state

ZERO = np.array([1.0, 0.0], dtype=complex)
PLUS = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2)


def product_state(factors) -> np.ndarray:
    """Validated (n, 2) array of unit single-qubit factors."""
    phi = np.asarray(factors, dtype=complex)
    if phi.ndim != 2 or phi.shape[1] != 2:
        raise DimensionError("product state must have shape (n, 2)")
    if not np.allclose(np.linalg.norm(phi, axis=1), 1.0, atol=1e-12, rtol=0):
        raise ValueError("product-state factors must be unit vectors")
    return phi


def uniform_product(n: int, factor: np.ndarray) -> np.ndarray:
    return np.tile(factor, (n, 1))


def expand_product(phi: np.ndarray) -> np.ndarray:
    out = np.ones(1, dtype=complex)
    for f in phi:
        out = np.kron(out, f)
    return out


def product_overlap(psi: np.ndarray, phi: np.ndarray) -> complex:
    """<psi|phi> by contracting one qubit at a time."""
    n = num_qubits(psi)
    if len(phi) != n:
        raise DimensionError(f"state on {n} qubits, product state on {len(phi)}")
    t = psi.conj()
    for f in phi:
        t = f @ t.reshape(2, -1)
    return complex(t[0])


def environment_vector(psi: np.ndarray, phi: np.ndarray, i: int) -> np.ndarray:
    """v_i with <psi|phi> = <v_i|phi_i>: psi contracted with conj(phi_q), q != i.

    Replacing phi_i by v_i / |v_i| maximizes |<psi|phi>| over the i-th factor and
    the new overlap equals |v_i|.
    """
    n = num_qubits(psi)
    if len(phi) != n:
        raise DimensionError(f"state on {n} qubits, product state on {len(phi)}")
    t = np.moveaxis(psi.reshape([2] * n), i, 0)
    others = [q for q in range(n) if q != i]
    right = np.ones(1, dtype=complex)
    for q in others:
        right = np.kron(right, phi[q].conj())
    return t.reshape(2, -1) @ right


def haar_factor(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return v / np.linalg.norm(v)


@dataclass
class GemEstimate:
    best_overlap: float
    best_product: np.ndarray
    restarts_used: int
    sweeps_used: int
    converged: bool
    traces: list[list[float]] = field(default_factory=list)

    @property
    def e0_upper(self) -> float:
        if self.best_overlap <= 0:
            return math.inf
        return max(0.0, -math.log2(self.best_overlap))

    def to_json(self, seed=None) -> dict:
        return {
            "overlap": self.best_overlap,
            "e0_upper": self.e0_upper,
            "restarts": self.restarts_used,
            "sweeps": self.sweeps_used,
            "converged": self.converged,
            "traces": self.traces,
            "product_state": [[[float(a.real), float(a.imag)] for a in f] for f in self.best_product],
            "seed": seed,
        }


def _sweep(psi: np.ndarray, phi: np.ndarray, n: int) -> float:
    """One left-to-right pass of factor updates; returns the final squared overlap."""
    # right[i] = kron(conj(phi_{i+1}), ..., conj(phi_{n-1}))
    right = [None] * n
    acc = np.ones(1, dtype=complex)
    for i in range(n - 1, -1, -1):
        right[i] = acc
        acc = np.kron(phi[i].conj(), acc)
    left = psi  # contracted with conj(phi_q) for q < i as the pass proceeds
    norm = 0.0
    for i in range(n):
        m = left.reshape(2, -1)
        v = m @ right[i]
        norm = float(np.linalg.norm(v))
        if norm > 0:
            phi[i] = v / norm
        left = phi[i].conj() @ m
    return norm**2


def alternating_maximize(
    psi: np.ndarray,
    restarts: int = 8,
    max_sweeps: int = 500,
    tol: float = 1e-12,
    seed=0xC0DE,
) -> GemEstimate:
    """Cyclic coordinate ascent on the product-state factors.

    Restart 0 starts from |0...0>, restart 1 from |+...+>, the rest from
    Haar-random factors.  Each restart stops when the squared-overlap gain of a
    sweep drops below ``tol`` or after ``max_sweeps`` sweeps; the best restart wins.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    psi = np.asarray(psi, dtype=complex)
    n = num_qubits(psi)
    rng = np.random.default_rng(seed)
    best = None
    traces = []
    all_converged = True
    total_sweeps = 0
    for r in range(restarts):
        if r == 0:
            phi = uniform_product(n, ZERO)
        elif r == 1:
            phi = uniform_product(n, PLUS)
        else:
            phi = np.array([haar_factor(rng) for _ in range(n)])
        value = abs(product_overlap(psi, phi)) ** 2
        trace = [value]
        converged = False
        for _ in range(max_sweeps):
            new = _sweep(psi, phi, n)
            total_sweeps += 1
            trace.append(new)
            gain = new - value
            value = max(value, new)
            if gain < tol:
                converged = True
                break
        all_converged &= converged
        traces.append(trace)
        if best is None or value > best[0]:
            best = (value, phi.copy())
    return GemEstimate(float(min(best[0], 1.0)), best[1], restarts, total_sweeps, all_converged, traces)


@dataclass
class CliffordTrial:
    distance: int
    overlap: float | None


@dataclass
class CliffordExperiment:
    h: int
    base_distance: int
    trials: list[CliffordTrial]
    violations: list[str]

    @property
    def min_distance(self) -> int:
        return min(t.distance for t in self.trials)

    @property
    def mean_distance(self) -> float:
        return float(np.mean([t.distance for t in self.trials]))

    @property
    def max_overlap(self) -> float | None:
        vals = [t.overlap for t in self.trials if t.overlap is not None]
        return max(vals) if vals else None

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "h": self.h,
            "base_distance": self.base_distance,
            "trials": len(self.trials),
            "min_distance": self.min_distance,
            "mean_distance": self.mean_distance,
            "max_overlap": self.max_overlap,
            "violations": self.violations,
            "passed": self.passed,
        }


def clifford_gem_experiment(
    code: StabilizerCode,
    h: int,
    trials: int,
    seed=0xC0DE,
    psi: np.ndarray | None = None,
    base_distance: int | None = None,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> CliffordExperiment:
    """Random depth-h Clifford circuits U: distance of U C and |<U psi|0^n>|^2.

    Checks d' >= ceil(d / 2^h) on every image and, when the state fits the
    statevector budget, |<U psi|0^n>|^2 <= 2^(1 - d').  ``psi`` defaults to the
    logical state with all logical Z eigenvalues +1.
    """
    if code.k == 0:
        raise InvalidCodeError("code has no logical qubits")
    d = distance(code).d if base_distance is None else base_distance
    rng = np.random.default_rng(seed)
    if psi is None and code.n <= max_qubits:
        psi = stabilizer_logical_state(code, [0] * code.k, max_qubits=max_qubits)
    floor = math.ceil(d / 2**h)
    results = []
    violations = []
    for t in range(trials):
        circ = random_circuit(code.n, h, rng)
        image = conjugate_by_clifford(code, circ)
        dp = distance(image).d
        overlap = None
        if dp < floor:
            violations.append(f"trial {t}: distance {dp} < {floor}")
        if psi is not None:
            out = circ.apply(psi)
            overlap = float(abs(out[0]) ** 2)
            if overlap > 2.0 ** (1 - dp) + 1e-9:
                violations.append(f"trial {t}: overlap {overlap:.6g} > 2^(1-{dp})")
        results.append(CliffordTrial(dp, overlap))
    return CliffordExperiment(h, d, results, violations)
