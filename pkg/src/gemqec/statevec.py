"""Dense statevector routines.

States are plain complex numpy vectors of length 2^n; qubit 0 is the most
significant bit of the basis index, so ``psi.reshape([2] * n)`` has qubit q on
axis q.  Codes that are not (or not only) stabilizer codes are carried as a
``GeneralCode``: an orthonormal basis of the code space.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError, InvalidCodeError, ResourceError
from .pauli import PauliOperator, StabilizerCode
from .subsets import stabilizer_group_on

DEFAULT_MAX_QUBITS = 20
HARD_MAX_QUBITS = 24
MAX_SUBSET = 12
KL_BUDGET = 2e10
ZERO_AMPLITUDE = 1e-10


def num_qubits(psi: np.ndarray) -> int:
    n = int(round(math.log2(psi.size)))
    if 2**n != psi.size:
        raise DimensionError(f"length {psi.size} is not a power of two")
    return n


def check_qubits(n: int, max_qubits: int = DEFAULT_MAX_QUBITS) -> None:
    if max_qubits > HARD_MAX_QUBITS:
        raise ResourceError(f"max_qubits is capped at {HARD_MAX_QUBITS}", needed=max_qubits, budget=HARD_MAX_QUBITS)
    if n > max_qubits:
        raise ResourceError(f"{n} qubits exceeds the statevector budget of {max_qubits}", needed=n, budget=max_qubits)


def _mask(bits: np.ndarray) -> int:
    out = 0
    for b in bits:
        out = (out << 1) | int(b)
    return out


def _mask_bits(mask: int, n: int) -> np.ndarray:
    return np.array([(mask >> (n - 1 - q)) & 1 for q in range(n)], dtype=np.uint8)


def _popcount(a):
    return np.bitwise_count(np.asarray(a, dtype=np.uint64)).astype(np.int64)


def apply_pauli(psi: np.ndarray, p: PauliOperator) -> np.ndarray:
    n = num_qubits(psi)
    if p.n != n:
        raise DimensionError(f"operator on {p.n} qubits, state on {n}")
    xm, zm = _mask(p.x), _mask(p.z)
    idx = np.arange(psi.size, dtype=np.uint64)
    src = idx ^ np.uint64(xm)
    signs = 1 - 2 * (_popcount(src & np.uint64(zm)) & 1)
    phase = 1j ** ((p.phase + int(np.dot(p.x, p.z))) % 4)
    return phase * signs * psi[src.astype(np.int64)]


def expectation(psi: np.ndarray, p: PauliOperator) -> complex:
    return complex(np.vdot(psi, apply_pauli(psi, p)))


def fix_global_phase(psi: np.ndarray) -> np.ndarray:
    """Rotate so the first amplitude of maximal magnitude is real and positive."""
    mags = np.abs(psi)
    i = int(np.argmax(mags >= mags.max() - 1e-12))
    return psi * (abs(psi[i]) / psi[i])


# --- codes ------------------------------------------------------------------


@dataclass
class GeneralCode:
    """Code space given by an orthonormal basis (rows of ``basis``)."""

    n: int
    k: int
    basis: np.ndarray
    claimed_distance: int | None = None
    labels: tuple[str, ...] | None = None
    name: str | None = None

    def __post_init__(self):
        self.basis = np.asarray(self.basis, dtype=complex)
        if self.basis.shape != (2**self.k, 2**self.n):
            raise DimensionError(f"basis shape {self.basis.shape} does not match n={self.n}, k={self.k}")
        gram = self.basis.conj() @ self.basis.T
        if not np.allclose(gram, np.eye(2**self.k), atol=1e-10, rtol=0):
            raise InvalidCodeError("basis is not orthonormal")
        if self.labels is not None and len(self.labels) != 2**self.k:
            raise ValueError("one label per basis state required")

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "k": self.k,
            "basis": [[[float(a.real), float(a.imag)] for a in vec] for vec in self.basis],
        }
        if self.claimed_distance is not None:
            out["claimed_distance"] = self.claimed_distance
        return out

    @classmethod
    def from_json(cls, data: dict | str) -> GeneralCode:
        if isinstance(data, str):
            data = json.loads(data)
        basis = np.array([[complex(re, im) for re, im in vec] for vec in data["basis"]])
        return cls(int(data["n"]), int(data["k"]), basis, data.get("claimed_distance"))


def stabilizer_logical_state(
    code: StabilizerCode,
    outcomes: Sequence[int] | int = 0,
    basis: str = "z",
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> np.ndarray:
    """Code state with prescribed logical eigenvalues (+1 for bit 0, -1 for bit 1).

    ``basis="z"`` fixes the logical Z operators, ``basis="x"`` the logical X ones.
    Built by projecting computational basis states with prod_a (I + S_a)/2 and
    the logical projectors, trying seeds in index order until one survives.
    """
    check_qubits(code.n, max_qubits)
    if isinstance(outcomes, (int, np.integer)):
        outcomes = [int(outcomes)]
    outcomes = list(outcomes)
    if len(outcomes) != code.k:
        raise ValueError(f"need {code.k} logical outcomes")
    which = {"z": 1, "x": 0}[basis]
    ops = list(code.generators)
    ops += [pair[which].with_phase(pair[which].phase + 2 * int(o)) for pair, o in zip(code.logicals, outcomes)]
    dim = 2**code.n
    for seed in range(dim):
        psi = np.zeros(dim, dtype=complex)
        psi[seed] = 1.0
        for s in ops:
            psi = 0.5 * (psi + apply_pauli(psi, s))
        norm = np.linalg.norm(psi)
        if norm > 1e-10:
            return fix_global_phase(psi / norm)
    raise InvalidCodeError("projection annihilated every computational basis state")


def code_space_basis(code: StabilizerCode, max_qubits: int = DEFAULT_MAX_QUBITS) -> GeneralCode:
    """Logical-Z eigenbasis of a stabilizer code as a GeneralCode."""
    basis = [
        stabilizer_logical_state(code, list(bits), max_qubits=max_qubits)
        for bits in itertools.product((0, 1), repeat=code.k)
    ]
    return GeneralCode(code.n, code.k, np.array(basis), name=code.name)


def random_logical_state(code: GeneralCode, rng: np.random.Generator) -> np.ndarray:
    coeffs = rng.normal(size=2**code.k) + 1j * rng.normal(size=2**code.k)
    coeffs /= np.linalg.norm(coeffs)
    return coeffs @ code.basis


# --- reduced states and entropies --------------------------------------------


def reduced_density_matrix(psi: np.ndarray, qubits: Sequence[int]) -> np.ndarray:
    """Partial trace onto ``qubits``; the first listed qubit is the most significant."""
    n = num_qubits(psi)
    qs = [int(q) for q in qubits]
    if len(qs) > MAX_SUBSET:
        raise ResourceError(f"|A| = {len(qs)} exceeds {MAX_SUBSET}", needed=len(qs), budget=MAX_SUBSET)
    if len(set(qs)) != len(qs) or any(q < 0 or q >= n for q in qs):
        raise ValueError(f"invalid qubit subset {qs}")
    t = np.moveaxis(psi.reshape([2] * n), qs, list(range(len(qs))))
    m = t.reshape(2 ** len(qs), -1)
    return m @ m.conj().T


def maximally_mixed_rdm(code: GeneralCode, qubits: Sequence[int]) -> np.ndarray:
    return sum(reduced_density_matrix(b, qubits) for b in code.basis) / code.basis.shape[0]


def eta_from_group(code: StabilizerCode, qubits: Sequence[int]) -> np.ndarray:
    """(1/2^|A|) sum_{S in S(A)} S restricted to A, qubits ordered as given."""
    qs = [int(q) for q in qubits]
    if len(qs) > MAX_SUBSET:
        raise ResourceError(f"|A| = {len(qs)} exceeds {MAX_SUBSET}", needed=len(qs), budget=MAX_SUBSET)
    dim = 2 ** len(qs)
    out = np.zeros((dim, dim), dtype=complex)
    for s in stabilizer_group_on(code, qs):
        out += s.restrict(qs).to_matrix()
    return out / dim


def _eigenvalues(rho: np.ndarray) -> np.ndarray:
    w = np.linalg.eigvalsh(rho)
    return np.clip(w, 0.0, None)


def von_neumann_entropy(rho: np.ndarray) -> float:
    w = _eigenvalues(rho)
    w = w[w > 1e-15]
    return float(-np.sum(w * np.log2(w)))


def renyi_entropy(rho: np.ndarray, alpha: float) -> float:
    if alpha == 1:
        raise ValueError("alpha = 1 is the von Neumann entropy")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    w = _eigenvalues(rho)
    return float(np.log2(np.sum(w**alpha)) / (1 - alpha))


def single_qubit_entropies(psi: np.ndarray) -> np.ndarray:
    return np.array([von_neumann_entropy(reduced_density_matrix(psi, [q])) for q in range(num_qubits(psi))])


def max_single_qubit_entropy(psi: np.ndarray) -> tuple[int, float]:
    ent = single_qubit_entropies(psi)
    q = int(np.argmax(ent))
    return q, float(ent[q])


# --- postselection -------------------------------------------------------------


def _project_out(psi: np.ndarray, qubit: int, outcome: int) -> np.ndarray:
    n = num_qubits(psi)
    return np.take(psi.reshape([2] * n), outcome, axis=qubit).reshape(-1)


def postselect(target, qubit: int, outcome: int, tol: float = 1e-12):
    """Project ``qubit`` onto |outcome> and drop it.

    For a state, returns the renormalized (n-1)-qubit state.  For a GeneralCode,
    returns the code spanned by the projected basis with the shared
    normalization, claimed distance lowered by one (not below 1).  Returns None
    when the projection annihilates the input.
    """
    if outcome not in (0, 1):
        raise ValueError("outcome must be 0 or 1")
    if isinstance(target, GeneralCode):
        proj = np.array([_project_out(b, qubit, outcome) for b in target.basis])
        gram = proj.conj() @ proj.T
        c = float(np.real(gram[0, 0]))
        if np.max(np.abs(np.diag(gram))) <= tol:
            return None
        if not np.allclose(gram, c * np.eye(len(gram)), atol=1e-9, rtol=0):
            raise InvalidCodeError("projected basis is not proportional to orthonormal; code distance must be >= 2")
        d = target.claimed_distance
        return GeneralCode(
            target.n - 1,
            target.k,
            proj / math.sqrt(c),
            claimed_distance=None if d is None else max(1, d - 1),
            labels=target.labels,
            name=target.name,
        )
    psi = np.asarray(target, dtype=complex)
    out = _project_out(psi, qubit, outcome)
    norm = np.linalg.norm(out)
    if norm <= math.sqrt(tol):
        return None
    return out / norm


# --- Knill-Laflamme verification --------------------------------------------------


def _wht(v: np.ndarray) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform: out[z] = sum_c (-1)^{z.c} v[c]."""
    a = v.copy()
    size = a.size
    h = 1
    while h < size:
        a = a.reshape(-1, 2, h)
        a = np.stack([a[:, 0] + a[:, 1], a[:, 0] - a[:, 1]], axis=1)
        h *= 2
    return a.reshape(-1)


@dataclass
class KLResult:
    passed: bool
    d: int
    checked: int
    witness: PauliOperator | None = None
    element: tuple[int, int] | None = None
    value: complex | None = None
    reference: complex | None = None

    def __bool__(self) -> bool:
        return self.passed


def kl_verify_distance(code: GeneralCode, d: int, tol: float = 1e-9, budget: float = KL_BUDGET) -> KLResult:
    """Check <psi_i|E|psi_j> = c_E delta_ij for every Pauli E of weight <= d - 1.

    Paulis are grouped by X part: for fixed x, the matrix elements of all
    Z parts at once are a Walsh-Hadamard transform of conj(psi_i) * psi_j(. ^ x).
    On failure the lowest-index violating Pauli is returned as the witness.
    """
    n = code.n
    w = d - 1
    if w <= 0:
        return KLResult(True, d, 1)
    w = min(w, n)
    dim_k = code.basis.shape[0]
    xmasks = [sum(1 << (n - 1 - q) for q in sup) for r in range(w + 1) for sup in itertools.combinations(range(n), r)]
    work = len(xmasks) * dim_k * dim_k * (2**n) * max(n, 1)
    if work > budget:
        raise ResourceError(f"KL sweep needs ~{work:.3g} operations, budget {budget:.3g}", needed=work, budget=budget)
    idx = np.arange(2**n, dtype=np.uint64)
    checked = 0
    for xm in xmasks:
        allowed = _popcount(idx | np.uint64(xm)) <= w
        zs = np.nonzero(allowed)[0]
        checked += zs.size
        src = (idx ^ np.uint64(xm)).astype(np.int64)
        signs = 1 - 2 * (_popcount(np.uint64(xm) & idx[zs]) & 1)
        phase = 1j ** (_popcount(np.uint64(xm) & idx[zs]) % 4)
        vals = np.empty((dim_k, dim_k, zs.size), dtype=complex)
        for i in range(dim_k):
            for j in range(dim_k):
                t = _wht(code.basis[i].conj() * code.basis[j][src])
                vals[i, j] = phase * signs * t[zs]
        diag = np.array([vals[i, i] for i in range(dim_k)])
        bad = np.zeros(zs.size, bool)
        if dim_k > 1:
            bad |= np.max(np.abs(diag - diag[0]), axis=0) > tol
            off = vals.copy()
            for i in range(dim_k):
                off[i, i] = 0
            bad |= np.max(np.abs(off.reshape(dim_k * dim_k, -1)), axis=0) > tol
        if bad.any():
            pos = int(np.nonzero(bad)[0][0])
            zm = int(zs[pos])
            witness = PauliOperator(_mask_bits(xm, n), _mask_bits(zm, n))
            m = vals[:, :, pos]
            diff = np.abs(m - np.diag(np.full(dim_k, m[0, 0])))
            i, j = np.unravel_index(int(np.argmax(diff)), diff.shape)
            return KLResult(False, d, checked, witness, (int(i), int(j)), complex(m[i, j]), complex(m[0, 0]))
    return KLResult(True, d, checked)


def kl_distance(code: GeneralCode, d_max: int | None = None, budget: float = KL_BUDGET) -> tuple[int, bool]:
    """Largest d <= d_max passing the KL check, and whether it is exact.

    ``exact`` is False when the sweep stopped at ``d_max`` without a failure.
    """
    d_max = code.n + 1 if d_max is None else d_max
    d = 1
    while d < d_max:
        if not kl_verify_distance(code, d + 1, budget=budget):
            return d, True
        d += 1
    return d, False


# --- computational-basis statistics ----------------------------------------------


def weight_distribution(psi: np.ndarray) -> np.ndarray:
    """p_t = Pr[|x| = t] for t = 0..n under measurement in the computational basis."""
    n = num_qubits(psi)
    weights = _popcount(np.arange(psi.size, dtype=np.uint64))
    return np.bincount(weights, weights=np.abs(psi) ** 2, minlength=n + 1)


def binomial_moment(psi: np.ndarray, i: int) -> float:
    """S_i = sum over i-subsets of Pr[all bits in the subset are 1] = E[C(|x|, i)]."""
    p = weight_distribution(psi)
    return float(sum(p[t] * math.comb(t, i) for t in range(len(p))))


def expected_weight(psi: np.ndarray) -> float:
    return binomial_moment(psi, 1)


def nonzero_amplitude_count(psi: np.ndarray, tol: float = ZERO_AMPLITUDE) -> int:
    return int(np.count_nonzero(np.abs(psi) > tol))


def mutual_information(psi: np.ndarray, i: int, others: Sequence[int]) -> float:
    """Classical mutual information I(x_i ; x_J) of the measured bit string."""
    n = num_qubits(psi)
    js = [int(j) for j in others]
    if i in js:
        raise ValueError("qubit i must not be in J")
    probs = (np.abs(psi) ** 2).reshape([2] * n)
    keep = [i] + js
    drop = tuple(q for q in range(n) if q not in keep)
    joint = probs.sum(axis=drop) if drop else probs
    joint = np.moveaxis(joint, [sorted(keep).index(q) for q in keep], list(range(len(keep))))
    joint = joint.reshape(2, -1)
    pi = joint.sum(axis=1, keepdims=True)
    pj = joint.sum(axis=0, keepdims=True)
    mask = joint > 0
    ratio = joint[mask] / (pi @ pj)[mask]
    return float(max(0.0, np.sum(joint[mask] * np.log2(ratio))))
