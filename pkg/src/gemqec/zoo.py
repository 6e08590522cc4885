"""Code families: Shor's d x d code, the distance-2 permutation-invariant code and
its concatenations, the Dicke-state PI code, and small stabilizer fixtures."""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ResourceError
from .pauli import PauliOperator, StabilizerCode
from .statevec import DEFAULT_MAX_QUBITS, GeneralCode, check_qubits, code_space_basis


def _basis_index(bits) -> int:
    out = 0
    for b in bits:
        out = (out << 1) | int(b)
    return out


# --- Shor ----------------------------------------------------------------------


def shor_code(d: int) -> StabilizerCode:
    """Distance-d Shor code on a d x d grid, qubit (row i, column j) -> i*d + j.

    Z checks pair vertical neighbours inside a column; X checks act on two
    adjacent full columns.  Logical X is X on column 0, logical Z is Z on row 0.
    """
    if d < 2:
        raise DomainError("Shor code needs d >= 2")
    n = d * d
    q = lambda i, j: i * d + j  # noqa: E731
    gens = []
    for j in range(d):
        for i in range(d - 1):
            gens.append(PauliOperator.from_sparse(n, {q(i, j): "Z", q(i + 1, j): "Z"}))
    for j in range(d - 1):
        ops = {q(i, j): "X" for i in range(d)}
        ops.update({q(i, j + 1): "X" for i in range(d)})
        gens.append(PauliOperator.from_sparse(n, ops))
    x_logical = PauliOperator.from_sparse(n, {q(i, 0): "X" for i in range(d)})
    z_logical = PauliOperator.from_sparse(n, {q(0, j): "Z" for j in range(d)})
    return StabilizerCode(gens, n=n, logicals=[(x_logical, z_logical)], name=f"shor:{d}")


def shor_states(d: int, max_qubits: int = DEFAULT_MAX_QUBITS) -> dict[str, np.ndarray]:
    """psi_0 / psi_1 (products of column GHZ states with sign +/-) and psi_+/-."""
    n = d * d
    check_qubits(n, max_qubits)
    zero = np.zeros(2**n, dtype=complex)
    one = np.zeros(2**n, dtype=complex)
    amp = 2.0 ** (-d / 2)
    for cols in itertools.product((0, 1), repeat=d):
        idx = _basis_index([cols[j] for i in range(d) for j in range(d)])
        zero[idx] = amp
        one[idx] = amp * (-1) ** sum(cols)
    plus = (zero + one) / math.sqrt(2)
    minus = (zero - one) / math.sqrt(2)
    return {"zero": zero, "one": one, "plus": plus, "minus": minus}


def shor_general_code(d: int, max_qubits: int = DEFAULT_MAX_QUBITS) -> GeneralCode:
    st = shor_states(d, max_qubits)
    return GeneralCode(d * d, 1, np.array([st["zero"], st["one"]]), d, ("zero", "one"), f"shor:{d}")


# --- permutation-invariant codes ----------------------------------------------------


def dicke_state(n: int, m: int) -> np.ndarray:
    """Uniform superposition of all n-bit strings of Hamming weight m."""
    if not 0 <= m <= n:
        raise DomainError(f"need 0 <= m <= n, got m={m}, n={n}")
    weights = np.bitwise_count(np.arange(2**n, dtype=np.uint64))
    psi = (weights == m).astype(complex)
    return psi / math.sqrt(math.comb(n, m))


def pi_code(n: int) -> GeneralCode:
    """Distance-2 PI code: psi_0 = sqrt(1-2/n)|0^n> + sqrt(2/n)|1^n>, psi_1 = |D^n_2>."""
    if n < 4:
        raise DomainError("the permutation-invariant code needs n >= 4")
    zero = np.zeros(2**n, dtype=complex)
    zero[0] = math.sqrt((n - 2) / n)
    zero[-1] = math.sqrt(2 / n)
    one = dicke_state(n, 2)
    return GeneralCode(n, 1, np.array([zero, one]), 2, ("zero", "one"), f"pi:{n}")


def concatenate(outer: GeneralCode, inner: GeneralCode, claimed_distance: int | None = None) -> GeneralCode:
    """Replace every physical qubit of ``outer`` by a block of ``inner`` (k = 1 each)."""
    if outer.k != 1 or inner.k != 1:
        raise DomainError("concatenation here is for single logical qubit codes")
    n = outer.n * inner.n
    vecs = []
    for vec in outer.basis:
        t = vec.reshape([2] * outer.n)
        for _ in range(outer.n):
            # contract the leading logical axis; the new block axis lands at the end
            t = np.tensordot(t, inner.basis, axes=([0], [0]))
        vecs.append(t.reshape(-1))
    return GeneralCode(n, 1, np.array(vecs), claimed_distance, ("zero", "one"))


@dataclass(frozen=True)
class ConcatSchedule:
    """Block sizes n_1 (lowest level) .. n_l (highest level)."""

    sizes: tuple[int, ...]

    def __post_init__(self):
        if not self.sizes:
            raise DomainError("schedule needs at least one level")
        if any(s < 4 for s in self.sizes):
            raise DomainError("every block size must be >= 4")

    @property
    def levels(self) -> int:
        return len(self.sizes)

    @property
    def total_qubits(self) -> int:
        return math.prod(self.sizes)

    @property
    def distance(self) -> int:
        return 2**self.levels


def concat_schedule(M: int, levels: int) -> ConcatSchedule:
    """n_i = (2M)^(2^(l-i)), which solves n_l = 2M, n_i = 2M n_{i+1} ... n_l."""
    if 2 * M < 4:
        raise DomainError("need 2M >= 4 (block size n_l = 2M)")
    if levels < 1:
        raise DomainError("need at least one level")
    return ConcatSchedule(tuple((2 * M) ** (2 ** (levels - i)) for i in range(1, levels + 1)))


def concat_log_overlap(schedule: ConcatSchedule) -> float:
    """ln F_l for F_i = (1 - 2/n_i) F_{i-1}^{n_i}, F_0 = 1."""
    log_f = 0.0
    for size in schedule.sizes:
        log_f = math.log1p(-2.0 / size) + float(size) * log_f
    return log_f


def concat_overlap(schedule: ConcatSchedule) -> float:
    return math.exp(concat_log_overlap(schedule))


def concat_explicit(n1: int, n2: int, max_qubits: int = DEFAULT_MAX_QUBITS) -> GeneralCode:
    """Two-level concatenation C_{n2} o C_{n1} as an explicit statevector code."""
    check_qubits(n1 * n2, max_qubits)
    code = concatenate(pi_code(n2), pi_code(n1), claimed_distance=4)
    code.name = f"concat:{n1}x{n2}"
    return code


# --- Dicke-state PI code ----------------------------------------------------------


def _check_dicke(d: int) -> None:
    if d < 3 or d % 2 == 0:
        raise DomainError("the Dicke PI code needs an odd d >= 3")


def dicke_pi_code(d: int, max_qubits: int = DEFAULT_MAX_QUBITS) -> GeneralCode:
    """psi_+/- = 2^(-d/2) sum_l (+/-1)^l sqrt(C(d,l)) |D^n_{dl}> with n = d^2."""
    _check_dicke(d)
    n = d * d
    check_qubits(n, max_qubits)
    plus = np.zeros(2**n, dtype=complex)
    minus = np.zeros(2**n, dtype=complex)
    for l in range(d + 1):
        term = math.sqrt(math.comb(d, l)) * dicke_state(n, d * l)
        plus += term
        minus += (-1) ** l * term
    scale = 2.0 ** (-d / 2)
    return GeneralCode(n, 1, np.array([plus, minus]) * scale, d, ("plus", "minus"), f"dicke:{d}")


def dicke_plus_overlap(d: int) -> float:
    """<+^n|psi_+> = 2^(-(d+n)/2) sum_l sqrt(C(d,l) C(n,dl)), evaluated in log space."""
    _check_dicke(d)
    n = d * d

    def log_comb(a, b):
        return math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)

    logs = [0.5 * (log_comb(d, l) + log_comb(n, d * l)) for l in range(d + 1)]
    top = max(logs)
    total = top + math.log(sum(math.exp(v - top) for v in logs))
    return math.exp(total - 0.5 * (d + n) * math.log(2))


# --- fixtures ------------------------------------------------------------------


def five_qubit_code() -> StabilizerCode:
    gens = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
    return StabilizerCode(gens, name="five")


def repetition_zcheck_code(n: int) -> StabilizerCode:
    """Z_i Z_{i+1} checks on a chain; logical X = X^n, logical Z = Z_0."""
    if n < 2:
        raise DomainError("need n >= 2")
    gens = [PauliOperator.from_sparse(n, {i: "Z", i + 1: "Z"}) for i in range(n - 1)]
    logicals = [(PauliOperator.from_sparse(n, {i: "X" for i in range(n)}), PauliOperator.single(n, 0, "Z"))]
    return StabilizerCode(gens, n=n, logicals=logicals, name=f"repz:{n}")


def trivial_code(n: int) -> StabilizerCode:
    """No stabilizers: all n qubits are logical."""
    logicals = [(PauliOperator.single(n, q, "X"), PauliOperator.single(n, q, "Z")) for q in range(n)]
    return StabilizerCode([], n=n, logicals=logicals, name=f"trivial:{n}")


# --- named codes -------------------------------------------------------------------


@dataclass
class ZooCode:
    """A named code: its stabilizer description (if any) and statevector basis."""

    name: str
    n: int
    k: int
    claimed_distance: int
    stabilizer: StabilizerCode | None = None
    _general: GeneralCode | None = field(default=None, repr=False)
    _builder: object = field(default=None, repr=False)

    @property
    def general(self) -> GeneralCode:
        if self._general is None:
            self._general = self._builder()
            self._general.claimed_distance = self.claimed_distance
            self._general.name = self.name
        return self._general


_NAME = re.compile(r"^(shor|pi|dicke|repz):(\d+)$|^concat:(\d+)x(\d+)$|^five$")


def from_name(name: str, max_qubits: int = DEFAULT_MAX_QUBITS) -> ZooCode:
    """Resolve ``shor:<d>``, ``pi:<n>``, ``dicke:<d>``, ``concat:<n1>x<n2>``, ``five``, ``repz:<n>``."""
    m = _NAME.match(name.strip())
    if not m:
        raise ValueError(f"unknown code name {name!r}")
    if name == "five":
        code = five_qubit_code()
        return ZooCode(name, 5, 1, 3, code, _builder=lambda: code_space_basis(code, max_qubits))
    if m.group(3):
        n1, n2 = int(m.group(3)), int(m.group(4))
        if n1 < 4 or n2 < 4:
            raise DomainError("concatenated block sizes must be >= 4")
        return ZooCode(name, n1 * n2, 1, 4, _builder=lambda: concat_explicit(n1, n2, max_qubits))
    family, size = m.group(1), int(m.group(2))
    if family == "shor":
        code = shor_code(size)
        return ZooCode(name, size * size, 1, size, code, _builder=lambda: shor_general_code(size, max_qubits))
    if family == "pi":
        if size < 4:
            raise DomainError("the permutation-invariant code needs n >= 4")
        if size > max_qubits:
            raise ResourceError(f"{size} qubits exceeds the statevector budget", needed=size, budget=max_qubits)
        return ZooCode(name, size, 1, 2, _builder=lambda: pi_code(size))
    if family == "dicke":
        _check_dicke(size)
        return ZooCode(name, size * size, 1, size, _builder=lambda: dicke_pi_code(size, max_qubits))
    code = repetition_zcheck_code(size)
    return ZooCode(name, size, 1, 1, code, _builder=lambda: code_space_basis(code, max_qubits))


ZOO_NAMES = ("shor:2", "shor:3", "five", "repz:5", "pi:4", "pi:6", "pi:8", "dicke:3", "concat:4x4")


def named_state(entry: ZooCode, selector: str, rng: np.random.Generator | None = None) -> np.ndarray:
    """``zero``/``one``/``plus``/``minus``/``random`` logical state of a k = 1 zoo code.

    Labelled basis states win (Dicke's basis is already psi_+/-); otherwise
    plus/minus are (b0 +/- b1)/sqrt(2).
    """
    code = entry.general
    labels = code.labels or ()
    if selector in labels:
        return code.basis[labels.index(selector)]
    if selector == "random":
        rng = rng if rng is not None else np.random.default_rng(0xC0DE)
        coeffs = rng.normal(size=2**code.k) + 1j * rng.normal(size=2**code.k)
        return (coeffs / np.linalg.norm(coeffs)) @ code.basis
    if code.k == 1 and selector in ("zero", "one", "plus", "minus"):
        b0, b1 = code.basis
        return {
            "zero": b0,
            "one": b1,
            "plus": (b0 + b1) / math.sqrt(2),
            "minus": (b0 - b1) / math.sqrt(2),
        }[selector]
    raise ValueError(f"unknown state selector {selector!r}")
