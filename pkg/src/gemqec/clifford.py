"""Clifford gates and layered circuits acting on Paulis (by conjugation) and on states.

A gate on ``k`` local qubits is described by its tableau: the images
U X_j U^dag and U Z_j U^dag for j = 0..k-1 as Hermitian Paulis on the k local
qubits.  Named gates and every element of the sampled two-qubit Clifford group
also carry a unitary so circuits can act on statevectors.
"""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import CircuitError, DimensionError
from .pauli import PauliOperator, StabilizerCode, commutes

_SQRT_HALF = 1 / np.sqrt(2)

_UNITARIES = {
    "H": np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT_HALF,
    "S": np.diag([1, 1j]).astype(complex),
    "Sdg": np.diag([1, -1j]).astype(complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.diag([1, -1]).astype(complex),
    "CX": np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex),
    "CZ": np.diag([1, 1, 1, -1]).astype(complex),
}

# images of (X_0, Z_0[, X_1, Z_1]) under conjugation
_IMAGES = {
    "H": ("Z", "X"),
    "S": ("Y", "Z"),
    "Sdg": ("-Y", "Z"),
    "X": ("X", "-Z"),
    "Y": ("-X", "-Z"),
    "Z": ("-X", "Z"),
    "CX": ("XX", "ZI", "IX", "ZZ"),
    "CZ": ("XZ", "ZI", "ZX", "IZ"),
}

GATE_ARITY = {name: (2 if name in ("CX", "CZ") else 1) for name in _IMAGES}


@dataclass(frozen=True)
class Gate:
    """A Clifford gate on ``qubits`` given by its conjugation tableau."""

    qubits: tuple[int, ...]
    images: tuple[PauliOperator, ...]
    unitary: np.ndarray | None = field(default=None, compare=False, repr=False)
    name: str = "clifford"

    def __post_init__(self):
        k = len(self.qubits)
        if len(set(self.qubits)) != k or k == 0:
            raise CircuitError(f"gate qubits {self.qubits} must be distinct and non-empty")
        if len(self.images) != 2 * k:
            raise CircuitError(f"a {k}-qubit gate needs {2 * k} images")
        for img in self.images:
            if img.n != k or not img.is_hermitian:
                raise CircuitError(f"image {img} is not a Hermitian {k}-qubit Pauli")
        # images must reproduce the commutation pattern of X_j, Z_j
        for a in range(2 * k):
            for b in range(a + 1, 2 * k):
                want = not (a // 2 == b // 2)
                if commutes(self.images[a], self.images[b]) != want:
                    raise CircuitError("gate images do not preserve commutation relations")
        if self.unitary is not None and self.unitary.shape != (2**k, 2**k):
            raise CircuitError("unitary shape does not match the gate size")

    @classmethod
    def named(cls, name: str, *qubits: int) -> Gate:
        if name not in _IMAGES:
            raise CircuitError(f"unknown gate {name!r}")
        if len(qubits) != GATE_ARITY[name]:
            raise CircuitError(f"{name} acts on {GATE_ARITY[name]} qubit(s)")
        images = tuple(PauliOperator.from_string(s) for s in _IMAGES[name])
        return cls(tuple(int(q) for q in qubits), images, _UNITARIES[name], name)

    @classmethod
    def from_images(cls, qubits: Sequence[int], images: Sequence[PauliOperator | str]) -> Gate:
        """Arbitrary symplectic gate; it has no unitary and cannot act on states."""
        imgs = tuple(p if isinstance(p, PauliOperator) else PauliOperator.from_string(p) for p in images)
        return cls(tuple(int(q) for q in qubits), imgs, None, "symplectic")

    def conjugate(self, p: PauliOperator) -> PauliOperator:
        """U p U^dag for an n-qubit Pauli ``p``."""
        n = p.n
        if max(self.qubits) >= n:
            raise DimensionError(f"gate on {self.qubits} does not fit {n} qubits")
        x = p.x.copy()
        z = p.z.copy()
        phase = p.phase
        x[list(self.qubits)] = 0
        z[list(self.qubits)] = 0
        out = PauliOperator(x, z, phase)
        for j, q in enumerate(self.qubits):
            xq, zq = int(p.x[q]), int(p.z[q])
            if xq and zq:
                # Y = i X Z
                out = out.with_phase(out.phase + 1)
            if xq:
                out = out * self.images[2 * j].embed(n, self.qubits)
            if zq:
                out = out * self.images[2 * j + 1].embed(n, self.qubits)
        return out


class CliffordCircuit:
    """Layers of Clifford gates; gates inside one layer act on disjoint qubits."""

    def __init__(self, n: int, layers: Sequence[Sequence[Gate]] = ()):
        self.n = int(n)
        self.layers = tuple(tuple(layer) for layer in layers)
        for depth, layer in enumerate(self.layers):
            used: set[int] = set()
            for gate in layer:
                if any(q < 0 or q >= self.n for q in gate.qubits):
                    raise CircuitError(f"layer {depth}: gate on {gate.qubits} outside 0..{self.n - 1}")
                if used & set(gate.qubits):
                    raise CircuitError(f"layer {depth}: gates overlap on {sorted(used & set(gate.qubits))}")
                used |= set(gate.qubits)

    @property
    def depth(self) -> int:
        return len(self.layers)

    def conjugate(self, p: PauliOperator) -> PauliOperator:
        if p.n != self.n:
            raise DimensionError(f"circuit on {self.n} qubits, operator on {p.n}")
        for layer in self.layers:
            for gate in layer:
                p = gate.conjugate(p)
        return p

    def apply(self, psi: np.ndarray) -> np.ndarray:
        """U|psi> for a statevector with qubit 0 as the most significant bit."""
        psi = np.asarray(psi, dtype=complex)
        if psi.size != 2**self.n:
            raise DimensionError(f"state has {psi.size} amplitudes, circuit has {self.n} qubits")
        for layer in self.layers:
            for gate in layer:
                if gate.unitary is None:
                    raise CircuitError("symplectic-only gate cannot act on a statevector")
                psi = apply_unitary(psi, self.n, gate.qubits, gate.unitary)
        return psi

    @classmethod
    def parse(cls, text: str, n: int) -> CliffordCircuit:
        """One layer per line, gates separated by ';' or ',' (e.g. ``CX 0 1; H 2``)."""
        layers = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            layer = []
            for item in line.replace(",", ";").split(";"):
                parts = item.split()
                if not parts:
                    continue
                try:
                    layer.append(Gate.named(parts[0], *(int(t) for t in parts[1:])))
                except (CircuitError, ValueError) as exc:
                    raise CircuitError(f"line {lineno}: {exc}") from None
            layers.append(layer)
        try:
            return cls(n, layers)
        except CircuitError as exc:
            raise CircuitError(f"circuit text: {exc}") from None

    def to_text(self) -> str:
        lines = []
        for layer in self.layers:
            items = []
            for g in layer:
                if g.name not in _IMAGES:
                    raise CircuitError("only named gates have a text form")
                items.append(" ".join([g.name, *map(str, g.qubits)]))
            lines.append("; ".join(items))
        return "\n".join(lines) + "\n"


def apply_unitary(psi: np.ndarray, n: int, qubits: Sequence[int], u: np.ndarray) -> np.ndarray:
    k = len(qubits)
    t = psi.reshape([2] * n)
    t = np.moveaxis(t, list(qubits), list(range(k)))
    shape = t.shape
    t = (u @ t.reshape(2**k, -1)).reshape(shape)
    t = np.moveaxis(t, list(range(k)), list(qubits))
    return t.reshape(-1)


def conjugate_by_clifford(code: StabilizerCode, circuit: CliffordCircuit) -> StabilizerCode:
    """The code U C: generators and logical operators mapped to U P U^dag."""
    if circuit.n != code.n:
        raise DimensionError(f"circuit on {circuit.n} qubits, code on {code.n}")
    gens = [circuit.conjugate(g) for g in code.generators]
    logicals = [(circuit.conjugate(xl), circuit.conjugate(zl)) for xl, zl in code.logicals]
    return StabilizerCode(gens, n=code.n, logicals=logicals, name=code.name)


# --- enumerated Clifford groups --------------------------------------------
#
# Tableau rows are (x bits, z bits, sign bit) tuples updated with the
# Aaronson-Gottesman rules, which is much cheaper than Pauli objects for BFS.


def _row_h(row, a, k):
    x, z, r = list(row[:k]), list(row[k : 2 * k]), row[2 * k]
    r ^= x[a] & z[a]
    x[a], z[a] = z[a], x[a]
    return (*x, *z, r)


def _row_s(row, a, k):
    x, z, r = list(row[:k]), list(row[k : 2 * k]), row[2 * k]
    r ^= x[a] & z[a]
    z[a] ^= x[a]
    return (*x, *z, r)


def _row_cx(row, a, b, k):
    x, z, r = list(row[:k]), list(row[k : 2 * k]), row[2 * k]
    r ^= x[a] & z[b] & (x[b] ^ z[a] ^ 1)
    x[b] ^= x[a]
    z[a] ^= z[b]
    return (*x, *z, r)


def _generators(k: int):
    gens = []
    for a in range(k):
        gens.append((("H", a), functools.partial(_row_h, a=a, k=k)))
        gens.append((("S", a), functools.partial(_row_s, a=a, k=k)))
    if k == 2:
        gens.append((("CX", 0, 1), functools.partial(_row_cx, a=0, b=1, k=k)))
    return gens


@functools.lru_cache(maxsize=None)
def _enumerate_group(k: int):
    """Breadth-first enumeration of the k-qubit Clifford group modulo global phase.

    Returns a list of (tableau, word) where ``word`` is the sequence of
    generator gates applied first-to-last.
    """
    ident = []
    for j in range(2 * k):
        x = [0] * k
        z = [0] * k
        (x if j % 2 == 0 else z)[j // 2] = 1
        ident.append((*x, *z, 0))
    start = tuple(ident)
    gens = _generators(k)
    seen = {start: ()}
    order = [start]
    queue = deque([start])
    while queue:
        tab = queue.popleft()
        word = seen[tab]
        for label, rule in gens:
            nxt = tuple(rule(row) for row in tab)
            if nxt not in seen:
                seen[nxt] = word + (label,)
                order.append(nxt)
                queue.append(nxt)
    return [(tab, seen[tab]) for tab in order]


def _word_unitary(word, k: int) -> np.ndarray:
    u = np.eye(2**k, dtype=complex)
    for label in word:
        name, *qs = label
        if name == "CX":
            g = _UNITARIES["CX"]
        elif k == 1:
            g = _UNITARIES[name]
        else:
            mats = [np.eye(2, dtype=complex)] * k
            mats[qs[0]] = _UNITARIES[name]
            g = mats[0]
            for m in mats[1:]:
                g = np.kron(g, m)
        u = g @ u
    return u


def _tableau_images(tab, k: int) -> tuple[PauliOperator, ...]:
    return tuple(PauliOperator(row[:k], row[k : 2 * k], 2 * row[2 * k]) for row in tab)


def clifford_group_size(k: int) -> int:
    return len(_enumerate_group(k))


def clifford_element(k: int, index: int, qubits: Sequence[int]) -> Gate:
    """Element ``index`` of the enumerated k-qubit Clifford group placed on ``qubits``."""
    tab, word = _enumerate_group(k)[index]
    return Gate(tuple(qubits), _tableau_images(tab, k), _word_unitary(word, k), name=f"C{k}[{index}]")


def single_qubit_cliffords(qubit: int = 0) -> list[Gate]:
    return [clifford_element(1, i, (qubit,)) for i in range(clifford_group_size(1))]


def random_two_qubit_clifford(rng: np.random.Generator, qubits: Sequence[int]) -> Gate:
    """Uniformly random element of the two-qubit Clifford group (11520 elements)."""
    return clifford_element(2, int(rng.integers(clifford_group_size(2))), qubits)


def random_layer(n: int, rng: np.random.Generator) -> list[Gate]:
    """Random perfect matching of the qubits, one uniform two-qubit Clifford per pair."""
    perm = rng.permutation(n)
    layer = []
    for a, b in zip(perm[0::2], perm[1::2]):
        layer.append(random_two_qubit_clifford(rng, (int(a), int(b))))
    return layer


def random_circuit(n: int, depth: int, rng: np.random.Generator) -> CliffordCircuit:
    return CliffordCircuit(n, [random_layer(n, rng) for _ in range(depth)])
