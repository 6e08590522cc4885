"""Pauli operators and stabilizer codes in the binary symplectic representation.

A Pauli operator on n qubits is stored as two bit vectors ``x`` and ``z`` plus a
phase exponent ``phase`` (a power of i).  Qubit ``q`` carries

    (x_q, z_q) = (0, 0) -> I,  (1, 0) -> X,  (0, 1) -> Z,  (1, 1) -> Y,

with the Hermitian convention Y = iXZ, so ``phase`` in {0, 2} is a Hermitian
operator with sign +1 / -1.  Products may acquire odd phases (+-i); those are kept
exactly and rejected wherever a Hermitian operator is required.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import gf2
from .errors import DimensionError, InvalidCodeError, ResourceError

_CHARS = "IXZY"  # index = x + 2*z
_FROM_CHAR = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}

DEFAULT_DISTANCE_BUDGET = 10**8


class PauliOperator:
    """Immutable n-qubit Pauli operator ``i**phase * P_0 (x) ... (x) P_{n-1}``."""

    __slots__ = ("x", "z", "phase")

    def __init__(self, x, z, phase: int = 0):
        x = gf2.as_gf2(x).reshape(-1)
        z = gf2.as_gf2(z).reshape(-1)
        if x.shape != z.shape:
            raise DimensionError("x and z parts must have equal length")
        x.setflags(write=False)
        z.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "phase", int(phase) % 4)

    def __setattr__(self, name, value):
        raise AttributeError("PauliOperator is immutable")

    # construction ---------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls(np.zeros(n, np.uint8), np.zeros(n, np.uint8))

    @classmethod
    def from_string(cls, label: str) -> PauliOperator:
        """Parse labels such as ``"XZZXI"``, ``"-ZZI"`` or ``"+iXY"``."""
        s = label.strip()
        phase = 0
        if s.startswith(("+", "-")):
            phase = 2 if s[0] == "-" else 0
            s = s[1:]
        if s.startswith("i"):
            phase += 1
            s = s[1:]
        try:
            bits = [_FROM_CHAR[c] for c in s.upper()]
        except KeyError as exc:
            raise ValueError(f"invalid Pauli label {label!r}") from exc
        if not bits:
            raise ValueError("empty Pauli label")
        x, z = zip(*bits)
        return cls(x, z, phase)

    @classmethod
    def single(cls, n: int, qubit: int, kind: str) -> PauliOperator:
        x = np.zeros(n, np.uint8)
        z = np.zeros(n, np.uint8)
        x[qubit], z[qubit] = _FROM_CHAR[kind]
        return cls(x, z)

    @classmethod
    def from_sparse(cls, n: int, ops: dict[int, str], phase: int = 0) -> PauliOperator:
        x = np.zeros(n, np.uint8)
        z = np.zeros(n, np.uint8)
        for q, kind in ops.items():
            x[q], z[q] = _FROM_CHAR[kind]
        return cls(x, z, phase)

    @classmethod
    def from_symplectic(cls, v, phase: int = 0) -> PauliOperator:
        v = gf2.as_gf2(v).reshape(-1)
        n = v.size // 2
        return cls(v[:n], v[n:], phase)

    # basic properties -----------------------------------------------------

    @property
    def n(self) -> int:
        return self.x.size

    @property
    def sign(self) -> int:
        if self.phase % 2:
            raise ValueError(f"{self!r} is not Hermitian")
        return 1 if self.phase == 0 else -1

    @property
    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.x | self.z))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(int(q) for q in np.nonzero(self.x | self.z)[0])

    @property
    def symplectic(self) -> np.ndarray:
        return np.concatenate([self.x, self.z])

    def is_identity(self, ignore_phase: bool = True) -> bool:
        trivial = not (self.x.any() or self.z.any())
        return trivial and (ignore_phase or self.phase == 0)

    def local(self, qubit: int) -> str:
        return _CHARS[int(self.x[qubit]) + 2 * int(self.z[qubit])]

    def label(self) -> str:
        body = "".join(_CHARS[int(a) + 2 * int(b)] for a, b in zip(self.x, self.z))
        prefix = {0: "+", 1: "+i", 2: "-", 3: "-i"}[self.phase]
        return prefix + body

    def __repr__(self) -> str:
        return f"PauliOperator({self.label()!r})"

    def __str__(self) -> str:
        return self.label()

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return (
            self.phase == other.phase
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.z, other.z)
        )

    def __hash__(self) -> int:
        return hash((self.phase, self.x.tobytes(), self.z.tobytes()))

    def equal_up_to_phase(self, other: PauliOperator) -> bool:
        return np.array_equal(self.x, other.x) and np.array_equal(self.z, other.z)

    # algebra --------------------------------------------------------------

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        _check_n(self, other)
        x1, z1 = self.x.astype(np.int64), self.z.astype(np.int64)
        x2, z2 = other.x.astype(np.int64), other.z.astype(np.int64)
        # per-qubit i-exponents of sigma(x1,z1) * sigma(x2,z2), Aaronson-Gottesman convention
        g = np.where(
            (x1 == 1) & (z1 == 1),
            z2 - x2,
            np.where(x1 == 1, z2 * (2 * x2 - 1), np.where(z1 == 1, x2 * (1 - 2 * z2), 0)),
        )
        phase = self.phase + other.phase + int(g.sum())
        return PauliOperator(self.x ^ other.x, self.z ^ other.z, phase)

    def __neg__(self) -> PauliOperator:
        return PauliOperator(self.x, self.z, self.phase + 2)

    def with_phase(self, phase: int) -> PauliOperator:
        return PauliOperator(self.x, self.z, phase)

    def restrict(self, qubits: Sequence[int]) -> PauliOperator:
        """The tensor factor on ``qubits`` (in the given order), phase kept."""
        idx = list(qubits)
        return PauliOperator(self.x[idx], self.z[idx], self.phase)

    def embed(self, n: int, qubits: Sequence[int]) -> PauliOperator:
        x = np.zeros(n, np.uint8)
        z = np.zeros(n, np.uint8)
        x[list(qubits)] = self.x
        z[list(qubits)] = self.z
        return PauliOperator(x, z, self.phase)

    def commutes(self, other: PauliOperator) -> bool:
        return commutes(self, other)

    def to_matrix(self) -> np.ndarray:
        """Dense 2^n x 2^n matrix; qubit 0 is the most significant tensor factor."""
        mats = {
            "I": np.eye(2, dtype=complex),
            "X": np.array([[0, 1], [1, 0]], dtype=complex),
            "Z": np.array([[1, 0], [0, -1]], dtype=complex),
            "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
        }
        out = np.ones((1, 1), dtype=complex)
        for q in range(self.n):
            out = np.kron(out, mats[self.local(q)])
        return (1j**self.phase) * out


def _check_n(p: PauliOperator, q: PauliOperator) -> None:
    if p.n != q.n:
        raise DimensionError(f"operators act on {p.n} and {q.n} qubits")


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    """True iff ``p`` and ``q`` commute (symplectic form x_p.z_q + z_p.x_q = 0 mod 2)."""
    _check_n(p, q)
    s = int(np.dot(p.x, q.z)) + int(np.dot(p.z, q.x))
    return s % 2 == 0


def symplectic_products(vectors: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    """Pairwise symplectic forms between rows of ``vectors`` and rows of ``matrix``."""
    n = matrix.shape[1] // 2
    v = vectors.astype(np.int64)
    m = matrix.astype(np.int64)
    return (v[:, :n] @ m[:, n:].T + v[:, n:] @ m[:, :n].T) & 1


@dataclass(frozen=True)
class DistanceResult:
    """Outcome of the minimum-weight search.

    ``exact`` is False when no logical operator of weight <= ``w_max`` exists, in
    which case ``d`` is the certified lower bound ``w_max + 1``.
    """

    d: int
    exact: bool
    witness: PauliOperator | None = None

    def __int__(self) -> int:
        return self.d


class StabilizerCode:
    """Stabilizer code given by independent, pairwise commuting Hermitian generators.

    Logical operators may be supplied (they are validated); otherwise they are
    computed on first use by symplectic Gram-Schmidt.
    """

    def __init__(
        self,
        generators: Iterable[PauliOperator | str],
        n: int | None = None,
        logicals: Sequence[tuple[PauliOperator, PauliOperator]] | None = None,
        name: str | None = None,
    ):
        gens = tuple(g if isinstance(g, PauliOperator) else PauliOperator.from_string(g) for g in generators)
        if n is None:
            if not gens:
                raise InvalidCodeError("n is required for a code without generators")
            n = gens[0].n
        self.n = int(n)
        self.generators = gens
        self.name = name
        for g in gens:
            if g.n != self.n:
                raise DimensionError(f"generator {g} does not act on {self.n} qubits")
            if not g.is_hermitian:
                raise InvalidCodeError(f"generator {g} is not Hermitian")
        for a, b in itertools.combinations(gens, 2):
            if not commutes(a, b):
                raise InvalidCodeError(f"generators {a} and {b} anticommute")
        if gf2.rank(self.check_matrix) != len(gens):
            raise InvalidCodeError("generators are not independent")
        self._logicals = None
        if logicals is not None:
            self._logicals = tuple((xl, zl) for xl, zl in logicals)
            _validate_logicals(self, self._logicals)

    @property
    def m(self) -> int:
        return len(self.generators)

    @property
    def k(self) -> int:
        return self.n - self.m

    @property
    def check_matrix(self) -> np.ndarray:
        if not self.generators:
            return np.zeros((0, 2 * self.n), np.uint8)
        return np.array([g.symplectic for g in self.generators], dtype=np.uint8)

    @property
    def logicals(self) -> tuple[tuple[PauliOperator, PauliOperator], ...]:
        if self._logicals is None:
            self._logicals = _gram_schmidt_logicals(self)
        return self._logicals

    def group_element(self, coefficients) -> PauliOperator:
        """Ordered product of the generators selected by a GF(2) coefficient vector."""
        out = PauliOperator.identity(self.n)
        for c, g in zip(gf2.as_gf2(coefficients), self.generators):
            if c:
                out = out * g
        return out

    def group(self) -> Iterable[PauliOperator]:
        """All 2^m stabilizer group elements (with signs)."""
        for bits in itertools.product((0, 1), repeat=self.m):
            yield self.group_element(bits)

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<StabilizerCode{tag} [[{self.n},{self.k}]]>"

    # text format ----------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"n={self.n} k={self.k}"]
        for g in self.generators:
            body = g.label()
            lines.append(body[1:] if body[0] == "+" else body)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, name: str | None = None) -> StabilizerCode:
        """Parse ``n=<int> k=<int>`` followed by one generator per line."""
        rows = []
        header = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if header is None:
                fields = dict(part.split("=", 1) for part in line.split() if "=" in part)
                if set(fields) != {"n", "k"}:
                    raise CodeParseError(lineno, "expected header 'n=<int> k=<int>'")
                try:
                    header = (int(fields["n"]), int(fields["k"]))
                except ValueError:
                    raise CodeParseError(lineno, "n and k must be integers") from None
                continue
            try:
                p = PauliOperator.from_string(line)
            except ValueError as exc:
                raise CodeParseError(lineno, str(exc)) from None
            if p.n != header[0] or p.phase % 2:
                raise CodeParseError(lineno, f"generator must be a +-Pauli string of length {header[0]}")
            rows.append(p)
        if header is None:
            raise CodeParseError(1, "empty code file")
        n, k = header
        if len(rows) != n - k:
            raise CodeParseError(lineno, f"expected {n - k} generators, found {len(rows)}")
        return cls(rows, n=n, name=name)


class CodeParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _validate_logicals(code: StabilizerCode, pairs) -> None:
    if len(pairs) != code.k:
        raise InvalidCodeError(f"expected {code.k} logical pairs, got {len(pairs)}")
    ops = [p for pair in pairs for p in pair]
    for op in ops:
        if op.n != code.n or not op.is_hermitian:
            raise InvalidCodeError(f"logical {op} has wrong size or is not Hermitian")
        if not all(commutes(op, g) for g in code.generators):
            raise InvalidCodeError(f"logical {op} does not commute with the stabilizers")
    for i, (xi, zi) in enumerate(pairs):
        for j, (xj, zj) in enumerate(pairs):
            if commutes(xi, zj) != (i != j):
                raise InvalidCodeError("logical X/Z pairs have the wrong commutation pattern")
            if not commutes(xi, xj) or not commutes(zi, zj):
                raise InvalidCodeError("logical operators of the same type must commute")


def _gram_schmidt_logicals(code: StabilizerCode):
    n = code.n
    G = code.check_matrix
    swapped = np.concatenate([G[:, n:], G[:, :n]], axis=1)
    normalizer = gf2.nullspace(swapped)
    span = G.copy()
    r = gf2.rank(span)
    pool = []
    for v in normalizer:
        trial = np.vstack([span, v[None, :]])
        rt = gf2.rank(trial)
        if rt > r:
            span, r = trial, rt
            pool.append(v.copy())
    if len(pool) != 2 * code.k:
        raise InvalidCodeError("could not complete the generators to a symplectic basis")

    def form(a, b):
        return (int(np.dot(a[:n], b[n:])) + int(np.dot(a[n:], b[:n]))) % 2

    pairs = []
    while pool:
        v = pool.pop(0)
        idx = next((i for i, w in enumerate(pool) if form(v, w)), None)
        if idx is None:
            raise InvalidCodeError("degenerate symplectic pool; generators do not define a valid code")
        w = pool.pop(idx)
        for i, u in enumerate(pool):
            u = u.copy()
            if form(u, w):
                u ^= v
            if form(u, v):
                u ^= w
            pool[i] = u
        pairs.append((PauliOperator.from_symplectic(v), PauliOperator.from_symplectic(w)))
    return tuple(pairs)


def logical_operators(code: StabilizerCode) -> tuple[tuple[PauliOperator, PauliOperator], ...]:
    """k anticommuting pairs (X_i, Z_i) commuting with the stabilizers and each other."""
    return code.logicals


def in_group(code: StabilizerCode, p: PauliOperator, up_to_sign: bool = False):
    """Decide membership in the stabilizer group.

    Returns ``(member, coefficients)`` where ``coefficients`` is the GF(2)
    generator combination reproducing ``p`` (None if there is none).  With the
    default ``up_to_sign=False`` the sign must also match, so ``-S`` is not a
    member when ``S`` is.
    """
    if p.n != code.n:
        raise DimensionError(f"operator on {p.n} qubits, code on {code.n}")
    coeffs = gf2.solve(code.check_matrix.T, p.symplectic)
    if coeffs is None:
        return False, None
    if up_to_sign:
        return True, coeffs
    return code.group_element(coeffs) == p, coeffs


def is_logical(code: StabilizerCode, p: PauliOperator) -> bool:
    """Element of the normalizer that is not itself a stabilizer (up to phase)."""
    if not all(commutes(p, g) for g in code.generators):
        return False
    return gf2.solve(code.check_matrix.T, p.symplectic) is None


def _logical_matrix(code: StabilizerCode) -> np.ndarray:
    return np.array([op.symplectic for pair in code.logicals for op in pair], dtype=np.uint8)


def _weight_candidates(n: int, w: int, supports: Sequence[tuple[int, ...]]):
    """All Paulis with exactly the given supports, as (x, z) uint8 arrays."""
    letters = np.array(list(itertools.product((1, 2, 3), repeat=w)), dtype=np.uint8)  # X, Z, Y
    sup = np.asarray(supports, dtype=np.int64)
    count = len(supports) * len(letters)
    x = np.zeros((count, n), np.uint8)
    z = np.zeros((count, n), np.uint8)
    rows = np.arange(count)
    sup_rep = np.repeat(sup, len(letters), axis=0)
    let_rep = np.tile(letters, (len(supports), 1))
    for j in range(w):
        x[rows, sup_rep[:, j]] = let_rep[:, j] & 1
        z[rows, sup_rep[:, j]] = let_rep[:, j] >> 1
    return x, z


def distance(
    code: StabilizerCode,
    w_max: int | None = None,
    budget: float = DEFAULT_DISTANCE_BUDGET,
    chunk: int = 4096,
) -> DistanceResult:
    """Minimum weight of a Pauli in N(S) \\ S, searched by increasing weight.

    Raises ResourceError before enumerating any weight class whose size
    C(n, w) * 3^w exceeds ``budget``.
    """
    if code.k == 0:
        raise InvalidCodeError("a code with k = 0 has no logical operators")
    n = code.n
    w_max = n if w_max is None else int(w_max)
    if w_max < 1:
        raise ValueError("w_max must be >= 1")
    G = code.check_matrix
    L = _logical_matrix(code)
    for w in range(1, min(w_max, n) + 1):
        size = math.comb(n, w) * 3**w
        if size > budget:
            raise ResourceError(
                f"weight-{w} class has {size} Paulis, budget is {budget:.3g}", needed=size, budget=budget
            )
        combos = itertools.combinations(range(n), w)
        while True:
            block = list(itertools.islice(combos, chunk))
            if not block:
                break
            x, z = _weight_candidates(n, w, block)
            v = np.concatenate([x, z], axis=1)
            ok = ~symplectic_products(v, G).any(axis=1) if G.size else np.ones(len(v), bool)
            ok &= symplectic_products(v, L).any(axis=1)
            hits = np.nonzero(ok)[0]
            if hits.size:
                i = hits[0]
                return DistanceResult(w, True, PauliOperator(x[i], z[i]))
    return DistanceResult(w_max + 1, False, None)


def sparsity(code: StabilizerCode) -> int:
    """max(largest generator weight, largest number of generators touching one qubit)."""
    if not code.generators:
        return 0
    G = code.check_matrix
    n = code.n
    touch = (G[:, :n] | G[:, n:]).astype(np.int64)
    return int(max(touch.sum(axis=1).max(), touch.sum(axis=0).max()))
