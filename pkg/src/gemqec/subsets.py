"""Subsets of qubits relative to a stabilizer group: restriction, cleaning, and
the constructive search for a size-d subset supporting no nontrivial stabilizer."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import gf2
from .clifford import single_qubit_cliffords
from .errors import InvalidCodeError
from .pauli import PauliOperator, StabilizerCode, commutes, distance, is_logical


def _columns(n: int, qubits: Sequence[int]) -> list[int]:
    qs = list(qubits)
    return qs + [n + q for q in qs]


def restricted_stabilizers(code: StabilizerCode, qubits: Sequence[int]) -> list[PauliOperator]:
    """GF(2) basis of the subgroup of stabilizers supported inside ``qubits``.

    An empty list means the subgroup is trivial, {I}.
    """
    a = set(int(q) for q in qubits)
    outside = [q for q in range(code.n) if q not in a]
    if code.m == 0:
        return []
    G = code.check_matrix
    coeffs = gf2.nullspace(G[:, _columns(code.n, outside)].T)
    return [code.group_element(c) for c in coeffs]


def clean(code: StabilizerCode, p: PauliOperator, qubits: Sequence[int]) -> PauliOperator | None:
    """An equivalent logical Q in p*S acting trivially on ``qubits``, or None.

    Raises ValueError if ``p`` is not a logical operator.
    """
    if not is_logical(code, p):
        raise ValueError(f"{p} is not a logical operator of {code!r}")
    qs = sorted(set(int(q) for q in qubits))
    if not qs:
        return p
    G = code.check_matrix
    cols = _columns(code.n, qs)
    target = p.symplectic[cols]
    if code.m == 0:
        return p if not target.any() else None
    coeffs = gf2.solve(G[:, cols].T, target)
    if coeffs is None:
        return None
    return p * code.group_element(coeffs)


@dataclass
class SubsetStep:
    qubit: int
    x_logical: PauliOperator
    z_logical: PauliOperator
    local_actions: tuple[str, str]
    basis_change: str | None


@dataclass
class IdentitySupportSubset:
    qubits: tuple[int, ...]
    steps: list[SubsetStep] = field(default_factory=list)


def _local_basis_change(a: str, b: str):
    """Single-qubit Clifford C with C a C^dag = +-X and C b C^dag = +-Z."""
    pa = PauliOperator.from_string(a)
    pb = PauliOperator.from_string(b)
    for gate in single_qubit_cliffords(0):
        if gate.conjugate(pa).local(0) == "X" and gate.conjugate(pb).local(0) == "Z":
            return gate
    raise AssertionError(f"no Clifford maps ({a}, {b}) to (X, Z)")


def _conjugate_at(code: StabilizerCode, gate, qubit: int) -> StabilizerCode:
    moved = type(gate)((qubit,), gate.images, gate.unitary, gate.name)
    gens = [moved.conjugate(g) for g in code.generators]
    logicals = [(moved.conjugate(x), moved.conjugate(z)) for x, z in code.logicals]
    return StabilizerCode(gens, n=code.n, logicals=logicals, name=code.name)


def find_identity_support_subset(code: StabilizerCode, d: int | None = None) -> IdentitySupportSubset:
    """Grow A one qubit at a time until |A| = d while keeping S(A) = {I}.

    Each step cleans the first logical pair off A, picks the lowest qubit where
    the cleaned pair locally anticommutes, and (on a working copy) rotates that
    qubit so the pair acts there as X and Z.  A is reported in the original
    qubit labels; local Cliffords do not move qubits.
    """
    if code.k == 0:
        raise InvalidCodeError("code has no logical qubits")
    if d is None:
        result = distance(code)
        d = result.d
    work = code
    chosen: list[int] = []
    steps: list[SubsetStep] = []
    while len(chosen) < d:
        xl, zl = work.logicals[0]
        xc = clean(work, xl, chosen)
        zc = clean(work, zl, chosen)
        if xc is None or zc is None:
            raise RuntimeError(
                f"cleaning failed with |A| = {len(chosen)} < d = {d}; the distance is wrong or the code is invalid"
            )
        qubit = next(
            (
                q
                for q in range(work.n)
                if q not in chosen and not commutes(xc.restrict([q]), zc.restrict([q]))
            ),
            None,
        )
        if qubit is None:
            raise RuntimeError("cleaned logical pair does not anticommute on any remaining qubit")
        actions = (xc.local(qubit), zc.local(qubit))
        change = None
        if actions != ("X", "Z"):
            gate = _local_basis_change(*actions)
            change = gate.name
            work = _conjugate_at(work, gate, qubit)
        steps.append(SubsetStep(qubit, xc, zc, actions, change))
        chosen.append(qubit)
    if restricted_stabilizers(code, chosen):
        raise RuntimeError(f"subset {chosen} supports a nontrivial stabilizer")
    return IdentitySupportSubset(tuple(chosen), steps)


def stabilizer_group_on(code: StabilizerCode, qubits: Sequence[int]) -> list[PauliOperator]:
    """All elements of S(A), including the identity, with signs."""
    basis = restricted_stabilizers(code, qubits)
    out = []
    for bits in np.ndindex(*(2,) * len(basis)):
        p = PauliOperator.identity(code.n)
        for b, g in zip(bits, basis):
            if b:
                p = p * g
        out.append(p)
    return out
