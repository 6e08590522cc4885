import numpy as np
import pytest

from gemqec.pauli import PauliOperator, distance, in_group
from gemqec.subsets import clean, find_identity_support_subset, restricted_stabilizers, stabilizer_group_on
from gemqec.zoo import five_qubit_code, repetition_zcheck_code, shor_code, trivial_code


def _brute_restricted(code, qubits):
    """Group elements whose support lies in ``qubits`` (exhaustive oracle)."""
    a = set(qubits)
    return {g.label() for g in code.group() if set(g.support) <= a}


def test_clean_shor_example():
    code = shor_code(3)
    z_row = PauliOperator.from_sparse(9, {0: "Z", 1: "Z", 2: "Z"})
    q = clean(code, z_row, [0])
    assert q == PauliOperator.from_sparse(9, {3: "Z", 1: "Z", 2: "Z"})


def test_clean_trivial_cases():
    code = shor_code(3)
    z_row = PauliOperator.from_sparse(9, {0: "Z", 1: "Z", 2: "Z"})
    assert clean(code, z_row, []) == z_row
    assert clean(code, z_row, range(9)) is None
    with pytest.raises(ValueError):
        clean(code, code.generators[0], [0])


@pytest.mark.parametrize("code", [shor_code(3), five_qubit_code(), shor_code(2)])
def test_cleaning_lemma_below_distance(code, rng):
    d = distance(code).d
    for _ in range(40):
        xl, zl = code.logicals[0]
        p = (xl if rng.integers(2) else zl) * code.group_element(rng.integers(0, 2, code.m))
        a = rng.choice(code.n, size=d - 1, replace=False)
        q = clean(code, p, a)
        assert q is not None
        assert not set(q.support) & set(a.tolist())
        assert in_group(code, q * p, up_to_sign=True)[0]


def test_restricted_one_column():
    code = shor_code(3)
    col = [0, 3, 6]
    basis = restricted_stabilizers(code, col)
    assert len(basis) == 2
    assert {g.label() for g in stabilizer_group_on(code, col)} == {"+IIIIIIIII", "+ZIIZIIIII", "+IIIZIIZII", "+ZIIIIIZII"}


def test_restricted_trivial_cases():
    code = shor_code(3)
    assert restricted_stabilizers(code, []) == []
    assert restricted_stabilizers(code, [0, 1, 2]) == []
    assert [g.label() for g in stabilizer_group_on(code, [])] == ["+IIIIIIIII"]


@pytest.mark.parametrize("code", [shor_code(2), five_qubit_code(), repetition_zcheck_code(5), shor_code(3)])
def test_restricted_matches_exhaustive(code, rng):
    for _ in range(25):
        a = sorted(rng.choice(code.n, size=int(rng.integers(0, code.n + 1)), replace=False).tolist())
        assert {g.label() for g in stabilizer_group_on(code, a)} == _brute_restricted(code, a)


def test_identity_support_subset_shor():
    res = find_identity_support_subset(shor_code(3))
    assert len(res.qubits) == 3
    assert len({q % 3 for q in res.qubits}) == 3  # three distinct columns
    assert _brute_restricted(shor_code(3), res.qubits) == {"+IIIIIIIII"}
    for step in res.steps:
        assert not step.x_logical.restrict([step.qubit]).commutes(step.z_logical.restrict([step.qubit]))


def test_identity_support_subset_five_uses_basis_change():
    code = five_qubit_code()
    res = find_identity_support_subset(code)
    assert len(res.qubits) == 3
    assert _brute_restricted(code, res.qubits) == {"+IIIII"}
    assert any(step.basis_change for step in res.steps)


def test_identity_support_subset_trivial():
    assert len(find_identity_support_subset(trivial_code(1)).qubits) == 1


def test_identity_support_subset_wrong_distance():
    with pytest.raises(RuntimeError):
        find_identity_support_subset(shor_code(3), d=5)
