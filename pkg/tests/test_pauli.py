import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import pauli_pairs, pauli_strings
from gemqec.errors import DimensionError, InvalidCodeError, ResourceError
from gemqec.pauli import (
    CodeParseError,
    PauliOperator,
    StabilizerCode,
    commutes,
    distance,
    in_group,
    is_logical,
    logical_operators,
    sparsity,
)
from gemqec.zoo import five_qubit_code, repetition_zcheck_code, shor_code, trivial_code

P = PauliOperator.from_string


# --- single operators -------------------------------------------------------------


def test_commutes_examples():
    assert not commutes(PauliOperator.single(2, 0, "X"), PauliOperator.single(2, 0, "Z"))
    assert commutes(PauliOperator.single(2, 0, "X"), PauliOperator.single(2, 1, "Z"))
    assert commutes(P("XZZXI"), P("IXZZX"))


def test_commutes_dimension_mismatch():
    with pytest.raises(DimensionError):
        commutes(P("X"), P("XX"))


@settings(max_examples=200, deadline=None)
@given(pauli_pairs())
def test_commutes_matches_dense_commutator(pq):
    p, q = pq
    a, b = p.to_matrix(), q.to_matrix()
    assert commutes(p, q) == np.allclose(a @ b, b @ a)
    assert commutes(p, q) == commutes(q, p)
    assert commutes(p, p)


@settings(max_examples=200, deadline=None)
@given(pauli_pairs())
def test_product_matches_dense_product(pq):
    p, q = pq
    assert np.allclose((p * q).to_matrix(), p.to_matrix() @ q.to_matrix())


@settings(max_examples=100, deadline=None)
@given(pauli_strings())
def test_weight_and_hermitian_square(p):
    assert p.weight == int(np.count_nonzero(p.x | p.z))
    assert 0 <= p.weight <= p.n
    if p.is_hermitian:
        sq = p * p
        assert sq.is_identity(ignore_phase=False)


def test_y_is_hermitian_and_labels_roundtrip():
    y = P("Y")
    assert y.is_hermitian and y.sign == 1
    assert np.allclose(y.to_matrix(), [[0, -1j], [1j, 0]])
    for label in ("+XYZ", "-IZY", "+iXX", "-iZ"):
        assert P(label).label() == label


def test_sign_of_non_hermitian_raises():
    with pytest.raises(ValueError):
        P("iX").sign


def test_from_string_rejects_bad_letters():
    with pytest.raises(ValueError):
        P("XQZ")


# --- group membership -------------------------------------------------------------


def test_in_group_examples():
    code = shor_code(3)
    ok, coeffs = in_group(code, PauliOperator.identity(9))
    assert ok and not np.any(coeffs)
    assert in_group(code, code.generators[3])[0]
    z_row = PauliOperator.from_sparse(9, {0: "Z", 1: "Z", 2: "Z"})
    assert in_group(code, z_row) == (False, None)


@pytest.mark.parametrize("code", [shor_code(2), five_qubit_code(), repetition_zcheck_code(4)])
def test_in_group_exactly_the_group(code):
    elements = set(code.group())
    assert len(elements) == 2**code.m
    for g in elements:
        ok, coeffs = in_group(code, g)
        assert ok and code.group_element(coeffs) == g
        assert not in_group(code, -g)[0]
        assert in_group(code, -g, up_to_sign=True)[0]
    # every other Hermitian Pauli is rejected
    labels = {g.label() for g in elements}
    for letters in itertools.product("IXYZ", repeat=code.n):
        p = P("".join(letters))
        assert in_group(code, p)[0] == (p.label() in labels)


def test_in_group_dimension_mismatch():
    with pytest.raises(DimensionError):
        in_group(five_qubit_code(), P("XX"))


# --- codes ------------------------------------------------------------------------


def _check_logicals(code, pairs):
    assert len(pairs) == code.k
    for i, (xi, zi) in enumerate(pairs):
        assert all(commutes(xi, g) and commutes(zi, g) for g in code.generators)
        for j, (xj, zj) in enumerate(pairs):
            assert commutes(xi, zj) == (i != j)
            assert commutes(xi, xj) and commutes(zi, zj)
        assert is_logical(code, xi) and is_logical(code, zi)


def test_shor_logicals_match_column_and_row():
    code = shor_code(3)
    (xl, zl), = logical_operators(code)
    x_col = PauliOperator.from_sparse(9, {0: "X", 3: "X", 6: "X"})
    z_row = PauliOperator.from_sparse(9, {0: "Z", 1: "Z", 2: "Z"})
    assert in_group(code, xl * x_col, up_to_sign=True)[0]
    assert in_group(code, zl * z_row, up_to_sign=True)[0]
    _check_logicals(code, code.logicals)


def test_gram_schmidt_logicals():
    five = StabilizerCode(five_qubit_code().generators)
    _check_logicals(five, logical_operators(five))
    # a [[6,2]] code exercises pairing beyond k = 1
    code = StabilizerCode(["XXXXXX", "ZZZZZZ", "ZZIIII", "IIZZII"])
    _check_logicals(code, logical_operators(code))
    assert logical_operators(code) == logical_operators(StabilizerCode(code.generators))


def test_trivial_code_logicals():
    (xl, zl), = trivial_code(1).logicals
    assert xl == P("X") and zl == P("Z")


def test_invalid_codes():
    with pytest.raises(InvalidCodeError):
        StabilizerCode(["XI", "ZI"])
    with pytest.raises(InvalidCodeError):
        StabilizerCode(["ZZI", "IZZ", "ZIZ"])
    with pytest.raises(InvalidCodeError):
        StabilizerCode(["iZZ"])
    with pytest.raises(InvalidCodeError):
        StabilizerCode(["ZZ"], logicals=[(P("XI"), P("ZI"))])


def _dense_distance(code):
    """Smallest weight of a Pauli E with P E P not proportional to P (KL on the projector)."""
    n = code.n
    proj = np.eye(2**n, dtype=complex)
    for g in code.generators:
        proj = proj @ (np.eye(2**n) + g.to_matrix()) / 2
    tr = np.trace(proj).real
    for w in range(1, n + 1):
        for sup in itertools.combinations(range(n), w):
            for letters in itertools.product("XYZ", repeat=w):
                e = PauliOperator.from_sparse(n, dict(zip(sup, letters))).to_matrix()
                m = proj @ e @ proj
                c = np.trace(m) / tr
                if not np.allclose(m, c * proj, atol=1e-9):
                    return w
    return n + 1


@pytest.mark.parametrize(
    "code,d",
    [(shor_code(2), 2), (five_qubit_code(), 3), (trivial_code(1), 1), (repetition_zcheck_code(5), 1)],
)
def test_distance_against_dense_projector(code, d):
    res = distance(code)
    assert res.exact and res.d == d == _dense_distance(code)
    assert res.witness.weight == d and is_logical(code, res.witness)


def test_shor3_distance_and_lower_bound_verdict():
    assert int(distance(shor_code(3))) == 3
    res = distance(shor_code(3), w_max=2)
    assert res.d == 3 and not res.exact and res.witness is None


def test_distance_budget_is_explicit():
    with pytest.raises(ResourceError) as info:
        distance(shor_code(3), budget=100)
    assert info.value.budget == 100 and info.value.needed > 100


def test_distance_needs_logical_qubits():
    with pytest.raises(InvalidCodeError):
        distance(StabilizerCode(["ZZ", "XX"]))


@pytest.mark.parametrize(
    "code,s", [(shor_code(3), 6), (repetition_zcheck_code(7), 2), (five_qubit_code(), 4)]
)
def test_sparsity(code, s):
    assert sparsity(code) == s


# --- text format ------------------------------------------------------------------


def test_text_roundtrip():
    code = StabilizerCode(["XZZXI", "IXZZX", "XIXZZ", "-ZXIXZ"])
    again = StabilizerCode.from_text(code.to_text())
    assert again.generators == code.generators


def test_text_comments_and_signs():
    text = "# five-qubit code\nn=5 k=1\nXZZXI\nIXZZX  # cyclic\nXIXZZ\n-ZXIXZ\n"
    code = StabilizerCode.from_text(text)
    assert code.generators[3].sign == -1


@pytest.mark.parametrize(
    "text,line",
    [("n=2\nZZ\n", 1), ("n=2 k=1\nZQ\n", 2), ("n=2 k=1\nZZ\nXX\n", 3), ("n=3 k=1\nZZ\nZZI\n", 2)],
)
def test_text_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(CodeParseError) as info:
        StabilizerCode.from_text(text)
    assert info.value.lineno == line
