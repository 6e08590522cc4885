"""Acceptance criteria, each at its stated tolerance and runtime limit."""

import itertools
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from gemqec import bounds as B
from gemqec.clifford import conjugate_by_clifford, random_circuit
from gemqec.gem import PLUS, alternating_maximize, product_overlap, uniform_product
from gemqec.pauli import PauliOperator, distance
from gemqec.statevec import (
    binomial_moment,
    eta_from_group,
    expectation,
    expected_weight,
    kl_verify_distance,
    max_single_qubit_entropy,
    maximally_mixed_rdm,
    nonzero_amplitude_count,
    random_logical_state,
    reduced_density_matrix,
    renyi_entropy,
)
from gemqec.subsets import find_identity_support_subset, restricted_stabilizers
from gemqec.zoo import (
    ZOO_NAMES,
    ConcatSchedule,
    concat_explicit,
    concat_log_overlap,
    concat_overlap,
    concat_schedule,
    dicke_pi_code,
    dicke_plus_overlap,
    from_name,
    named_state,
    pi_code,
    shor_code,
)

SEED = 0xC0DE


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f} s, limit {self.limit} s"


def test_criterion_01_shor_tightness(acceptance):
    acceptance["label"] = "1 Shor tightness E0(psi+) = d - 1"
    with Timer(30):
        for d in (2, 3):
            assert distance(shor_code(d)).d == d
            plus = named_state(from_name(f"shor:{d}"), "plus")
            assert abs(abs(plus[0]) ** 2 - 2.0 ** (1 - d)) <= 1e-10
            est = alternating_maximize(plus, restarts=32, seed=SEED)
            assert abs(est.best_overlap - 2.0 ** (1 - d)) <= 1e-9
            assert abs(est.e0_upper - B.theorem2_bound(d)) <= 1e-8


def test_criterion_02_identity_support_subset(acceptance):
    acceptance["label"] = "2 identity-support subset and group-restriction formula"
    rng = np.random.default_rng(SEED)
    with Timer(60):
        for name in ("shor:3", "five"):
            entry = from_name(name)
            code = entry.stabilizer
            d = distance(code).d
            subset = find_identity_support_subset(code)
            assert len(subset.qubits) == d
            assert restricted_stabilizers(code, subset.qubits) == []
            assert {g.label() for g in code.group() if set(g.support) <= set(subset.qubits)} == {"+" + "I" * code.n}
            general = entry.general
            for _ in range(100):
                size = int(rng.integers(0, code.n + 1))
                qubits = rng.permutation(code.n)[:size].tolist()
                diff = np.abs(eta_from_group(code, qubits) - maximally_mixed_rdm(general, qubits))
                assert diff.max() <= 1e-10


def test_criterion_03_clifford_conjugation(acceptance):
    acceptance["label"] = "3 Clifford conjugation light cone on shor:3"
    rng = np.random.default_rng(SEED)
    code = shor_code(3)
    plus = named_state(from_name("shor:3"), "plus")
    with Timer(120):
        for h in (1, 2):
            floor = math.ceil(3 / 2**h)
            for _ in range(200):
                circ = random_circuit(9, h, rng)
                dp = distance(conjugate_by_clifford(code, circ)).d
                assert dp >= floor
                assert abs(circ.apply(plus)[0]) ** 2 <= 2.0 ** (1 - dp) + 1e-12


def _renyi2_all_bipartitions(psi, n):
    worst = 0.0
    for size in range(1, n // 2 + 1):
        for sub in itertools.combinations(range(n), size):
            worst = max(worst, renyi_entropy(reduced_density_matrix(psi, list(sub)), 2))
    return worst


def test_criterion_04_pi_codes(acceptance):
    acceptance["label"] = "4 PI codes n = 4..10"
    with Timer(60):
        for n in range(4, 11):
            code = pi_code(n)
            psi0, psi1 = code.basis
            assert kl_verify_distance(code, 2).passed
            fail = kl_verify_distance(code, 3)
            assert not fail.passed and fail.witness is not None and fail.witness.weight == 2
            assert abs(abs(psi0[0]) ** 2 - (1 - 2 / n)) <= 1e-12
            for j in range(n):
                z = PauliOperator.single(n, j, "Z")
                for psi in (psi0, psi1):
                    assert abs(expectation(psi, z) - (1 - 4 / n)) <= 1e-12
            cap = renyi_entropy(np.diag([1 - 2 / n, 2 / n]), 2)
            assert _renyi2_all_bipartitions(psi0, n) <= cap + 1e-12


def test_criterion_05_concatenation(acceptance):
    acceptance["label"] = "5 concatenated PI code and F recursion"
    with Timer(300):
        code = concat_explicit(4, 4)
        overlap = abs(code.basis[0][0]) ** 2
        assert abs(overlap - 0.03125) <= 1e-10
        assert abs(overlap - concat_overlap(ConcatSchedule((4, 4)))) <= 1e-10
        assert kl_verify_distance(code, 4).passed
        for M in range(2, 65):
            for levels in range(1, 9):
                assert concat_log_overlap(concat_schedule(M, levels)) >= levels * math.log1p(-1 / M) - 1e-12


def test_criterion_06_dicke_code(acceptance):
    acceptance["label"] = "6 Dicke PI code closed form and distance"
    with Timer(30):
        code = dicke_pi_code(3)
        closed = dicke_plus_overlap(3)
        assert abs(closed - (2 + 2 * math.sqrt(252)) / 64) <= 1e-12
        explicit = product_overlap(code.basis[0], uniform_product(9, PLUS))
        assert abs(explicit - closed) <= 1e-10
        assert kl_verify_distance(code, 3).passed and not kl_verify_distance(code, 4).passed


def test_criterion_07_identities_and_invariance(acceptance):
    acceptance["label"] = "7 Bonferroni, moment invariance, term count, single-qubit entropy"
    rng = np.random.default_rng(SEED)
    with Timer(120):
        for name in ZOO_NAMES:
            entry = from_name(name)
            code = entry.general
            n, k, d = code.n, code.k, entry.claimed_distance
            states = [random_logical_state(code, rng) for _ in range(100)]
            for psi in states:
                for dd in range(1, 6):
                    assert B.bonferroni_check(psi, dd, tol=1e-9).passed
                assert nonzero_amplitude_count(psi) >= 2 ** (d - 1)
                if d >= 2:  # the entropy lemma needs d >= 2; repz:5 has d = 1
                    assert max_single_qubit_entropy(psi)[1] >= k / n - 1e-12
            for i in range(1, d):
                vals = [binomial_moment(psi, i) for psi in states]
                assert max(vals) - min(vals) <= 1e-9
            if d >= 2:
                vals = [expected_weight(psi) for psi in states]
                assert max(vals) - min(vals) <= 1e-9
        assert nonzero_amplitude_count(named_state(from_name("shor:3"), "plus")) == 4


def test_criterion_08_bound_satisfaction(acceptance):
    acceptance["label"] = "8 estimator against theorem bounds on 100 states per code"
    rng = np.random.default_rng(SEED)
    with Timer(300):
        for name in ZOO_NAMES:
            entry = from_name(name)
            code = entry.general
            n, k, d = code.n, code.k, entry.claimed_distance
            cap = B.theorem3_overlap_bound(n, k, d)
            floor = B.theorem3_gem_bound(n, k, d, 0)
            for _ in range(100):
                psi = random_logical_state(code, rng)
                est = alternating_maximize(psi, restarts=4, seed=int(rng.integers(2**32)))
                assert est.best_overlap <= cap + 1e-9
                assert floor <= est.e0_upper + 1e-9
                if entry.stabilizer is not None:
                    assert est.best_overlap <= 2.0 ** (1 - d) + 1e-9


def test_criterion_09_lemma_x(acceptance):
    acceptance["label"] = "9 Hamming-weight concentration and low-weight-avoiding state"
    rng = np.random.default_rng(SEED)
    with Timer(30):
        for name in ZOO_NAMES:
            entry = from_name(name)
            if entry.stabilizer is None:
                continue
            for _ in range(20):
                rep = B.lemma_x_check(random_logical_state(entry.general, rng), entry.stabilizer, entry.claimed_distance)
                assert rep.part_ii and rep.part_iii
                assert rep.hypothesis_met == (entry.claimed_distance > rep.s**4)
        psi = B.find_low_weight_avoiding_state(from_name("shor:3").general, 0)
        assert abs(psi[0]) < 1e-12


def test_criterion_10_determinism(acceptance, tmp_path):
    acceptance["label"] = "10 verify all --seed 7 is byte-identical"
    outs = []
    for tag in ("a", "b"):
        path = tmp_path / f"{tag}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "gemqec.cli", "verify", "all", "--seed", "7", "--out", str(path)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0, proc.stderr
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
