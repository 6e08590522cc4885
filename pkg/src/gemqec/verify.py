"""Verification suites: each check becomes a BoundReport tagged with where its
claim comes from (``paper``, ``derived`` or ``trivial``).

Suites use modest sample counts so ``verify all`` stays interactive; the test
suite runs the heavier versions.
"""

from __future__ import annotations

import math

import numpy as np

from . import bounds as B
from .gem import PLUS, alternating_maximize, clifford_gem_experiment, product_overlap, uniform_product
from .pauli import distance, sparsity
from .statevec import (
    binomial_moment,
    eta_from_group,
    kl_verify_distance,
    max_single_qubit_entropy,
    maximally_mixed_rdm,
    nonzero_amplitude_count,
    postselect,
    random_logical_state,
    reduced_density_matrix,
    renyi_entropy,
    weight_distribution,
)
from .subsets import find_identity_support_subset, restricted_stabilizers
from .zoo import (
    ZOO_NAMES,
    concat_log_overlap,
    concat_overlap,
    concat_schedule,
    dicke_plus_overlap,
    from_name,
    named_state,
    ConcatSchedule,
)

SUITES = ("stabilizer", "ldpc", "rate", "zoo", "gem")
STABILIZER_ZOO = ("shor:2", "shor:3", "five", "repz:5")


def _identity(name, value, expected, provenance, **inputs) -> B.BoundReport:
    return B.BoundReport(name, "identity", float(expected), float(value), inputs, provenance)


def _check(name, ok: bool, provenance, note=None, **inputs) -> B.BoundReport:
    """A boolean check expressed as measured 1 against an identity bound of 1."""
    return B.BoundReport(name, "identity", 1.0, 1.0 if ok else 0.0, inputs, provenance, note)


def _seed(rng: np.random.Generator) -> int:
    return int(rng.integers(2**32))


def suite_stabilizer(rng: np.random.Generator, samples: int = 10, trials: int = 20) -> list[B.BoundReport]:
    out = []
    for name in STABILIZER_ZOO:
        entry = from_name(name)
        code = entry.stabilizer
        d = distance(code).d
        out.append(_identity("distance", d, entry.claimed_distance, "paper" if name.startswith("shor") else "derived", code=name))
        kl = kl_verify_distance(entry.general, d)
        kl_next = kl_verify_distance(entry.general, d + 1)
        out.append(_check("kl_distance_agrees", kl.passed and not kl_next.passed, "derived", code=name, d=d))
        subset = find_identity_support_subset(code, d)
        ok = len(subset.qubits) == d and not restricted_stabilizers(code, subset.qubits)
        out.append(_check("identity_support_subset", ok, "paper", code=name, subset=list(subset.qubits)))
        psi_mixed = entry.general
        worst = 0.0
        for _ in range(samples):
            size = int(rng.integers(0, min(code.n, 6) + 1))
            qubits = sorted(rng.choice(code.n, size=size, replace=False).tolist())
            diff = np.abs(eta_from_group(code, qubits) - maximally_mixed_rdm(psi_mixed, qubits)).max()
            worst = max(worst, float(diff))
        out.append(B.BoundReport("eta_group_vs_partial_trace", "upper", 1e-10, worst, {"code": name}, "paper"))
        for _ in range(samples):
            psi = random_logical_state(entry.general, rng)
            est = alternating_maximize(psi, restarts=4, seed=_seed(rng))
            out.append(
                B.BoundReport("theorem2_overlap", "upper", 2.0 ** (1 - d), est.best_overlap, {"code": name, "d": d}, "paper")
            )
    for h in (1, 2):
        exp = clifford_gem_experiment(from_name("shor:3").stabilizer, h, trials, seed=_seed(rng), base_distance=3)
        out.append(
            B.BoundReport(
                "clifford_image_distance",
                "lower",
                math.ceil(3 / 2**h),
                exp.min_distance,
                {"code": "shor:3", "h": h, "trials": trials},
                "paper",
            )
        )
        out.append(_check("clifford_image_overlap", exp.passed, "paper", code="shor:3", h=h))
        out.append(
            B.BoundReport(
                "theorem2_clifford_bound",
                "lower",
                B.theorem2_clifford_bound(3, h),
                -math.log2(exp.max_overlap),
                {"code": "shor:3", "h": h},
                "paper",
                "measured is -log2 of the largest |<U psi|0^n>|^2",
            )
        )
    return out


def suite_ldpc(rng: np.random.Generator, samples: int = 10) -> list[B.BoundReport]:
    out = []
    for name in ZOO_NAMES:
        entry = from_name(name)
        code = entry.general
        d = entry.claimed_distance
        worst = 0.0
        for _ in range(samples):
            p = weight_distribution(random_logical_state(code, rng))
            for dd in range(1, 6):
                lhs, rhs, tail = B.bonferroni_sides(p, dd)
                worst = max(worst, abs(lhs - rhs), 0.0 if tail is None else abs(rhs - tail))
        out.append(B.BoundReport("bonferroni_identity", "upper", B.TOL, worst, {"code": name}, "paper"))
        states = [random_logical_state(code, rng) for _ in range(samples)]
        for i in range(1, d):
            vals = [binomial_moment(s, i) for s in states]
            out.append(
                B.BoundReport("moment_invariance", "upper", B.TOL, max(vals) - min(vals), {"code": name, "i": i}, "paper")
            )
        if entry.stabilizer is not None:
            ok_ii = ok_iii = True
            for psi in states:
                rep = B.lemma_x_check(psi, entry.stabilizer, d)
                ok_ii &= rep.part_ii
                ok_iii &= rep.part_iii
            note = "hypothesis d > s^4 met" if d > sparsity(entry.stabilizer) ** 4 else "hypothesis d > s^4 unmet"
            out.append(_check("lemma_x_expected_weight", ok_ii, "paper", note, code=name))
            out.append(_check("lemma_x_tail", ok_iii, "paper", note, code=name))
    for s in (1, 2, 4, 8, 16):
        const = B.ldpc_constants(s)
        out.append(B.BoundReport("ldpc_g_positive", "lower", 0.0, const.g if const.g > 0 else 0.0, {"s": s}, "trivial",
                                 f"log g = {const.log_g:.12g}"))
    return out


def suite_rate(rng: np.random.Generator, samples: int = 10) -> list[B.BoundReport]:
    out = []
    for name in ZOO_NAMES:
        entry = from_name(name)
        code = entry.general
        n, k, d = code.n, code.k, entry.claimed_distance
        a = B.low_weight_counting(n, k)
        if a >= 0:
            total, cap, ok = B.entropy_count_chain(n, a)
            out.append(_check("low_weight_count_chain", ok and cap <= 2**k * (1 + 1e-12), "paper", code=name, a=a))
            psi = B.find_low_weight_avoiding_state(code, a)
            if psi is not None:
                weights = np.bitwise_count(np.arange(2**n, dtype=np.uint64))
                leak = float(np.abs(psi[weights <= a]).max())
                out.append(B.BoundReport("low_weight_avoiding", "upper", 1e-12, leak, {"code": name, "a": a}, "paper"))
            else:
                out.append(_check("low_weight_avoiding", False, "paper", code=name, a=a))
        inv = B.expected_weight_invariance(code, samples, rng, d)
        if inv.applicable:
            out.append(B.BoundReport("expected_weight_invariance", "upper", B.TOL, inv.spread, {"code": name}, "paper"))
        count = min(nonzero_amplitude_count(random_logical_state(code, rng)) for _ in range(samples))
        out.append(B.BoundReport("nonzero_terms", "lower", 2 ** (d - 1), count, {"code": name, "d": d}, "paper"))
        if d >= 2:
            ent = min(max_single_qubit_entropy(random_logical_state(code, rng))[1] for _ in range(samples))
            out.append(B.BoundReport("max_single_qubit_entropy", "lower", k / n, ent, {"code": name}, "paper"))
        # one postselected qubit must leave a code of distance >= d - 1
        post = postselect(code, 0, 0) if d >= 2 else None
        if post is not None:
            kl = kl_verify_distance(post, d - 1)
            out.append(_check("postselection_distance", kl.passed, "paper", code=name, d=d - 1))
    return out


def suite_zoo(rng: np.random.Generator) -> list[B.BoundReport]:
    out = []
    for n in range(4, 11):
        entry = from_name(f"pi:{n}")
        code = entry.general
        psi0, psi1 = code.basis
        out.append(_identity("pi_zero_overlap", abs(psi0[0]) ** 2, 1 - 2 / n, "paper", n=n))
        kl2 = kl_verify_distance(code, 2)
        kl3 = kl_verify_distance(code, 3)
        out.append(_check("pi_kl_distance_two", kl2.passed and not kl3.passed, "paper", n=n))
        weights = np.bitwise_count(np.arange(2**n, dtype=np.uint64)).astype(float)
        # <Z_j> is the same on every qubit by permutation invariance: 1 - 2 E|x| / n
        for label, psi in (("zero", psi0), ("one", psi1)):
            z = 1 - 2 * float(np.sum(np.abs(psi) ** 2 * weights)) / n
            out.append(_identity("pi_z_expectation", z, 1 - 4 / n, "paper", n=n, state=label))
        cap = renyi_entropy(np.diag([1 - 2 / n, 2 / n]), 2)
        worst = max(renyi_entropy(reduced_density_matrix(psi0, list(range(m))), 2) for m in range(1, n))
        out.append(B.BoundReport("pi_renyi2", "upper", cap, worst, {"n": n}, "paper"))
    for M, levels in ((2, 1), (2, 2), (10, 3)):
        sched = concat_schedule(M, levels)
        out.append(
            B.BoundReport(
                "concat_overlap",
                "lower",
                (1 - 1 / M) ** levels,
                concat_overlap(sched),
                {"M": M, "levels": levels, "N": sched.total_qubits},
                "paper",
            )
        )
    worst = min(
        concat_log_overlap(concat_schedule(M, levels)) - levels * math.log1p(-1 / M)
        for M in range(2, 65)
        for levels in range(1, 9)
    )
    out.append(B.BoundReport("concat_overlap_grid", "lower", 0.0, worst, {"M": "2..64", "levels": "1..8"}, "paper",
                             "log F - l log(1 - 1/M)"))
    explicit = from_name("concat:4x4").general
    out.append(_identity("concat_explicit_overlap", abs(explicit.basis[0][0]) ** 2,
                         concat_overlap(ConcatSchedule((4, 4))), "derived", n1=4, n2=4))
    out.append(_check("concat_kl_distance", kl_verify_distance(explicit, 4).passed, "paper", n1=4, n2=4))
    dicke = from_name("dicke:3").general
    plus = dicke.basis[0]
    explicit_overlap = product_overlap(plus, uniform_product(9, PLUS))
    out.append(_identity("dicke_plus_overlap", abs(explicit_overlap), dicke_plus_overlap(3), "derived", d=3))
    out.append(_identity("dicke_plus_closed_form", dicke_plus_overlap(3), (2 + 2 * math.sqrt(252)) / 64, "paper", d=3))
    kl = kl_verify_distance(dicke, 3)
    kl_next = kl_verify_distance(dicke, 4)
    out.append(_check("dicke_kl_distance", kl.passed and not kl_next.passed, "derived", d=3))
    for name in ("shor:2", "shor:3", "five"):
        entry = from_name(name)
        out.append(_identity("distance", distance(entry.stabilizer).d, entry.claimed_distance, "derived", code=name))
    return out


def suite_gem(rng: np.random.Generator, samples: int = 3, restarts: int = 8) -> list[B.BoundReport]:
    out = []
    for d in (2, 3):
        entry = from_name(f"shor:{d}")
        psi = named_state(entry, "plus")
        out.append(_identity("shor_zero_overlap", abs(psi[0]) ** 2, 2.0 ** (1 - d), "paper", d=d))
        est = alternating_maximize(psi, restarts=32, seed=_seed(rng))
        out.append(_identity("shor_gem_tight", est.best_overlap, 2.0 ** (1 - d), "paper", d=d))
    for name in ZOO_NAMES:
        entry = from_name(name)
        code = entry.general
        n, k, d = code.n, code.k, entry.claimed_distance
        overlap_cap = B.theorem3_overlap_bound(n, k, d)
        gem_floor = B.theorem3_gem_bound(n, k, d) if d >= 2 else 0.0
        for _ in range(samples):
            psi = random_logical_state(code, rng)
            est = alternating_maximize(psi, restarts=restarts, seed=_seed(rng))
            out.append(B.BoundReport("theorem3_overlap", "upper", overlap_cap, est.best_overlap, {"code": name}, "paper"))
            out.append(B.BoundReport("theorem3_gem", "lower", gem_floor, est.e0_upper, {"code": name}, "paper"))
            if entry.stabilizer is not None:
                out.append(B.BoundReport("theorem2_overlap", "upper", 2.0 ** (1 - d), est.best_overlap, {"code": name}, "paper"))
    pi8 = named_state(from_name("pi:8"), "zero")
    est = alternating_maximize(pi8, restarts=restarts, seed=_seed(rng))
    out.append(B.BoundReport("pi_gem_overlap", "lower", 0.75, est.best_overlap, {"n": 8}, "paper"))
    out.append(B.BoundReport("pi_e0_chain", "upper", 4 / 10, -math.log2(1 - 2 / 10), {"n": 10}, "paper"))
    dicke = named_state(from_name("dicke:3"), "plus")
    est = alternating_maximize(dicke, restarts=restarts, seed=_seed(rng))
    out.append(B.BoundReport("dicke_gem_overlap", "lower", dicke_plus_overlap(3) ** 2, est.best_overlap, {"d": 3}, "derived"))
    return out


def run_suite(name: str, seed: int) -> list[B.BoundReport]:
    """Run one suite (or ``all``) with a generator derived from ``seed`` per suite."""
    names = SUITES if name == "all" else (name,)
    out = []
    for suite in names:
        if suite not in SUITES:
            raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)} or all")
        rng = np.random.default_rng([seed, SUITES.index(suite)])
        reports = globals()[f"suite_{suite}"](rng)
        for r in reports:
            r.inputs = {"suite": suite, **r.inputs}
        out.extend(reports)
    return out

