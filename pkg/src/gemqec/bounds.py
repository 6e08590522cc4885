"""Entanglement lower bounds, their constants, and checkers that compare them with
measured statevector quantities."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import NamedTuple

import numpy as np
import scipy.linalg

from .errors import DomainError
from .pauli import StabilizerCode, sparsity
from .statevec import GeneralCode, binomial_moment, expected_weight, random_logical_state, weight_distribution

TOL = 1e-9


@dataclass
class BoundReport:
    """One bound or identity check.

    ``kind`` fixes the direction: ``upper`` means measured <= bound, ``lower``
    means measured >= bound, ``identity`` means equality; all within ``TOL``.
    """

    name: str
    kind: str
    bound: float
    measured: float | None = None
    inputs: dict = field(default_factory=dict)
    provenance: str = "derived"
    note: str | None = None

    @property
    def slack(self) -> float | None:
        if self.measured is None:
            return None
        if self.kind == "upper":
            return self.bound - self.measured
        if self.kind == "lower":
            return self.measured - self.bound
        return -abs(self.measured - self.bound)

    @property
    def satisfied(self) -> bool:
        if self.measured is None:
            return True
        return self.slack >= -TOL

    def to_json(self) -> dict:
        out = asdict(self)
        out["slack"] = self.slack
        out["satisfied"] = self.satisfied
        return out


# --- binary entropy -------------------------------------------------------------


def binary_entropy(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"binary entropy needs x in [0, 1], got {x}")
    if x in (0.0, 1.0):
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def inverse_binary_entropy(y: float, tol: float = 1e-12) -> float:
    """The x in [0, 1/2] with H(x) = y, by bisection."""
    if not 0.0 <= y <= 1.0:
        raise DomainError(f"inverse binary entropy needs y in [0, 1], got {y}")
    # H is flat near 1/2, so return the endpoints exactly
    if y == 0.0:
        return 0.0
    if y == 1.0:
        return 0.5
    lo, hi = 0.0, 0.5
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if binary_entropy(mid) < y:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# --- theorem bounds ------------------------------------------------------------


def theorem2_bound(d: int) -> int:
    """E_0 >= d - 1 for stabilizer codes."""
    return d - 1


def theorem2_clifford_bound(d: int, h: int) -> float:
    """E_h^C >= d / 2^h - 1 (may be negative, i.e. vacuous)."""
    return d / 2**h - 1


def theorem3_gem_bound(n: int, k: int, d: int, h: int = 0) -> float:
    """(d / 2^h - 1) H^{-1}(k / n) for any code."""
    if not 1 <= k <= n:
        raise DomainError("need 1 <= k <= n")
    return (d / 2**h - 1) * inverse_binary_entropy(k / n)


def theorem3_overlap_bound(n: int, k: int, d: int) -> float:
    """prod_{i=0}^{d-2} (1 - H^{-1}(k / (n - i))), the bound on |<0^n|psi>|^2."""
    if not 1 <= k <= n:
        raise DomainError("need 1 <= k <= n")
    out = 1.0
    for i in range(d - 1):
        if n - i <= 0 or k / (n - i) > 1:
            raise DomainError(f"k/(n-i) = {k}/{n - i} exceeds 1; d = {d} is too large for n = {n}")
        out *= 1 - inverse_binary_entropy(k / (n - i))
    return out


class LdpcConstants(NamedTuple):
    """Constants of the qLDPC argument, kept in log space where they overflow.

    x0 = exp(1 + 5/4 (K+1)) exceeds double range for s >= 6, so ``log_x0``,
    ``log_c`` and ``log_g`` (natural logs) are authoritative; ``x0``, ``c`` and
    ``g`` are their float images and may be inf or 0.
    """

    s: int
    K: int
    log_x0: float
    log_c: float
    log_g: float

    @property
    def x0(self) -> float:
        return _safe_exp(self.log_x0)

    @property
    def c(self) -> float:
        return _safe_exp(self.log_c)

    @property
    def g(self) -> float:
        return _safe_exp(self.log_g)


def _safe_exp(v: float) -> float:
    try:
        return math.exp(v)
    except OverflowError:
        return math.inf


def ldpc_constants(s: int) -> LdpcConstants:
    if s < 1:
        raise DomainError("sparsity must be >= 1")
    K = s * s + s**4
    log_x0 = 1 + 1.25 * (K + 1)
    # c = 5/4 x0 + 1
    log_c = math.log(1.25) + log_x0 + math.log1p(math.exp(-log_x0) / 1.25)
    branch_a = -math.log(K + 1) - log_c
    branch_b = math.log(math.log(math.e - 1)) - math.log(K + 2)
    log_g = min(branch_a, branch_b) - math.log(math.log(2))
    return LdpcConstants(s, K, log_x0, log_c, log_g)


class Theorem1Bound(NamedTuple):
    value: float
    log_value: float
    hypothesis_met: bool


def theorem1_bound(d: int, s: int, h: int = 0) -> Theorem1Bound:
    """Surrogate d * g(s 2^h) / 2^h for alpha d; hypothesis d > s^4 2^{5h} flagged."""
    const = ldpc_constants(s * 2**h)
    log_value = math.log(d) + const.log_g - h * math.log(2)
    return Theorem1Bound(math.exp(log_value), log_value, d > s**4 * 2 ** (5 * h))


def theorem3_ldpc_surrogate(n: int, k: int, s: int, h: int = 0) -> float:
    """n H^{-1}(k/n) / ((K+1) ln 2) with K evaluated at sparsity s 2^h; labelled surrogate."""
    const = ldpc_constants(s * 2**h)
    return n * inverse_binary_entropy(k / n) / ((const.K + 1) * math.log(2))


# --- Bonferroni identity ---------------------------------------------------------


class BonferroniReport(NamedTuple):
    d: int
    lhs: float
    rhs: float
    rhs_tail: float | None
    passed: bool


def bonferroni_sides(p: np.ndarray, d: int) -> tuple[float, float, float | None]:
    n = len(p) - 1
    moments = [sum(p[t] * math.comb(t, i) for t in range(n + 1)) for i in range(d)]
    pr_nonzero = float(np.sum(p[1:]))
    alt = sum((-1) ** (i - 1) * moments[i] for i in range(1, d))
    lhs = (-1) ** (d - 1) * (pr_nonzero - alt)
    rhs = sum(math.comb(t - 1, d - 1) * p[t] for t in range(d, n + 1))
    rhs_tail = None
    if d >= 2:
        tail = np.cumsum(p[::-1])[::-1]  # tail[t] = Pr[|x| >= t]
        rhs_tail = sum(math.comb(t - 2, d - 2) * tail[t] for t in range(d, n + 1))
    return float(lhs), float(rhs), None if rhs_tail is None else float(rhs_tail)


def bonferroni_check(psi: np.ndarray, d: int, tol: float = TOL) -> BonferroniReport:
    """Both sides of the alternating inclusion-exclusion remainder identity."""
    if d < 1:
        raise DomainError("d must be >= 1")
    lhs, rhs, rhs_tail = bonferroni_sides(weight_distribution(psi), d)
    ok = abs(lhs - rhs) <= tol and (rhs_tail is None or abs(rhs - rhs_tail) <= tol)
    return BonferroniReport(d, lhs, rhs, rhs_tail, ok)


# --- Hamming-weight concentration checks -------------------------------------------


@dataclass
class LemmaXReport:
    s: int
    K: int
    expected_weight: float
    overlap: float
    part_ii_bound: float
    part_ii: bool
    part_iii_checked: list[int]
    part_iii: bool
    hypothesis_met: bool

    @property
    def passed(self) -> bool:
        return self.part_ii and self.part_iii


def lemma_x_check(psi: np.ndarray, code: StabilizerCode, d: int | None = None) -> LemmaXReport:
    """E|x| <= -(K+1) ln|<psi|0^n>|^2 and Pr[|x| >= t] <= exp(E|x| - t) for t >= c(s) E|x|.

    The d > s^4 hypothesis is recorded, not assumed.  Thresholds are compared in
    log space because c(s) overflows doubles for moderate s.
    """
    s = sparsity(code)
    const = ldpc_constants(max(s, 1))
    p = weight_distribution(psi)
    n = len(p) - 1
    mean = float(sum(t * p[t] for t in range(n + 1)))
    overlap = float(abs(psi[0]) ** 2)
    if overlap > 0:
        bound_ii = -(const.K + 1) * math.log(overlap)
        ok_ii = mean <= bound_ii + TOL
    else:
        bound_ii, ok_ii = math.inf, True
    tail = np.cumsum(p[::-1])[::-1]
    checked = []
    ok_iii = True
    for t in range(n + 1):
        if mean > 0 and (t == 0 or math.log(t) < const.log_c + math.log(mean)):
            continue
        checked.append(t)
        if tail[t] > math.exp(mean - t) + TOL:
            ok_iii = False
    hypothesis = d is not None and d > s**4
    return LemmaXReport(s, const.K, mean, overlap, bound_ii, ok_ii, checked, ok_iii, hypothesis)


# --- low-weight avoiding states ---------------------------------------------------


def low_weight_counting(n: int, k: int) -> int:
    """Largest a with sum_{i<=a} C(n, i) < 2^k (-1 if even a = 0 fails)."""
    total = 0
    a = -1
    for i in range(n + 1):
        total += math.comb(n, i)
        if total >= 2**k:
            break
        a = i
    return a


def entropy_count_chain(n: int, a: int) -> tuple[int, float, bool]:
    """sum_{i<=a} C(n,i) against 2^{n H(a/n)}; strict for 1 <= a, equal at a = 0."""
    total = sum(math.comb(n, i) for i in range(a + 1))
    cap = 2.0 ** (n * binary_entropy(a / n))
    ok = total <= cap * (1 + 1e-12) if a == 0 else total < cap
    return total, cap, ok


def find_low_weight_avoiding_state(code: GeneralCode, a: int, threshold: float = 1e-10) -> np.ndarray | None:
    """A normalized code state orthogonal to every basis string of weight <= a, or None."""
    weights = np.bitwise_count(np.arange(2**code.n, dtype=np.uint64))
    rows = code.basis[:, weights <= a].T  # (#strings, 2^k)
    if rows.size == 0:
        coeffs = np.zeros(code.basis.shape[0], dtype=complex)
        coeffs[0] = 1
    else:
        null = scipy.linalg.null_space(rows, rcond=threshold)
        if null.shape[1] == 0:
            return None
        coeffs = null[:, 0]
    psi = coeffs @ code.basis
    return psi / np.linalg.norm(psi)


# --- invariance over the code ------------------------------------------------------


@dataclass
class InvarianceReport:
    applicable: bool
    values: list[float]
    spread: float
    passed: bool


def expected_weight_invariance(code: GeneralCode, samples: int, rng: np.random.Generator, d: int | None = None) -> InvarianceReport:
    """E|x| is the same for all code states when d >= 2; returns the sampled spread."""
    d = code.claimed_distance if d is None else d
    if d is None or d < 2:
        return InvarianceReport(False, [], 0.0, True)
    vals = [expected_weight(random_logical_state(code, rng)) for _ in range(samples)]
    spread = float(max(vals) - min(vals))
    return InvarianceReport(True, vals, spread, spread < TOL)


def moment_spread(code: GeneralCode, i: int, samples: int, rng: np.random.Generator) -> float:
    vals = [binomial_moment(random_logical_state(code, rng), i) for _ in range(samples)]
    return float(max(vals) - min(vals))
