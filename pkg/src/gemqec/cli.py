"""Command-line front end.

Exit codes: 0 pass, 1 a check failed, 2 usage or parse error, 3 resource budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import bounds as B
from .errors import DomainError, InvalidCodeError, ResourceError
from .gem import alternating_maximize
from .pauli import StabilizerCode, distance
from .statevec import HARD_MAX_QUBITS, GeneralCode, code_space_basis, kl_distance, kl_verify_distance
from .subsets import find_identity_support_subset
from .verify import SUITES, run_suite
from .zoo import ConcatSchedule, ZooCode, concat_explicit, concat_log_overlap, concat_schedule, from_name, named_state

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
DEFAULT_SEED = 0xC0DE


class UsageError(Exception):
    pass


# --- output -----------------------------------------------------------------------


def _clean(value):
    """JSON-safe copy with floats at 12 significant digits."""
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value) or math.isinf(value):
            return str(value)
        return float(f"{value:.12g}")
    return value


def _csv_rows(payload: dict) -> list[list]:
    reports = payload.get("reports")
    if reports is not None:
        rows = [["name", "bound", "measured", "slack", "satisfied", "provenance", "inputs"]]
        for r in reports:
            rows.append([r["name"], r["bound"], r["measured"], r["slack"], r["satisfied"], r["provenance"],
                         json.dumps(r["inputs"], sort_keys=True)])
        return rows
    rows = [["key", "value"]]
    for key, value in payload.items():
        rows.append([key, value if not isinstance(value, (dict, list)) else json.dumps(value)])
    return rows


def _pretty(payload: dict) -> str:
    lines = []
    for key, value in payload.items():
        if key == "reports":
            for r in value:
                mark = "ok  " if r["satisfied"] else "FAIL"
                lines.append(f"{mark} [{r['provenance']}] {r['name']} {json.dumps(r['inputs'], sort_keys=True)} "
                             f"bound={r['bound']} measured={r['measured']}")
        elif key == "traces":
            lines.append(f"traces: {len(value)} restarts")
        elif isinstance(value, (dict, list)):
            lines.append(f"{key}: {json.dumps(value)}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def render(payload: dict, fmt: str) -> str:
    payload = _clean(payload)
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(_csv_rows(payload))
        return buf.getvalue()
    return _pretty(payload)


# --- code specs -------------------------------------------------------------------


def load_code(spec: str, max_qubits: int) -> ZooCode:
    """A zoo name or a path to a stabilizer text file or GeneralCode JSON."""
    path = Path(spec)
    if path.is_file():
        text = path.read_text()
        if path.suffix == ".json":
            general = GeneralCode.from_json(text)
            general.name = spec
            return ZooCode(spec, general.n, general.k, general.claimed_distance, _general=general)
        code = StabilizerCode.from_text(text, name=spec)
        return ZooCode(spec, code.n, code.k, None, code, _builder=lambda: code_space_basis(code, max_qubits))
    try:
        return from_name(spec, max_qubits)
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise UsageError(f"{spec!r} is neither a file nor a known code name") from exc


def _distance_of(entry: ZooCode) -> int:
    if entry.stabilizer is not None:
        return distance(entry.stabilizer).d
    if entry.claimed_distance is not None:
        return entry.claimed_distance
    return kl_distance(entry.general)[0]


# --- commands ---------------------------------------------------------------------


def cmd_distance(args) -> tuple[dict, int]:
    entry = load_code(args.code, args.max_qubits)
    out = {"code": entry.name, "n": entry.n, "k": entry.k}
    if entry.stabilizer is not None:
        result = distance(entry.stabilizer, w_max=args.w_max)
        out.update(method="stabilizer", d=result.d, exact=result.exact,
                   witness=None if result.witness is None else result.witness.label())
        if result.exact:
            subset = find_identity_support_subset(entry.stabilizer, result.d)
            out["subset"] = list(subset.qubits)
            out["basis_changes"] = [s.basis_change for s in subset.steps]
    else:
        d, exact = kl_distance(entry.general, args.w_max + 1 if args.w_max else None)
        out.update(method="knill-laflamme", d=d, exact=exact)
    return out, EXIT_OK


def cmd_kl_check(args) -> tuple[dict, int]:
    entry = load_code(args.code, args.max_qubits)
    d = args.d if args.d is not None else entry.claimed_distance
    if d is None:
        raise UsageError("no claimed distance; pass --d")
    res = kl_verify_distance(entry.general, d, tol=args.tol)
    out = {"code": entry.name, "d": d, "passed": res.passed, "checked": res.checked}
    if not res.passed:
        out.update(witness=res.witness.label(), element=list(res.element),
                   value=[res.value.real, res.value.imag], reference=[res.reference.real, res.reference.imag])
    return out, EXIT_OK if res.passed else EXIT_FAIL


def cmd_gem(args) -> tuple[dict, int]:
    entry = load_code(args.code, args.max_qubits)
    rng = np.random.default_rng(args.seed)
    try:
        psi = named_state(entry, args.state, rng)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    est = alternating_maximize(psi, restarts=args.restarts, tol=args.tol, seed=args.seed)
    d = _distance_of(entry)
    out = {"code": entry.name, "state": args.state, "n": entry.n, "k": entry.k, "d": d}
    out.update(est.to_json(seed=args.seed))
    reports = []
    if entry.stabilizer is not None:
        r = B.BoundReport("theorem2", "lower", B.theorem2_bound(d), est.e0_upper, {"d": d}, "paper")
        r.note = "tight" if abs(r.slack) <= 1e-9 else "gap"
        reports.append(r)
    if d >= 2:
        reports.append(B.BoundReport("theorem3_overlap", "upper", B.theorem3_overlap_bound(entry.n, entry.k, d),
                                     est.best_overlap, {"n": entry.n, "k": entry.k, "d": d}, "paper"))
        reports.append(B.BoundReport("theorem3_gem", "lower", B.theorem3_gem_bound(entry.n, entry.k, d),
                                     est.e0_upper, {"n": entry.n, "k": entry.k, "d": d}, "paper"))
    out["bounds"] = [r.to_json() for r in reports]
    return out, EXIT_OK if all(r.satisfied for r in reports) else EXIT_FAIL


def cmd_bounds(args) -> tuple[dict, int]:
    n, k, d, h = args.n, args.k, args.d, args.h
    out = {"n": n, "k": k, "d": d, "h": h,
           "theorem2": B.theorem2_bound(d), "theorem2_clifford": B.theorem2_clifford_bound(d, h),
           "inverse_entropy_rate": B.inverse_binary_entropy(k / n)}
    if d >= 2:
        out["theorem3_gem"] = B.theorem3_gem_bound(n, k, d, h)
        out["theorem3_overlap"] = B.theorem3_overlap_bound(n, k, d)
    out["low_weight_a"] = B.low_weight_counting(n, k)
    if args.s is not None:
        const = B.ldpc_constants(args.s)
        t1 = B.theorem1_bound(d, args.s, h)
        out.update(s=args.s, K=const.K, log_x0=const.log_x0, log_c=const.log_c, log_g=const.log_g, g=const.g,
                   theorem1_surrogate=t1.value, theorem1_log=t1.log_value,
                   theorem1_hypothesis="met" if t1.hypothesis_met else "unmet",
                   theorem3_ldpc_surrogate=B.theorem3_ldpc_surrogate(n, k, args.s, h))
    return out, EXIT_OK


def cmd_concat(args) -> tuple[dict, int]:
    if args.schedule:
        try:
            sizes = tuple(int(v) for v in args.schedule.split(","))
        except ValueError as exc:
            raise UsageError(f"bad schedule {args.schedule!r}") from exc
        sched = ConcatSchedule(sizes)
        M = None
    else:
        if args.M is None or args.l is None:
            raise UsageError("give --schedule or both --M and --l")
        sched, M = concat_schedule(args.M, args.l), args.M
    log_f = concat_log_overlap(sched)
    out = {"schedule": list(sched.sizes), "N": sched.total_qubits, "distance": sched.distance,
           "F": math.exp(log_f), "log_F": log_f, "e0_upper": -log_f / math.log(2)}
    code = EXIT_OK
    if M is not None:
        floor = sched.levels * math.log1p(-1 / M)
        out["bound"] = (1 - 1 / M) ** sched.levels
        out["bound_satisfied"] = log_f >= floor - 1e-12
        code = EXIT_OK if out["bound_satisfied"] else EXIT_FAIL
    if sched.total_qubits <= 16 and sched.levels <= 2:
        if sched.levels == 1:
            explicit = from_name(f"pi:{sched.sizes[0]}").general
        else:
            explicit = concat_explicit(sched.sizes[0], sched.sizes[1], args.max_qubits)
        value = float(abs(explicit.basis[0][0]) ** 2)
        out["explicit_overlap"] = value
        out["explicit_check"] = abs(value - out["F"]) <= 1e-10
        if not out["explicit_check"]:
            code = EXIT_FAIL
    return out, code


def cmd_verify(args) -> tuple[dict, int]:
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}")
    reports = run_suite(args.suite, args.seed)
    failed = sum(not r.satisfied for r in reports)
    out = {"suite": args.suite, "seed": args.seed, "checks": len(reports), "failed": failed,
           "passed": failed == 0, "reports": [r.to_json() for r in reports]}
    return out, EXIT_OK if failed == 0 else EXIT_FAIL


def cmd_export(args) -> tuple[dict | str, int]:
    entry = load_code(args.code, args.max_qubits)
    if args.as_ == "stabilizer":
        if entry.stabilizer is None:
            raise UsageError(f"{entry.name} has no stabilizer description")
        return entry.stabilizer.to_text(), EXIT_OK
    general = entry.general
    data = general.to_json()
    if entry.claimed_distance is not None:
        data["claimed_distance"] = entry.claimed_distance
    return data, EXIT_OK


# --- parser -----------------------------------------------------------------------


def _max_qubits(text: str) -> int:
    v = int(text)
    if not 1 <= v <= HARD_MAX_QUBITS:
        raise argparse.ArgumentTypeError(f"--max-qubits must be in [1, {HARD_MAX_QUBITS}]")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    common.add_argument("--restarts", type=int, default=8)
    common.add_argument("--tol", type=float, default=None, help="convergence or check tolerance")
    common.add_argument("--max-qubits", type=_max_qubits, default=20)
    common.add_argument("--out", type=Path, default=None, help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="json")

    parser = argparse.ArgumentParser(prog="gemqec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("distance", parents=[common], help="exact code distance")
    p.add_argument("code")
    p.add_argument("--w-max", type=int, default=None)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("kl-check", parents=[common], help="Knill-Laflamme check at a given distance")
    p.add_argument("code")
    p.add_argument("--d", type=int, default=None)
    p.set_defaults(func=cmd_kl_check)

    p = sub.add_parser("gem", parents=[common], help="product-state overlap estimate of a logical state")
    p.add_argument("code")
    p.add_argument("--state", default="zero", help="zero, one, plus, minus or random")
    p.set_defaults(func=cmd_gem)

    p = sub.add_parser("bounds", parents=[common], help="evaluate the bound formulas")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--h", type=int, default=0)
    p.add_argument("--s", type=int, default=None, help="sparsity for the LDPC constants")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("concat", parents=[common], help="concatenated-code overlap recursion")
    p.add_argument("--schedule", default=None, help="comma-separated block sizes, lowest level first")
    p.add_argument("--M", type=int, default=None)
    p.add_argument("--l", type=int, default=None)
    p.set_defaults(func=cmd_concat)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", nargs="?", default="all", help=f"{', '.join(SUITES)} or all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", parents=[common], help="write a code in the file formats")
    p.add_argument("code")
    p.add_argument("--as", dest="as_", choices=("stabilizer", "json"), default="json")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.tol is None:
        args.tol = 1e-9 if args.command == "kl-check" else 1e-12
    try:
        payload, status = args.func(args)
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, DomainError, InvalidCodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = payload if isinstance(payload, str) else render(payload, args.format)
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
