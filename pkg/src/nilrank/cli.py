"""nilrank command line.

Exit codes: 0 affirmative, 1 negative / violated / not found, 2 bad input.
Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import List, Optional

from .core import (
    CyclicCentralSubgroup,
    GroupElement,
    commutator,
    commutator_exponents,
    membership_in_C,
    num_pairs,
)
from .diophantine import kernel_rank
from .search import ProgressStream, SearchSpec, brute_force_witness_search, triple_search
from .selftest import run_selftest
from .theorems import all_hold, theorem_a_construct, theorem_c_check

SCHEMA = "nilrank.report/1"

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2

_INT = re.compile(r"[+-]?\d+")


class InputError(ValueError):
    pass


def parse_int(text: str) -> int:
    text = text.strip()
    if not _INT.fullmatch(text):
        raise InputError(f"not an integer: {text!r}")
    return int(text)


def parse_vector(text: str) -> List[int]:
    return [parse_int(t) for t in text.split(",")]


def report(command: str, inputs: dict, result: dict, verdict: str) -> dict:
    return {"schema": SCHEMA, "command": command, "inputs": inputs,
            "result": result, "verdict": verdict}


def _text(rep: dict) -> str:
    lines = [f"{rep['command']}: {rep['verdict']}"]
    for key, value in rep["inputs"].items():
        lines.append(f"  {key} = {json.dumps(value)}")
    res = rep["result"]
    if "witness" in res and res["witness"]:
        w = res["witness"]
        lines.append(f"  alpha1 = {w['alpha1']['gen_exps']}")
        lines.append(f"  alpha2 = {w['alpha2']['gen_exps']}")
        lines.append(f"  minors = {w['minors']}  l = {w['l']}  kernel_rank = {w['kernel_rank']}")
    for r in res.get("reports", []):
        mark = "holds" if r["holds"] else "VIOLATED"
        lines.append(f"  {tuple(r['quadruple'])}: {r['lhs_term']} > {r['rhs_term']} ? {mark}"
                     f"  (pfaffian {r['pfaffian']})")
    for m in res.get("mismatches", []):
        lines.append(f"  mismatch: {m}")
    if "properties" in res:
        for p in res["properties"]:
            lines.append(f"  {p['property']}: {p['cases'] - p['failed']}/{p['cases']}")
        s = res["soundness_sweep"]
        lines.append(f"  sweep: {s['witness_found']} witnesses, {s['condition_violated']} violated,"
                     f" {len(s['violations'])} soundness violations")
    return "\n".join(lines)


def emit(rep: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(rep, indent=2) + "\n")
    else:
        sys.stdout.write(_text(rep) + "\n")


def cmd_construct(args) -> int:
    a = parse_vector(args.a)
    if len(a) != 3:
        raise InputError(f"construct takes three exponents (a1,a2,a3), got {len(a)}")
    if not all(a):
        raise InputError("construct needs nonzero a1, a2, a3")
    w = theorem_a_construct(*a)
    d12, d13, d23 = w.minors
    result = {"witness": w.to_json(), "minors_paper_order": [d12, d23, d13]}
    verdict = "rank2-witness" if w.is_rank2 else "not-rank2"
    emit(report("construct", {"a_paper_order": a}, result, verdict), args.format)
    return EXIT_OK if w.is_rank2 else EXIT_NEGATIVE


def _subgroup(n: int, a: List[int]) -> CyclicCentralSubgroup:
    if n < 2:
        raise InputError(f"n must be >= 2, got {n}")
    if len(a) != num_pairs(n):
        raise InputError(f"n={n} needs {num_pairs(n)} exponents in lexicographic pair order, got {len(a)}")
    try:
        return CyclicCentralSubgroup(n, tuple(a))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_check(args) -> int:
    a = parse_vector(args.a)
    if args.n < 4:
        raise InputError(f"check needs n >= 4 (got n={args.n}); for n = 3 use `construct`, "
                         "a rank-2 witness always exists")
    _subgroup(args.n, a)
    if not all(a):
        raise InputError("check needs every a_ij nonzero")
    reports = theorem_c_check(args.n, a)
    ok = all_hold(reports)
    result = {"reports": [r.to_json() for r in reports], "all_hold": ok}
    emit(report("check", {"n": args.n, "a": a}, result, "holds" if ok else "violated"), args.format)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_search(args) -> int:
    a = parse_vector(args.a)
    C = _subgroup(args.n, a)
    if args.bound < 1:
        raise InputError(f"bound must be >= 1, got {args.bound}")
    spec = SearchSpec(C, args.bound, require_rank2=args.require_rank2,
                      allow_trivial_l=args.allow_trivial_l)
    inputs = {"n": args.n, "a": a, "bound": args.bound, "require_rank2": args.require_rank2,
              "allow_trivial_l": args.allow_trivial_l, "space_size": spec.space_size}
    if args.triple:
        t = triple_search(C, args.bound)
        result = {"triple": t.to_json() if t else None}
        emit(report("search", dict(inputs, triple=True), result,
                    "triple-found" if t else "no-triple"), args.format)
        return EXIT_OK if t else EXIT_NEGATIVE
    progress = None
    if args.progress:
        progress = ProgressStream((2 * args.bound + 1) ** args.n - 1, every=args.progress)
    w = brute_force_witness_search(spec, workers=args.workers, progress=progress)
    result = {"witness": w.to_json() if w else None}
    emit(report("search", inputs, result, "witness-found" if w else "no-witness"), args.format)
    return EXIT_OK if w else EXIT_NEGATIVE


def _load_witness(path: str) -> dict:
    try:
        if path == "-":
            data = json.load(sys.stdin)
        else:
            with open(path) as fh:
                data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read witness file: {exc}") from None
    if isinstance(data, dict) and isinstance(data.get("result"), dict) and "witness" in data["result"]:
        data = data["result"]["witness"]
    if not isinstance(data, dict):
        raise InputError("witness file must hold a JSON object")
    return data


def verify_witness(data: dict) -> List[str]:
    """Names of the recorded fields that do not reproduce."""
    try:
        C = _subgroup(data["n"], data["a"])
        alpha1 = GroupElement.from_json(data["alpha1"])
        alpha2 = GroupElement.from_json(data["alpha2"])
        claims = {k: data[k] for k in ("minors", "l", "kernel_rank")}
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed witness: {exc!r}") from None
    if alpha1.n != C.n or alpha2.n != C.n:
        raise InputError("witness elements have the wrong rank")
    kernel = kernel_rank(alpha1, alpha2, C)
    actual = {
        "minors": list(commutator_exponents(alpha1, alpha2)),
        "l": membership_in_C(commutator(alpha1, alpha2), C),
        "kernel_rank": kernel.kernel_rank,
    }
    if "kernel_basis" in data:
        claims["kernel_basis"] = data["kernel_basis"]
        actual["kernel_basis"] = [list(b) for b in kernel.basis]
    return [k for k in claims if claims[k] != actual[k] or actual[k] is None]


def cmd_verify(args) -> int:
    data = _load_witness(args.witness)
    mismatches = verify_witness(data)
    result = {"mismatches": mismatches, "witness": data}
    verdict = "verified" if not mismatches else "mismatch"
    emit(report("verify", {"witness": args.witness}, result, verdict), args.format)
    for m in mismatches:
        print(f"verify: field {m!r} does not reproduce", file=sys.stderr)
    return EXIT_OK if not mismatches else EXIT_NEGATIVE


def cmd_selftest(args) -> int:
    if args.trials < 1:
        raise InputError(f"trials must be >= 1, got {args.trials}")
    result = run_selftest(args.trials, args.seed)
    verdict = "pass" if result["failures"] == 0 else "fail"
    emit(report("selftest", {"trials": args.trials, "seed": args.seed}, result, verdict), args.format)
    return EXIT_OK if verdict == "pass" else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilrank",
        description="Rank over the center for quotients of free class-2 nilpotent groups "
                    "by a cyclic central subgroup.",
    )
    parser.add_argument("--format", choices=["json", "text"], default="json")
    sub = parser.add_subparsers(dest="command", required=True)
    lex = ("exponents a_ij, comma separated, pairs in lexicographic order "
           "(1,2),(1,3),...,(1,n),(2,3),...; use --a=-1,... when the first entry is negative")

    p = sub.add_parser("construct", help="explicit rank-2 witness for n = 3")
    p.add_argument("--a", required=True,
                   help="a1,a2,a3 for C = <[x1,x2]^a1 [x2,x3]^a2 [x1,x3]^a3> (note the order)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", help="quadruple condition for n >= 4")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", required=True, help=lex)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("search", help="exhaustive witness search in a box")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", required=True, help=lex)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--require-rank2", action="store_true")
    p.add_argument("--allow-trivial-l", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--progress", type=int, default=0, metavar="N",
                   help="JSON status line on stderr every N candidate pairs")
    p.add_argument("--triple", action="store_true",
                   help="experimental: look for three elements of rank 3 over the center")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="re-derive a witness certificate")
    p.add_argument("witness", help="witness JSON file (a construct/search report or its witness), - for stdin")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selftest", help="seeded property suite plus soundness sweep")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"nilrank {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
