"""Command-line front end.

Exit codes: 0 found/valid, 1 not found/invalid, 2 usage or input error,
3 internal invariant violation (a crash bundle is written for replay).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import statistics
import sys
import time
from pathlib import Path
from typing import Any, Callable, Sequence, TextIO

from .collection import GraphCollection, Transversal, verify_transversal
from .errors import InputError, InvariantViolation
from .formats import parse_certificate, parse_rgc, write_certificate, write_rgc
from .generators import KINDS, GenSpec, gen_random_dirac, generate
from .hamilton import HamiltonStats, find_hamilton
from .matching import MatchingStats, find_perfect_matching
from .oracle import brute_hamilton, brute_perfect_matching, max_rainbow_matching_size

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        raise InputError(f"{self.prog}: {message}")


def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {text}")
    return v


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rainbowtx", description="Rainbow Hamilton cycles and perfect matchings in graph collections.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a generated instance as rgc")
    g.add_argument("--kind", required=True, choices=KINDS)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--s", type=int)
    g.add_argument("--p", type=float)
    g.add_argument("--seed", type=_u64, required=True)
    g.add_argument("--out", required=True)
    g.add_argument("--problem", choices=("hamilton", "matching"), default="hamilton")

    for name, help_ in (("solve", "solve an instance and write a certificate"), ("verify", "check a certificate")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--problem", choices=("hamilton", "matching"), required=True)
        sp.add_argument("--in", dest="inp", required=True)
        sp.add_argument("--cert", required=True)

    b = sub.add_parser("brute", help="exhaustive search on a small instance")
    b.add_argument("--problem", choices=("hamilton", "matching", "max-matching"), required=True)
    b.add_argument("--in", dest="inp", required=True)
    b.add_argument("--cert")

    bench = sub.add_parser("bench", help="seeded trial matrix; JSON lines on stdout")
    bench.add_argument("--problem", choices=("hamilton", "matching"), required=True)
    bench.add_argument("--n", type=_int_list, required=True)
    bench.add_argument("--trials", type=int, required=True)
    bench.add_argument("--seed", type=_u64, required=True)
    bench.add_argument("--csv")
    return p


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def solve(problem: str, collection: GraphCollection) -> tuple[Transversal, dict[str, Any]]:
    if problem == "hamilton":
        hs = HamiltonStats()
        return find_hamilton(collection, hs), hs.as_dict()
    ms = MatchingStats()
    return find_perfect_matching(collection, ms), ms.as_dict()


def cmd_gen(a: argparse.Namespace, out: TextIO) -> int:
    spec = GenSpec(kind=a.kind, n=a.n, s=a.s, p=a.p, seed=a.seed, problem=a.problem)
    _write(a.out, write_rgc(generate(spec)))
    return EXIT_OK


def cmd_solve(a: argparse.Namespace, out: TextIO) -> int:
    collection = parse_rgc(_read(a.inp))
    a._collection = collection
    t, stats = solve(a.problem, collection)
    if not verify_transversal(collection, t, a.problem).valid:
        raise InvariantViolation("solver output failed verification", {"edges": t.triples()})
    _write(a.cert, write_certificate(a.problem, collection.n, t))
    print(json.dumps(stats), file=out)
    return EXIT_OK


def cmd_verify(a: argparse.Namespace, out: TextIO) -> int:
    collection = parse_rgc(_read(a.inp))
    problem, n, t = parse_certificate(_read(a.cert))
    failures = []
    if problem != a.problem:
        failures.append(f"shape-mismatch: certificate is for {problem}, expected {a.problem}")
    if n != collection.n:
        failures.append(f"shape-mismatch: certificate has n={n}, instance has n={collection.n}")
    report = verify_transversal(collection, t, a.problem)
    failures.extend(f"{f.kind}: {f.detail}" for f in report.failures)
    if failures:
        print("INVALID", file=out)
        for line in failures:
            print(f"  {line}", file=out)
        return EXIT_NO
    print("VALID", file=out)
    return EXIT_OK


def cmd_brute(a: argparse.Namespace, out: TextIO) -> int:
    collection = parse_rgc(_read(a.inp))
    if a.problem == "max-matching":
        print(max_rainbow_matching_size(collection), file=out)
        return EXIT_OK
    fn: Callable[[GraphCollection], Transversal | None]
    fn = brute_hamilton if a.problem == "hamilton" else brute_perfect_matching
    t = fn(collection)
    if t is None:
        print("NOT FOUND", file=out)
        return EXIT_NO
    print("FOUND", file=out)
    if a.cert:
        _write(a.cert, write_certificate(a.problem, collection.n, t))
    return EXIT_OK


def bench_trial(problem: str, n: int, seed: int) -> dict[str, Any]:
    """One benchmark record; every field except the timings is deterministic."""
    t0 = time.perf_counter()
    collection = gen_random_dirac(n, problem, seed)
    t1 = time.perf_counter()
    t, stats = solve(problem, collection)
    t2 = time.perf_counter()
    valid = verify_transversal(collection, t, problem).valid
    return {
        "problem": problem,
        "n": n,
        "seed": seed,
        "valid": valid,
        "gen_time_s": round(t1 - t0, 6),
        "wall_time_s": round(t2 - t1, 6),
        **stats,
    }


def cmd_bench(a: argparse.Namespace, out: TextIO) -> int:
    if a.trials < 1 or not a.n:
        raise InputError("bench needs at least one n and one trial")
    records = []
    for n in a.n:
        for k in range(a.trials):
            rec = bench_trial(a.problem, n, (a.seed + k) % 2**64)
            records.append(rec)
            print(json.dumps(rec), file=out, flush=True)
    if a.csv:
        rows = []
        for n in a.n:
            group = [r for r in records if r["n"] == n]
            times = [r["wall_time_s"] for r in group]
            rows.append(
                {
                    "problem": a.problem,
                    "n": n,
                    "trials": len(group),
                    "failures": sum(not r["valid"] for r in group),
                    "mean_wall_time_s": round(statistics.fmean(times), 6),
                    "max_wall_time_s": round(max(times), 6),
                }
            )
        try:
            with open(a.csv, "w", newline="") as fh:
                w = csv.DictWriter(fh, fieldnames=list(rows[0]))
                w.writeheader()
                w.writerows(rows)
        except OSError as exc:
            raise InputError(f"cannot write {a.csv}: {exc.strerror}") from None
    return EXIT_OK if all(r["valid"] for r in records) else EXIT_NO


COMMANDS = {"gen": cmd_gen, "solve": cmd_solve, "verify": cmd_verify, "brute": cmd_brute, "bench": cmd_bench}


def _dump_crash(a: argparse.Namespace | None, exc: InvariantViolation) -> str | None:
    bundle: dict[str, Any] = {"error": str(exc), "state": exc.state}
    collection = getattr(a, "_collection", None)
    if collection is None and a is not None and getattr(a, "inp", None):
        try:
            collection = parse_rgc(_read(a.inp))
        except InputError:
            collection = None
    if collection is not None:
        bundle["rgc"] = write_rgc(collection)
    if a is not None:
        bundle["argv"] = {k: v for k, v in vars(a).items() if not k.startswith("_")}
    path = f"rainbowtx-crash-{os.getpid()}-{int(time.time())}.json"
    try:
        Path(path).write_text(json.dumps(bundle, indent=1, default=str))
    except OSError:
        return None
    return path


def run_cli(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Run one command and return its exit code; never raises."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    a: argparse.Namespace | None = None
    try:
        a = build_parser().parse_args(argv)
        return COMMANDS[a.command](a, out)
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    except InputError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except InvariantViolation as exc:
        path = _dump_crash(a, exc)
        print(f"internal error: {exc}" + (f" (state saved to {path})" if path else ""), file=err)
        return EXIT_INTERNAL
    except Exception as exc:  # any other defect is internal as well
        print(f"internal error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
