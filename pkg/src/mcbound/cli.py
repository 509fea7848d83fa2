"""Command-line front end: generation, verification, bound reports, file I/O.

Results go to stdout, diagnostics and progress to stderr.  Exit status is 0
exactly when the command's success condition holds.
"""

import argparse
import os
import random
import sys

from . import bounds, oracle
from .circuits import (format_truth_table, is_negation_normal, minimalize_circuit,
                       negation_normalize, normalize_circuit_layering, parse_circuit,
                       topology_of, truth_table)
from .errors import CapacityError, CircuitError, ContractError, ParseError
from .randgen import random_circuit
from .topology import (generate, is_minimal, is_well_layered, load_topology_set,
                       save_topology_set)

EXPECTED_CLASS_COUNTS = {1: 1, 2: 2, 3: 8, 4: 88, 5: 3564, 6: 555709}
LONG_RUN_K = 6


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mcbound",
        description="Enumerate XOR-AND circuit topologies up to equivalence and "
                    "evaluate the counting bounds they imply.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="enumerate topology classes and write them to a file")
    p.add_argument("--k", type=int, required=True, help="gate count (1..7)")
    p.add_argument("--out", required=True, help="output topology-set file")
    _common_flags(p)

    p = sub.add_parser("table2", help="recompute the class-count table and compare "
                                      "against the known values")
    p.add_argument("--max-k", type=int, default=5, help="largest gate count to check (<= 6)")
    _common_flags(p)

    p = sub.add_parser("prove", help="print the bound report and check the pigeonhole verdict")
    p.add_argument("--n", type=int, required=True, help="input arity")
    p.add_argument("--k", type=int, required=True, help="gate count")
    p.add_argument("--classes", type=int, help="topology class count to use")
    p.add_argument("--topologies", help="topology-set file to take the class count from")
    _common_flags(p)

    p = sub.add_parser("verify", help="run a brute-force cross-validation suite")
    p.add_argument("--suite", required=True,
                   choices=["oracle-topologies", "rewrites", "completeness", "m3"])
    p.add_argument("--max-k", type=int, default=4, help="cap for oracle-topologies")
    p.add_argument("--cases", type=int, default=1000, help="random cases for rewrites")
    p.add_argument("--seed", type=int, default=42, help="seed for random cases")
    _common_flags(p)

    p = sub.add_parser("eval", help="print the truth table of a circuit file")
    p.add_argument("circuit", help="circuit file in the circuit text format")
    return parser


def _common_flags(p):
    p.add_argument("--workers", type=int, default=None,
                   help="parallel workers (default: MCBOUND_WORKERS or 1); never changes output")
    p.add_argument("--allow-long", action="store_true",
                   help="permit the multi-minute k=6 generation")
    p.add_argument("-v", "--verbose", action="store_true", help="progress to stderr")


def _usage_error(message):
    print(f"usage error: {message}", file=sys.stderr)
    return 2


def _workers(args):
    if args.workers is not None:
        return max(1, args.workers)
    value = os.environ.get("MCBOUND_WORKERS")
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            pass
    return 1


def _progress(args):
    if not (args.verbose or getattr(args, "allow_long", False)):
        return None

    def emit(event):
        if event["phase"] == "round":
            print(f"[generate] round {event['round']}: {event['complete']} complete, "
                  f"{event['partial']} partial", file=sys.stderr)
        else:
            print(f"[generate] round {event['round']}: extended {event['done']}/"
                  f"{event['pending']} partials, {event['found']} candidates", file=sys.stderr)
    return emit


def _guard_long(args, k):
    if k >= LONG_RUN_K and not args.allow_long:
        print(f"error: k={k} is a long run (minutes to hours); pass --allow-long "
              f"to confirm", file=sys.stderr)
        return False
    return True


def _cmd_generate(args):
    if args.k < 1:
        return _usage_error("--k must be at least 1")
    if not _guard_long(args, args.k):
        return 1
    ts = generate(args.k, workers=_workers(args), progress=_progress(args))
    save_topology_set(ts, args.out)
    print(ts.count)
    return 0


def _cmd_table2(args):
    if args.max_k < 1:
        return _usage_error("--max-k must be at least 1")
    if args.max_k > max(EXPECTED_CLASS_COUNTS):
        return _usage_error(f"no expected value beyond k={max(EXPECTED_CLASS_COUNTS)}")
    if not _guard_long(args, args.max_k):
        return 1
    workers = _workers(args)
    progress = _progress(args)
    failures = []
    for k in range(1, args.max_k + 1):
        count = generate(k, workers=workers, progress=progress).count
        print(f"{k} {count}")
        if count != EXPECTED_CLASS_COUNTS[k]:
            failures.append((k, count))
    for k, count in failures:
        print(f"error: k={k} produced {count}, expected {EXPECTED_CLASS_COUNTS[k]}",
              file=sys.stderr)
    return 1 if failures else 0


def _cmd_prove(args):
    if args.n < 1:
        return _usage_error("--n must be at least 1")
    if args.k < 0:
        return _usage_error("--k must be non-negative")
    if args.classes is not None:
        classes = args.classes
    elif args.topologies:
        ts = load_topology_set(args.topologies)
        if ts.k != args.k:
            return _usage_error(f"{args.topologies} holds k={ts.k} topologies, not k={args.k}")
        classes = ts.count
    else:
        if not _guard_long(args, args.k):
            return 1
        classes = generate(args.k, workers=_workers(args), progress=_progress(args)).count
    if classes < 1:
        return _usage_error("class count must be at least 1")
    report = bounds.pigeonhole_report(args.n, args.k, classes)
    print(bounds.render_report(report))
    return 0 if report.verdict else 1


def _suite_oracle_topologies(args):
    ok = True
    for k in range(1, args.max_k + 1):
        raw = list(oracle.enumerate_raw_topologies(k))
        expected_raw = bounds.raw_topology_count(k)
        if len(raw) != expected_raw:
            print(f"fail: k={k}: {len(raw)} raw topologies, expected {expected_raw}",
                  file=sys.stderr)
            ok = False
            continue
        kept = [t for t in raw if is_well_layered(t) and is_minimal(t)]
        classes = oracle.brute_equiv_classes(kept)
        reps = generate(k, workers=_workers(args))
        by_encoding = {}
        for ci, cls in enumerate(classes):
            for t in cls:
                by_encoding[t.encode()] = ci
        hits = [0] * len(classes)
        missing = None
        for member in reps.members:
            ci = by_encoding.get(member.encode())
            if ci is None:
                missing = member
                break
            hits[ci] += 1
        if (len(classes) != reps.count or missing is not None
                or any(h != 1 for h in hits)):
            print(f"fail: k={k}: {len(classes)} brute classes vs {reps.count} generated",
                  file=sys.stderr)
            if missing is not None:
                print(f"  generated member outside every class:\n{missing}", file=sys.stderr)
            ok = False
        else:
            print(f"ok: k={k}: {len(classes)} classes match generated representatives")
    return 0 if ok else 1


def _suite_rewrites(args):
    rng = random.Random(args.seed)
    for case in range(args.cases):
        c = random_circuit(rng)
        before = truth_table(c)

        nn = negation_normalize(c)
        if truth_table(nn) != before or not is_negation_normal(nn) \
                or negation_normalize(nn) != nn:
            _report_rewrite_failure("negation_normalize", case, c)
            return 1

        layered = normalize_circuit_layering(c)
        if truth_table(layered) != before:
            _report_rewrite_failure("normalize_circuit_layering", case, c)
            return 1
        mini = minimalize_circuit(layered)
        topo = topology_of(mini)
        if truth_table(mini) != before or not is_minimal(topo) \
                or not is_well_layered(topo) or minimalize_circuit(mini) != mini:
            _report_rewrite_failure("minimalize_circuit", case, c)
            return 1
    print(f"ok: {args.cases} random circuits, rewrites preserve the function")
    return 0


def _report_rewrite_failure(op, case, c):
    from .circuits import format_circuit
    print(f"fail: {op} broke on case {case}:", file=sys.stderr)
    print(format_circuit(c), file=sys.stderr, end="")


def _suite_completeness(args):
    ok = True
    for n, k in ((1, 1), (2, 0), (2, 2)):
        if oracle.verify_completeness_small(n, k):
            print(f"ok: n={n} k={k}: restricted and unrestricted function sets agree")
        else:
            print(f"fail: n={n} k={k}: function sets differ", file=sys.stderr)
            ok = False
    return 0 if ok else 1


def _suite_m3(args):
    all_b3 = 1 << (1 << 3)
    two = oracle.exhaustive_function_set(3, 2, generate(2))
    one = oracle.exhaustive_function_set(3, 1, generate(1))
    ok = True
    if len(two) == all_b3:
        print(f"ok: k=2 covers all {all_b3} functions of B_3")
    else:
        print(f"fail: k=2 covers only {len(two)} of {all_b3} functions", file=sys.stderr)
        ok = False
    if len(one) < all_b3:
        print(f"ok: k=1 covers only {len(one)} functions, so M(3) = 2")
    else:
        print("fail: k=1 unexpectedly covers all of B_3", file=sys.stderr)
        ok = False
    return 0 if ok else 1


def _cmd_verify(args):
    suites = {
        "oracle-topologies": _suite_oracle_topologies,
        "rewrites": _suite_rewrites,
        "completeness": _suite_completeness,
        "m3": _suite_m3,
    }
    return suites[args.suite](args)


def _cmd_eval(args):
    with open(args.circuit, "r", encoding="ascii") as fh:
        circuit = parse_circuit(fh.read())
    print(format_truth_table(truth_table(circuit)))
    return 0


_DISPATCH = {
    "generate": _cmd_generate,
    "table2": _cmd_table2,
    "prove": _cmd_prove,
    "verify": _cmd_verify,
    "eval": _cmd_eval,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except (CapacityError, CircuitError, ContractError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
