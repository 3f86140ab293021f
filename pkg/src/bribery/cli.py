"""Command line interface: solve bribery instances, generate reduced
instances, and run the oracle cross-validation harness.

Exit codes for ``bribe``: 0 feasible, 1 infeasible, 2 error.  ``check``
exits 0 iff no solver disagreed with the oracle.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import ilp, reductions, solvers
from .elections import APPROVALS, ElectionError, ORDERS
from .electionfile import ParseError, parse_election, parse_rule_tokens, serialize_election
from .harness import CheckCaps, run_check
from .model import BriberyQuery, BriberyWitness, ManipulationQuery, QueryError, SolveResult, witness_cost
from .oracle import OracleCapError, oracle_bribery
from .solvers import NoSolverError


class CliError(Exception):
    pass


def _build_query(args, election, rule) -> BriberyQuery:
    names = {n: i for i, n in enumerate(election.candidates)}
    if args.target not in names:
        raise CliError(f"unknown target candidate {args.target!r}")
    try:
        return BriberyQuery(
            election,
            rule,
            names[args.target],
            args.budget,
            priced=args.priced,
            weighted=args.weighted,
            negative=args.negative,
            approval_flip=args.flip,
            unique=args.unique,
            prices_unary=args.prices_unary,
            weights_unary=args.weights_unary,
        )
    except QueryError as exc:
        raise CliError(str(exc)) from None


def _dispatch(q: BriberyQuery, requested: str) -> SolveResult:
    kind = q.rule.kind
    if requested == "oracle":
        return oracle_bribery(q)
    if requested == "auto":
        picked = solvers.auto_solver(q)
        if picked is not None:
            return picked[1](q)
        if kind in ("dodgson", "young"):
            return ilp.solve_full_dodgson_or_young_bribery(q)
        if kind == "kemeny":
            return ilp.solve_kemeny_ilp(q)
        return oracle_bribery(q)
    if requested == "greedy":
        if kind == "veto":
            return solvers.solve_veto(q)
        return solvers.solve_plurality_basic(q)
    if requested == "sweep":
        if q.negative:
            return solvers.solve_plurality_negative_priced(q)
        if q.weighted:
            return solvers.solve_plurality_weighted(q)
        return solvers.solve_plurality_priced(q)
    if requested == "dp-prices":
        if q.approval_flip:
            return solvers.solve_approval_flip(q, axis="prices")
        return solvers.solve_plurality_unary_prices(q)
    if requested == "dp-weights":
        if q.approval_flip:
            return solvers.solve_approval_flip(q, axis="weights")
        if kind == "plurality":
            return solvers.solve_plurality_unary_weights(q)
        return solvers.solve_scoring_unary_weights(q)
    if requested == "enum":
        return solvers.solve_scoring_priced(q)
    if requested == "ilp":
        if kind in ("dodgson", "young"):
            return ilp.solve_full_dodgson_or_young_bribery(q)
        if kind == "kemeny":
            return ilp.solve_kemeny_ilp(q)
        return ilp.solve_scoring_ilp(q)
    raise CliError(f"unknown solver {requested!r}")


def _witness_lines(q: BriberyQuery, w: BriberyWitness) -> list[str]:
    e = q.election
    out = []
    for i, mv in enumerate(w.rewrites):
        ballot = ">".join(e.candidates[c] for c in mv.ballot) if e.ballot_kind == ORDERS else (
            "".join("1" if b else "0" for b in mv.ballot)
        )
        field = "order" if e.ballot_kind == ORDERS else "approve"
        out.append(f"witness.{i}: block={mv.block} count={mv.count} {field}={ballot}")
    for i, mv in enumerate(w.flips, start=len(w.rewrites)):
        entries = ",".join(e.candidates[c] for c in sorted(mv.entries))
        out.append(f"witness.{i}: block={mv.block} count={mv.count} flip={entries}")
    return out


def cmd_bribe(args) -> int:
    try:
        text = open(args.file).read()
        election, file_rule = parse_election(text)
        rule = parse_rule_tokens(args.rule.split()) if args.rule else file_rule
        if rule is None:
            raise CliError("no rule: give one in the file or with --rule")
        q = _build_query(args, election, rule)
        t0 = time.perf_counter()
        result = _dispatch(q, args.solver)
        wall_ms = (time.perf_counter() - t0) * 1000
    except (OSError, ParseError, CliError, ElectionError, QueryError, NoSolverError,
            OracleCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    from .electionfile import rule_tokens

    lines = [
        f"file: {args.file}",
        f"rule: {rule_tokens(rule)}",
        f"target: {args.target}",
        f"budget: {args.budget}",
        f"priced: {str(q.priced).lower()}",
        f"weighted: {str(q.weighted).lower()}",
        f"negative: {str(q.negative).lower()}",
        f"flip: {str(q.approval_flip).lower()}",
        f"unique: {str(q.unique).lower()}",
        f"solver: {result.solver}",
        f"feasible: {str(result.feasible).lower()}",
    ]
    if result.feasible:
        lines.append(f"cost: {witness_cost(q, result.witness)}")
        lines.extend(_witness_lines(q, result.witness))
    lines.append(f"wall_ms: {wall_ms:.2f}")
    print("\n".join(lines))
    return 0 if result.feasible else 1


def _parse_int_list(text: str) -> tuple[int, ...]:
    if not text:
        return ()
    return tuple(int(tok) for tok in text.replace(",", " ").split())


_PARTITION_REDUCTIONS = {
    "plurality-wd": reductions.partition_to_weighted_dollar_plurality,
    "negative-weighted": reductions.partition_to_negative_weighted,
    "approval-flip": reductions.partition_to_approval_flip_weighted,
}


def _partition_witness(name, inst, picked):
    if name == "plurality-wd":
        return reductions.partition_witness_weighted_dollar(inst, picked)
    if name == "negative-weighted":
        return reductions.partition_witness_negative(inst, picked)
    return reductions.partition_witness_approval_flip(inst, picked)


def cmd_gen(args) -> int:
    try:
        if args.source == "partition" or args.source == "partition-prime":
            inst = reductions.PartitionInstance(tuple(args.values))
            if args.source == "partition-prime":
                inst = reductions.partition_prime_transform(inst)
                print(f"# transformed values: {' '.join(str(v) for v in inst.values)}",
                      file=sys.stderr)
                if not args.reduction:
                    print(" ".join(str(v) for v in inst.values))
                    return 0
            if not args.reduction:
                raise CliError("partition needs --reduction")
            if args.reduction not in _PARTITION_REDUCTIONS:
                raise CliError(f"unknown partition reduction {args.reduction!r}")
            if args.reduction == "plurality-wd":
                q = reductions.partition_to_weighted_dollar_plurality(inst, unique=args.unique)
            else:
                if args.unique:
                    raise CliError(f"{args.reduction} has no unique variant here")
                q = _PARTITION_REDUCTIONS[args.reduction](inst)
            expected = reductions.has_partition(inst)
            witness = None
            if args.certificate is not None:
                picked = _parse_int_list(args.certificate)
                if sum(inst.values[i] for i in picked) * 2 != inst.total or not inst.is_legal:
                    raise CliError("certificate does not split the values evenly")
                witness = _partition_witness(args.reduction, inst, picked)
        elif args.source == "x3c":
            sets = tuple(frozenset(_parse_int_list(s)) for s in args.set or ())
            inst = reductions.X3CInstance(args.elements, sets)
            q = reductions.x3c_to_approval(inst)
            expected = reductions.has_exact_cover(inst)
            witness = None
            if args.certificate is not None:
                picked = _parse_int_list(args.certificate)
                covered = set()
                for i in picked:
                    covered |= inst.sets[i]
                if len(picked) != inst.t or covered != set(range(inst.ground_size)):
                    raise CliError("certificate is not an exact cover")
                witness = reductions.x3c_witness(inst, picked)
        elif args.source == "embed-manip":
            text = open(args.file).read()
            election, rule = parse_election(text)
            if rule is None:
                raise CliError("the base election file needs a rule line")
            names = {n: i for i, n in enumerate(election.candidates)}
            if args.target not in names:
                raise CliError(f"unknown target candidate {args.target!r}")
            mq = ManipulationQuery(
                election,
                rule,
                _parse_int_list(args.manipulators or ""),
                names[args.target],
                unique=args.unique,
            )
            q = reductions.manipulation_to_dollar_bribery(mq)
            expected = None
            witness = None
        else:
            raise CliError(f"unknown source {args.source!r}")
    except (OSError, CliError, QueryError, ElectionError, ParseError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    body = serialize_election(q.election, q.rule)
    note_lines = [
        f"target: {q.election.candidates[q.target]}",
        f"budget: {q.budget}",
    ]
    flags = [
        f"--{name}"
        for name, on in (
            ("priced", q.priced),
            ("weighted", q.weighted),
            ("negative", q.negative),
            ("flip", q.approval_flip),
            ("unique", q.unique),
        )
        if on
    ]
    note_lines.append("flags: " + " ".join(flags))
    if expected is None:
        note_lines.append("expected: unknown")
    else:
        note_lines.append(f"expected: {'feasible' if expected else 'infeasible'}")
    if witness is not None:
        note_lines.extend(_witness_lines(q, witness))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(body)
        note_path = args.note or (args.out + ".note")
        note_lines.insert(
            0,
            "replay: bribery bribe --file %s --target %s --budget %d %s"
            % (args.out, q.election.candidates[q.target], q.budget, " ".join(flags)),
        )
        with open(note_path, "w") as fh:
            fh.write("\n".join(note_lines) + "\n")
    else:
        sys.stdout.write(body)
        print("\n".join(note_lines), file=sys.stderr)
    if expected is False and args.certificate is None:
        print("warning: generated instance is infeasible", file=sys.stderr)
    return 0


def cmd_check(args) -> int:
    caps = CheckCaps(max_candidates=args.max_candidates, max_voters=args.max_voters)
    summary = run_check(
        args.seed,
        args.instances,
        caps=caps,
        report_dir=args.report_dir,
    )
    mismatches = summary.mismatches
    print(f"instances: {summary.instances}")
    print(f"rows: {len(summary.rows)}")
    print(f"mismatches: {len(mismatches)}")
    for r in mismatches[:20]:
        print(
            f"  instance={r.instance} family={r.family} solver={r.solver} "
            f"solver_verdict={r.verdict} oracle={r.oracle_verdict} witness_ok={r.witness_ok}"
        )
    if summary.mismatch_files:
        print("replay files:")
        for path in summary.mismatch_files[:20]:
            print(f"  {path}")
    return 0 if not mismatches else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bribery",
        description="Election bribery solvers with a brute-force cross-validation harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bribe = sub.add_parser("bribe", help="solve one bribery instance")
    p_bribe.add_argument("--file", required=True, help="election file")
    p_bribe.add_argument("--target", required=True, help="candidate to make a winner")
    p_bribe.add_argument("--budget", type=int, required=True)
    p_bribe.add_argument("--rule", help="override the file's rule, e.g. 'scoring 2 1 0'")
    p_bribe.add_argument("--priced", action="store_true")
    p_bribe.add_argument("--weighted", action="store_true")
    p_bribe.add_argument("--negative", action="store_true")
    p_bribe.add_argument("--flip", action="store_true", help="entry-flip approval model")
    p_bribe.add_argument("--unique", action="store_true", help="require a unique winner")
    p_bribe.add_argument("--prices-unary", action="store_true")
    p_bribe.add_argument("--weights-unary", action="store_true")
    p_bribe.add_argument(
        "--solver",
        default="auto",
        choices=["auto", "greedy", "sweep", "dp-prices", "dp-weights", "enum", "ilp", "oracle"],
    )
    p_bribe.set_defaults(func=cmd_bribe)

    p_gen = sub.add_parser("gen", help="generate a reduced bribery instance")
    p_gen.add_argument("source", choices=["partition", "partition-prime", "x3c", "embed-manip"])
    p_gen.add_argument("values", type=int, nargs="*", help="partition values")
    p_gen.add_argument("--reduction", help="partition reductions: " + ", ".join(_PARTITION_REDUCTIONS))
    p_gen.add_argument("--unique", action="store_true")
    p_gen.add_argument("--certificate", help="source certificate, e.g. '0,2'")
    p_gen.add_argument("--elements", type=int, default=0, help="x3c ground set size")
    p_gen.add_argument("--set", action="append", help="x3c triple, e.g. '0,1,2'")
    p_gen.add_argument("--file", help="embed-manip: base election file")
    p_gen.add_argument("--target", help="embed-manip: target candidate name")
    p_gen.add_argument("--manipulators", help="embed-manip: weights, e.g. '3,2'")
    p_gen.add_argument("-o", "--out", help="write the election file here")
    p_gen.add_argument("--note", help="sidecar note path (default OUT.note)")
    p_gen.set_defaults(func=cmd_gen)

    p_check = sub.add_parser("check", help="cross-validate solvers against the oracle")
    p_check.add_argument("--seed", type=int, default=1)
    p_check.add_argument("--instances", type=int, default=100)
    p_check.add_argument("--max-candidates", type=int, default=3)
    p_check.add_argument("--max-voters", type=int, default=6)
    p_check.add_argument("--report-dir", help="write results.csv, figures, and mismatch replays here")
    p_check.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
