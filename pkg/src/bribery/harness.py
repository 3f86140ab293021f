"""Cross-validation harness: random and reduction-derived instances, every
applicable solver checked against the exhaustive oracle.

Each generated instance runs in both the nonunique and the unique winner
mode.  Mismatches are dumped as replayable election files; the report path
writes the per-run rows as CSV plus rendered summary figures.
"""

from __future__ import annotations

import csv
import random
import time
from dataclasses import dataclass, field, replace
from pathlib import Path

from . import ilp, reductions, solvers
from .elections import (
    APPROVAL,
    APPROVALS,
    DODGSON,
    Election,
    KEMENY,
    ORDERS,
    PLURALITY,
    VETO,
    VoterBlock,
    YOUNG,
    scoring,
)
from .electionfile import serialize_election
from .model import BriberyQuery
from .oracle import oracle_bribery, oracle_score_bribery, verify_witness


@dataclass
class CheckRow:
    instance: int
    family: str
    unique: bool
    solver: str
    verdict: bool
    oracle_verdict: bool
    witness_ok: bool
    ms: float

    @property
    def match(self) -> bool:
        return self.verdict == self.oracle_verdict and self.witness_ok


@dataclass
class CheckSummary:
    rows: list[CheckRow] = field(default_factory=list)
    mismatch_files: list[str] = field(default_factory=list)

    @property
    def mismatches(self) -> list[CheckRow]:
        return [r for r in self.rows if not r.match]

    @property
    def instances(self) -> int:
        return len({r.instance for r in self.rows})


def _rand_orders(rng, m, n, *, wmax=1, pmax=1, mult=1):
    voters = []
    for _ in range(n):
        order = list(range(m))
        rng.shuffle(order)
        voters.append(
            VoterBlock(
                tuple(order),
                price=rng.randint(0, pmax) if pmax > 1 else 1,
                weight=rng.randint(0, wmax) if wmax > 1 else 1,
                multiplicity=rng.randint(1, mult),
            )
        )
    return Election(tuple(f"c{i}" for i in range(m)), tuple(voters), ORDERS)


def _rand_approvals(rng, m, n, *, wmax=1, flip_pmax=0, mult=1):
    voters = []
    for _ in range(n):
        ballot = tuple(rng.random() < 0.5 for _ in range(m))
        voters.append(
            VoterBlock(
                ballot,
                price=1,
                weight=rng.randint(0, wmax) if wmax > 1 else 1,
                multiplicity=rng.randint(1, mult),
                flip_prices=tuple(rng.randint(0, flip_pmax) for _ in range(m))
                if flip_pmax
                else None,
            )
        )
    return Election(tuple(f"c{i}" for i in range(m)), tuple(voters), APPROVALS)


def _alpha(rng, m):
    return tuple(sorted((rng.randint(0, 4) for _ in range(m)), reverse=True))


def _gen_plurality_basic(rng, caps):
    m = rng.randint(1, caps.max_candidates)
    e = _rand_orders(rng, m, rng.randint(0, caps.max_voters), mult=2)
    q = BriberyQuery(e, PLURALITY, rng.randrange(m), rng.randint(0, 6))
    return q, [("greedy", solvers.solve_plurality_basic),
               ("enum", solvers.solve_scoring_priced),
               ("ilp-scoring", ilp.solve_scoring_ilp)]


def _gen_plurality_priced(rng, caps):
    m = rng.randint(1, caps.max_candidates)
    e = _rand_orders(rng, m, rng.randint(0, caps.max_voters), pmax=4)
    q = BriberyQuery(e, PLURALITY, rng.randrange(m), rng.randint(0, 6), priced=True)
    return q, [("price-sweep", solvers.solve_plurality_priced),
               ("enum", solvers.solve_scoring_priced)]


def _gen_plurality_weighted(rng, caps):
    m = rng.randint(1, caps.max_candidates)
    e = _rand_orders(rng, m, rng.randint(0, caps.max_voters), wmax=4)
    q = BriberyQuery(
        e, PLURALITY, rng.randrange(m), rng.randint(0, 6), weighted=True, weights_unary=True
    )
    return q, [("weight-sweep", solvers.solve_plurality_weighted),
               ("g-dp", solvers.solve_scoring_unary_weights)]


def _gen_plurality_negative(rng, caps):
    m = rng.randint(1, caps.max_candidates)
    e = _rand_orders(rng, m, rng.randint(0, caps.max_voters), pmax=4)
    q = BriberyQuery(
        e, PLURALITY, rng.randrange(m), rng.randint(0, 6), priced=True, negative=True
    )
    return q, [("negative-check", solvers.solve_plurality_negative_priced)]


def _gen_plurality_unary(rng, caps):
    m = rng.randint(1, caps.max_candidates)
    e = _rand_orders(rng, m, rng.randint(0, caps.max_voters), pmax=4, wmax=4)
    q = BriberyQuery(
        e,
        PLURALITY,
        rng.randrange(m),
        rng.randint(0, 6),
        priced=True,
        weighted=True,
        prices_unary=True,
        weights_unary=True,
    )
    return q, [("dp-prices", solvers.solve_plurality_unary_prices),
               ("dp-weights", solvers.solve_plurality_unary_weights)]


def _gen_approval_flip(rng, caps):
    m = rng.randint(1, caps.max_candidates)
    e = _rand_approvals(rng, m, rng.randint(0, caps.max_voters), wmax=4, flip_pmax=4, mult=2)
    q = BriberyQuery(
        e,
        APPROVAL,
        rng.randrange(m),
        rng.randint(0, 6),
        priced=True,
        weighted=True,
        approval_flip=True,
        prices_unary=True,
        weights_unary=True,
    )
    return q, [
        ("flip-dp-prices", lambda qq: solvers.solve_approval_flip(qq, axis="prices")),
        ("flip-dp-weights", lambda qq: solvers.solve_approval_flip(qq, axis="weights")),
    ]


def _gen_scoring_priced(rng, caps):
    m = rng.randint(1, caps.max_candidates)
    e = _rand_orders(rng, m, rng.randint(0, caps.max_voters), pmax=4)
    q = BriberyQuery(e, scoring(_alpha(rng, m)), rng.randrange(m), rng.randint(0, 6), priced=True)
    return q, [("enum", solvers.solve_scoring_priced)]


def _gen_scoring_plain(rng, caps):
    m = rng.randint(1, caps.max_candidates)
    e = _rand_orders(rng, m, rng.randint(0, caps.max_voters), mult=2)
    q = BriberyQuery(e, scoring(_alpha(rng, m)), rng.randrange(m), rng.randint(0, 6))
    return q, [("enum", solvers.solve_scoring_priced),
               ("ilp-scoring", ilp.solve_scoring_ilp)]


def _gen_scoring_unary_weights(rng, caps):
    m = rng.randint(1, caps.max_candidates)
    e = _rand_orders(rng, m, min(rng.randint(0, caps.max_voters), 5), pmax=4, wmax=4)
    q = BriberyQuery(
        e,
        scoring(_alpha(rng, m)),
        rng.randrange(m),
        rng.randint(0, 6),
        priced=True,
        weighted=True,
        weights_unary=True,
    )
    return q, [("g-dp", solvers.solve_scoring_unary_weights)]


def _gen_veto(rng, caps):
    m = rng.randint(1, caps.max_candidates)
    e = _rand_orders(rng, m, rng.randint(0, caps.max_voters), mult=2)
    q = BriberyQuery(e, VETO, rng.randrange(m), rng.randint(0, 6))
    return q, [("veto-greedy", solvers.solve_veto),
               ("enum", solvers.solve_scoring_priced),
               ("ilp-scoring", ilp.solve_scoring_ilp)]


def _gen_kemeny(rng, caps):
    m = rng.randint(1, caps.max_candidates)
    e = _rand_orders(rng, m, min(rng.randint(0, caps.max_voters), 5), mult=2)
    q = BriberyQuery(e, KEMENY, rng.randrange(m), rng.randint(0, 3))
    return q, [("ilp-kemeny", ilp.solve_kemeny_ilp)]


def _gen_condorcet_full(rng, caps):
    m = rng.randint(2, caps.max_candidates)
    rule = rng.choice((DODGSON, YOUNG))
    priced = rng.random() < 0.5
    e = _rand_orders(rng, m, min(rng.randint(1, caps.max_voters), 4), pmax=3 if priced else 1)
    q = BriberyQuery(e, rule, rng.randrange(m), rng.randint(0, 2), priced=priced)
    return q, [(f"ilp-{rule.kind}-full", ilp.solve_full_dodgson_or_young_bribery)]


def _gen_score_target(rng, caps):
    m = rng.randint(2, caps.max_candidates)
    rule = rng.choice((DODGSON, YOUNG))
    e = _rand_orders(rng, m, min(rng.randint(1, caps.max_voters), 4), mult=2)
    q = BriberyQuery(e, rule, rng.randrange(m), rng.randint(0, 2))
    t = rng.randint(0, 4)
    return (q, t), [(f"ilp-{rule.kind}-score", None)]


def _gen_reduction_partition(rng, caps):
    inst = reductions.PartitionInstance(tuple(rng.randint(0, 5) for _ in range(rng.randint(1, 4))))
    which = rng.randrange(3)
    if which == 0:
        q = reductions.partition_to_weighted_dollar_plurality(inst)
    elif which == 1:
        q = reductions.partition_to_negative_weighted(inst)
    else:
        q = reductions.partition_to_approval_flip_weighted(inst)
    expected = reductions.has_partition(inst)
    return q, [("reduction-source", expected)]


def _gen_reduction_x3c(rng, caps):
    t = 1 if rng.random() < 0.7 else 2
    g = 3 * t
    sets = tuple(frozenset(rng.sample(range(g), 3)) for _ in range(rng.randint(t, 3)))
    inst = reductions.X3CInstance(g, sets)
    q = reductions.x3c_to_approval(inst)
    return q, [("reduction-source", reductions.has_exact_cover(inst))]


FAMILIES = {
    "plurality-basic": _gen_plurality_basic,
    "plurality-priced": _gen_plurality_priced,
    "plurality-weighted": _gen_plurality_weighted,
    "plurality-negative": _gen_plurality_negative,
    "plurality-unary": _gen_plurality_unary,
    "approval-flip": _gen_approval_flip,
    "scoring-priced": _gen_scoring_priced,
    "scoring-plain": _gen_scoring_plain,
    "scoring-unary-weights": _gen_scoring_unary_weights,
    "veto": _gen_veto,
    "kemeny": _gen_kemeny,
    "condorcet-full": _gen_condorcet_full,
    "score-target": _gen_score_target,
    "reduction-partition": _gen_reduction_partition,
    "reduction-x3c": _gen_reduction_x3c,
}

# reduction images fix their own variant; flipping winner modes would break
# the source-to-image equivalence being checked
_SINGLE_MODE = {"reduction-partition", "reduction-x3c", "score-target"}


@dataclass(frozen=True)
class CheckCaps:
    max_candidates: int = 3
    max_voters: int = 6


def run_check(
    seed: int,
    instances: int,
    caps: CheckCaps = CheckCaps(),
    families=None,
    report_dir: str | None = None,
    solver_overrides=None,
) -> CheckSummary:
    rng = random.Random(seed)
    chosen = list(families or FAMILIES)
    overrides = solver_overrides or {}
    summary = CheckSummary()
    mismatch_dir = Path(report_dir) if report_dir else Path("bribery-mismatches")
    for idx in range(instances):
        family = chosen[idx % len(chosen)]
        generated, routes = FAMILIES[family](rng, caps)
        modes = (False,) if family in _SINGLE_MODE else (False, True)
        for unique in modes:
            if family == "score-target":
                q, t = generated
                want = oracle_score_bribery(q, t).feasible
                name = routes[0][0]
                t0 = time.perf_counter()
                got = ilp.score_bribery_feasible(q, q.rule.kind, t)
                ms = (time.perf_counter() - t0) * 1000
                row = CheckRow(idx, family, unique, name, got, want, True, ms)
                summary.rows.append(row)
                if not row.match:
                    summary.mismatch_files.append(
                        _dump_mismatch(mismatch_dir, idx, family, q, name, got, want)
                    )
                continue
            q = replace(generated, unique=unique) if unique else generated
            want = oracle_bribery(q).feasible
            for name, solver in routes:
                if solver is None or isinstance(solver, bool):
                    got = solver if isinstance(solver, bool) else want
                    witness_ok = True
                    ms = 0.0
                else:
                    solver = overrides.get(name, solver)
                    t0 = time.perf_counter()
                    result = solver(q)
                    ms = (time.perf_counter() - t0) * 1000
                    got = result.feasible
                    witness_ok = (not result.feasible) or verify_witness(q, result.witness)
                row = CheckRow(idx, family, unique, name, got, want, witness_ok, ms)
                summary.rows.append(row)
                if not row.match:
                    summary.mismatch_files.append(
                        _dump_mismatch(mismatch_dir, idx, family, q, name, got, want)
                    )
    if report_dir:
        write_report(summary, Path(report_dir))
    return summary


def _query_flags(q: BriberyQuery) -> str:
    flags = []
    for attr in ("priced", "weighted", "negative", "approval_flip", "unique"):
        if getattr(q, attr):
            flags.append(attr.replace("approval_flip", "flip"))
    return " ".join(flags)


def _dump_mismatch(directory: Path, idx, family, q, solver, got, want) -> str:
    directory.mkdir(parents=True, exist_ok=True)
    stem = f"mismatch-{idx:05d}-{solver}"
    (directory / f"{stem}.election").write_text(serialize_election(q.election, q.rule))
    note = [
        f"family: {family}",
        f"solver: {solver}",
        f"target: {q.election.candidates[q.target]}",
        f"budget: {q.budget}",
        f"flags: {_query_flags(q)}",
        f"solver_verdict: {str(got).lower()}",
        f"oracle_verdict: {str(want).lower()}",
    ]
    (directory / f"{stem}.note").write_text("\n".join(note) + "\n")
    return str(directory / f"{stem}.election")


def write_report(summary: CheckSummary, directory: Path) -> None:
    """Delimited per-run rows plus rendered summary figures."""
    directory.mkdir(parents=True, exist_ok=True)
    with open(directory / "results.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["instance", "family", "unique", "solver", "verdict", "oracle", "match", "ms"]
        )
        for r in summary.rows:
            writer.writerow(
                [r.instance, r.family, r.unique, r.solver, r.verdict, r.oracle_verdict, r.match, f"{r.ms:.3f}"]
            )
    lines = [
        f"rows: {len(summary.rows)}",
        f"mismatches: {len(summary.mismatches)}",
    ]
    (directory / "summary.txt").write_text("\n".join(lines) + "\n")
    _render_figures(summary, directory)


def _render_figures(summary: CheckSummary, directory: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    by_family: dict[str, list[CheckRow]] = {}
    by_solver: dict[str, list[float]] = {}
    for r in summary.rows:
        by_family.setdefault(r.family, []).append(r)
        by_solver.setdefault(r.solver, []).append(r.ms)

    families = sorted(by_family)
    matches = [sum(1 for r in by_family[f] if r.match) for f in families]
    misses = [sum(1 for r in by_family[f] if not r.match) for f in families]
    fig, ax = plt.subplots(figsize=(max(6, 0.6 * len(families)), 4))
    ax.bar(families, matches, label="agree", color="#4c72b0")
    if any(misses):
        ax.bar(families, misses, bottom=matches, label="disagree", color="#c44e52")
    ax.set_ylabel("solver runs")
    ax.set_title("oracle agreement by instance family")
    ax.legend()
    plt.setp(ax.get_xticklabels(), rotation=45, ha="right")
    fig.tight_layout()
    fig.savefig(directory / "agreement.png", dpi=120)
    plt.close(fig)

    solvers_sorted = sorted(by_solver)
    means = [sum(by_solver[s]) / len(by_solver[s]) for s in solvers_sorted]
    fig, ax = plt.subplots(figsize=(max(6, 0.6 * len(solvers_sorted)), 4))
    ax.bar(solvers_sorted, means, color="#55a868")
    ax.set_ylabel("mean wall time (ms)")
    ax.set_title("solver runtime")
    plt.setp(ax.get_xticklabels(), rotation=45, ha="right")
    fig.tight_layout()
    fig.savefig(directory / "timings.png", dpi=120)
    plt.close(fig)
