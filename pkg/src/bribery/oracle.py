"""Exhaustive ground-truth solver and witness verifier for small instances.

The oracle enumerates every bribery within budget, cost-ascending, so the
first feasible hit is minimal.  No pruning that could risk completeness is
used; the only reductions of the search space are exact dominance quotients
per rule (see _ballot_space), without which the worked footnote-scale
instances would be unenumerable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .elections import (
    APPROVALS,
    ORDERS,
    Election,
    ElectionError,
    VoterBlock,
    dodgson_score,
    effective_alpha,
    score_table,
    winners,
    young_score,
)
from .model import (
    BriberyQuery,
    BriberyWitness,
    EntryFlip,
    ManipulationQuery,
    QueryError,
    Rewrite,
    SolveResult,
    apply_witness,
    wins,
    witness_cost,
)


class OracleCapError(ValueError):
    """Raised when an instance exceeds the oracle's enumeration caps."""


@dataclass(frozen=True)
class OracleBudget:
    """Caps keeping the exhaustive search tractable."""

    max_candidates: int = 16
    max_voters: int = 24
    max_magnitude: int = 10**9
    max_witnesses: int = 3_000_000

    def check(self, e: Election) -> None:
        if e.m > self.max_candidates:
            raise OracleCapError(f"{e.m} candidates exceed the oracle cap")
        if e.total_voters > self.max_voters:
            raise OracleCapError(f"{e.total_voters} voters exceed the oracle cap")
        for v in e.voters:
            if max(v.price, v.weight) > self.max_magnitude:
                raise OracleCapError("price/weight magnitude exceeds the oracle cap")


DEFAULT_BUDGET = OracleBudget()


def _top_rewrite(m: int, top: int) -> tuple[int, ...]:
    return (top,) + tuple(c for c in range(m) if c != top)


def _ballot_space(q: BriberyQuery, block: VoterBlock) -> list:
    """Replacement options for one voter of the block.

    Plurality cares only about ballot tops and full-rewrite approval is
    dominated by approving the target alone, so those spaces are quotiented;
    each omitted ballot is score-equivalent to (or dominated by) a listed
    one at the same cost.  Entry flips keep only helpful directions: gaining
    the target an approval or costing a rival one.
    """
    e = q.election
    m = e.m
    if q.approval_flip:
        helpful = [
            c
            for c in range(m)
            if (c == q.target and not block.ballot[c]) or (c != q.target and block.ballot[c])
        ]
        return [
            frozenset(sub)
            for size in range(1, len(helpful) + 1)
            for sub in itertools.combinations(helpful, size)
        ]
    if q.rule.kind == "approval":
        only_p = tuple(c == q.target for c in range(m))
        return [] if block.ballot == only_p else [only_p]
    if q.rule.kind == "plurality":
        tops = [c for c in range(m) if c != block.ballot[0]]
        if q.negative:
            tops = [c for c in tops if c != q.target]
        return [_top_rewrite(m, t) for t in tops]
    out = [p for p in itertools.permutations(range(m)) if p != block.ballot]
    if q.negative:
        out = [p for p in out if p[0] != q.target]
    return out


def _min_flip_cost(q: BriberyQuery, block: VoterBlock, space) -> int:
    if not space:
        return 0
    if not q.priced:
        return 1
    return min(sum(block.flip_prices[c] for c in fs) for fs in space)


def _count_vectors(blocks, unit_costs, budget):
    """Per-block bribe counts with total lower-bound cost within budget."""

    def rec(i, remaining):
        if i == len(blocks):
            yield []
            return
        mult = blocks[i].multiplicity
        cost = unit_costs[i]
        for t in range(mult + 1):
            spend = t * cost
            if spend > remaining:
                break
            for tail in rec(i + 1, remaining - spend):
                yield [t] + tail

    yield from rec(0, budget)


def _witnesses(q: BriberyQuery, cap: int):
    """All candidate witnesses within budget, as (cost, witness) pairs."""
    e = q.election
    spaces = [_ballot_space(q, b) for b in e.voters]
    if q.approval_flip:
        unit_costs = [_min_flip_cost(q, b, s) for b, s in zip(e.voters, spaces)]
    elif q.priced:
        unit_costs = [b.price for b in e.voters]
    else:
        unit_costs = [1] * len(e.voters)
    out = []
    for counts in _count_vectors(e.voters, unit_costs, q.budget):
        per_block = []
        for i, t in enumerate(counts):
            if t == 0:
                per_block.append([()])
                continue
            if not spaces[i]:
                per_block = None
                break
            per_block.append(list(itertools.combinations_with_replacement(spaces[i], t)))
        if per_block is None:
            continue
        for combo in itertools.product(*per_block):
            if q.approval_flip:
                moves = []
                for i, assigned in enumerate(combo):
                    tally = {}
                    for fs in assigned:
                        tally[fs] = tally.get(fs, 0) + 1
                    moves.extend(
                        EntryFlip(i, n, fs) for fs, n in sorted(tally.items(), key=repr)
                    )
                w = BriberyWitness(flips=tuple(moves))
            else:
                moves = []
                for i, assigned in enumerate(combo):
                    tally = {}
                    for ballot in assigned:
                        tally[ballot] = tally.get(ballot, 0) + 1
                    moves.extend(Rewrite(i, n, ballot) for ballot, n in sorted(tally.items()))
                w = BriberyWitness(rewrites=tuple(moves))
            cost = witness_cost(q, w)
            if cost <= q.budget:
                out.append((cost, w))
            if len(out) > cap:
                raise OracleCapError("witness enumeration exceeds the oracle cap")
    out.sort(key=lambda cw: cw[0])
    return out


def _score_checker(q: BriberyQuery):
    """Fast winner test from base scores plus per-bribe deltas."""
    e = q.election
    base = score_table(e, q.rule)
    m = e.m
    if q.rule.kind == "approval":

        def contribution(ballot, weight):
            return tuple(weight if ballot[c] else 0 for c in range(m))

    else:
        alpha = effective_alpha(q.rule, m)

        def contribution(ballot, weight):
            row = [0] * m
            for pos, c in enumerate(ballot):
                row[c] = alpha[pos] * weight
            return tuple(row)

    def check(w: BriberyWitness) -> bool:
        scores = [base[c] for c in range(m)]
        moves = w.flips if q.approval_flip else w.rewrites
        for mv in moves:
            block = e.voters[mv.block]
            if q.approval_flip:
                new_ballot = tuple(
                    (not b) if c in mv.entries else b for c, b in enumerate(block.ballot)
                )
            else:
                new_ballot = mv.ballot
            old = contribution(block.ballot, block.weight)
            new = contribution(new_ballot, block.weight)
            for c in range(m):
                scores[c] += (new[c] - old[c]) * mv.count
        sp = scores[q.target]
        if q.unique:
            return all(sp > s for c, s in enumerate(scores) if c != q.target)
        return sp >= max(scores)

    return check


def _full_checker(q: BriberyQuery):
    def check(w: BriberyWitness) -> bool:
        return wins(q, apply_witness(q, w))

    return check


def oracle_bribery(q: BriberyQuery, budget: OracleBudget = DEFAULT_BUDGET) -> SolveResult:
    """Exhaustive search; returns a minimum-cost witness when feasible."""
    budget.check(q.election)
    check = _score_checker(q) if q.rule.is_score_based else _full_checker(q)
    for _, w in _witnesses(q, budget.max_witnesses):
        if check(w):
            return SolveResult(True, w, "oracle")
    return SolveResult(False, None, "oracle")


def enumerate_feasible_witnesses(q: BriberyQuery, budget: OracleBudget = DEFAULT_BUDGET):
    """Yield every in-budget witness (up to quotienting) that makes the target win."""
    budget.check(q.election)
    check = _score_checker(q) if q.rule.is_score_based else _full_checker(q)
    for _, w in _witnesses(q, budget.max_witnesses):
        if check(w):
            yield w


def verify_witness(q: BriberyQuery, w: BriberyWitness) -> bool:
    """Cost within budget, restrictions met, and the target wins after applying w."""
    cost = witness_cost(q, w)  # raises QueryError on malformed witnesses
    if cost > q.budget:
        return False
    if q.negative and any(mv.ballot[0] == q.target for mv in w.rewrites):
        return False
    return wins(q, apply_witness(q, w))


def oracle_manipulation(
    q: ManipulationQuery, budget: OracleBudget = DEFAULT_BUDGET
) -> tuple[bool, tuple | None]:
    """Try every ballot assignment for the manipulating coalition."""
    e = q.election
    budget.check(e)
    if len(q.manipulator_weights) + e.total_voters > budget.max_voters:
        raise OracleCapError("coalition pushes the electorate over the oracle cap")
    if e.ballot_kind == ORDERS:
        options = list(itertools.permutations(range(e.m)))
    else:
        options = [tuple(bits) for bits in itertools.product((False, True), repeat=e.m)]
    groups = {}
    for w in q.manipulator_weights:
        groups[w] = groups.get(w, 0) + 1
    group_items = sorted(groups.items())
    assignments = [
        list(itertools.combinations_with_replacement(options, n)) for _, n in group_items
    ]
    for combo in itertools.product(*assignments):
        blocks = list(e.voters)
        ballots = []
        for (w, _), chosen in zip(group_items, combo):
            for ballot in chosen:
                blocks.append(VoterBlock(ballot, price=1, weight=w))
                ballots.append((w, ballot))
        outcome = winners(Election(e.candidates, tuple(blocks), e.ballot_kind), q.rule)
        ok = outcome == {q.target} if q.unique else q.target in outcome
        if ok:
            return True, tuple(ballots)
    return False, None


def oracle_score_bribery(
    q: BriberyQuery, score_cap: int, budget: OracleBudget = DEFAULT_BUDGET
) -> SolveResult:
    """Can bribery within budget push the target's Dodgson/Young score to <= cap?"""
    if q.rule.kind not in ("dodgson", "young"):
        raise QueryError("score-target bribery is defined for Dodgson/Young only")
    budget.check(q.election)
    scorer = dodgson_score if q.rule.kind == "dodgson" else young_score
    for _, w in _witnesses(q, budget.max_witnesses):
        bribed = apply_witness(q, w)
        s = scorer(bribed, q.target)
        if s is not None and s <= score_cap:
            return SolveResult(True, w, "oracle")
    return SolveResult(False, None, "oracle")
