"""Bribery and manipulation problem instances, witnesses, and their application."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .elections import APPROVALS, ORDERS, Election, ElectionError, Rule, VoterBlock, winners


class QueryError(ValueError):
    """Raised for malformed queries or witnesses."""


@dataclass(frozen=True)
class BriberyQuery:
    """An election, a rule, the candidate to push, a budget, and variant flags.

    ``budget`` counts dollars when ``priced`` and bribed voters (or flipped
    entries, under ``approval_flip``) otherwise.  The unary encoding hints
    only steer solver selection; they carry no semantics.
    """

    election: Election
    rule: Rule
    target: int
    budget: int
    priced: bool = False
    weighted: bool = False
    negative: bool = False
    approval_flip: bool = False
    unique: bool = False
    prices_unary: bool = False
    weights_unary: bool = False

    def __post_init__(self):
        e = self.election
        if not 0 <= self.target < e.m:
            raise QueryError(f"target {self.target} is not a candidate id")
        if self.budget < 0:
            raise QueryError("budget must be nonnegative")
        if self.rule.ballot_kind != e.ballot_kind:
            raise QueryError(f"rule {self.rule.kind!r} needs {self.rule.ballot_kind} ballots")
        if self.negative and self.rule.kind != "plurality":
            raise QueryError("negative bribery is defined for plurality only")
        if self.approval_flip and self.rule.kind != "approval":
            raise QueryError("entry-flip bribery is defined for approval only")
        if not self.priced and any(v.price != 1 for v in e.voters):
            raise QueryError("unpriced queries require unit prices")
        if not self.weighted and any(v.weight != 1 for v in e.voters):
            raise QueryError("unweighted queries require unit weights")
        if self.approval_flip and self.priced:
            if any(v.flip_prices is None for v in e.voters):
                raise QueryError("priced entry-flip queries need per-entry flip prices")


@dataclass(frozen=True)
class Rewrite:
    """Replace the ballots of ``count`` voters from one block."""

    block: int
    count: int
    ballot: tuple


@dataclass(frozen=True)
class EntryFlip:
    """Toggle the given approval entries on ``count`` voters from one block."""

    block: int
    count: int
    entries: frozenset[int]


@dataclass(frozen=True)
class BriberyWitness:
    """An explicit set of bribes, checkable against its query."""

    rewrites: tuple[Rewrite, ...] = ()
    flips: tuple[EntryFlip, ...] = ()


@dataclass(frozen=True)
class ManipulationQuery:
    """Nonmanipulative electorate plus a coalition free to choose its ballots."""

    election: Election
    rule: Rule
    manipulator_weights: tuple[int, ...]
    target: int
    unique: bool = False

    def __post_init__(self):
        if not 0 <= self.target < self.election.m:
            raise QueryError(f"target {self.target} is not a candidate id")
        if any(w < 0 for w in self.manipulator_weights):
            raise QueryError("manipulator weights must be nonnegative")
        if self.election.ballot_kind != self.rule.ballot_kind:
            raise QueryError(f"rule {self.rule.kind!r} needs {self.rule.ballot_kind} ballots")


@dataclass(frozen=True)
class SolveResult:
    feasible: bool
    witness: BriberyWitness | None
    solver: str

    def __post_init__(self):
        if self.feasible and self.witness is None:
            raise QueryError("feasible results must carry a witness")
        if not self.feasible and self.witness is not None:
            raise QueryError("infeasible results must not carry a witness")


def _check_shape(q: BriberyQuery, w: BriberyWitness) -> None:
    e = q.election
    if q.approval_flip:
        if w.rewrites:
            raise QueryError("entry-flip queries take flip witnesses")
        moves = w.flips
    else:
        if w.flips:
            raise QueryError("rewrite queries take rewrite witnesses")
        moves = w.rewrites
    used = [0] * len(e.voters)
    for mv in moves:
        if not 0 <= mv.block < len(e.voters):
            raise QueryError(f"witness refers to missing block {mv.block}")
        if mv.count < 1:
            raise QueryError("bribe counts must be positive")
        used[mv.block] += mv.count
        if used[mv.block] > e.voters[mv.block].multiplicity:
            raise QueryError(f"block {mv.block} is bribed beyond its multiplicity")
    for mv in w.rewrites:
        block = e.voters[mv.block]
        probe = VoterBlock(mv.ballot, block.price, block.weight, 1)
        Election(e.candidates, (probe,), e.ballot_kind)  # ballot validity
    for mv in w.flips:
        if any(not 0 <= c < e.m for c in mv.entries):
            raise QueryError("flip entry out of range")


def witness_cost(q: BriberyQuery, w: BriberyWitness) -> int:
    """Total dollars (priced) or bribe/flip count (unpriced) of a witness."""
    _check_shape(q, w)
    e = q.election
    if q.approval_flip:
        total = 0
        for mv in w.flips:
            block = e.voters[mv.block]
            if q.priced:
                per_voter = sum(block.flip_prices[c] for c in mv.entries)
            else:
                per_voter = len(mv.entries)
            total += mv.count * per_voter
        return total
    if q.priced:
        return sum(mv.count * e.voters[mv.block].price for mv in w.rewrites)
    return sum(mv.count for mv in w.rewrites)


def apply_witness(q: BriberyQuery, w: BriberyWitness) -> Election:
    """The election that results from carrying out the witness's bribes."""
    _check_shape(q, w)
    e = q.election
    moves = w.flips if q.approval_flip else w.rewrites
    taken = [0] * len(e.voters)
    new_blocks = []
    for mv in moves:
        taken[mv.block] += mv.count
        block = e.voters[mv.block]
        if q.approval_flip:
            ballot = tuple(
                (not b) if c in mv.entries else b for c, b in enumerate(block.ballot)
            )
        else:
            ballot = mv.ballot
        new_blocks.append(replace(block, ballot=ballot, multiplicity=mv.count))
    kept = [
        replace(v, multiplicity=v.multiplicity - t)
        for v, t in zip(e.voters, taken)
        if v.multiplicity - t > 0
    ]
    return Election(e.candidates, tuple(kept + new_blocks), e.ballot_kind)


def wins(q: BriberyQuery, e: Election) -> bool:
    """Does the target win e (uniquely, in unique mode) under the query's rule?"""
    wset = winners(e, q.rule)
    if q.unique:
        return wset == {q.target}
    return q.target in wset
