"""Hardness reductions and inter-problem translations, with certificate maps.

Every generator is total: syntactically illegal inputs map to a fixed
no-instance of the target problem instead of being transformed.  Yes
certificates of the source (a partition index set, an exact cover, a
manipulation ballot assignment) map to witnesses that verify against the
generated bribery query.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .elections import (
    APPROVAL,
    APPROVALS,
    Election,
    ORDERS,
    PLURALITY,
    VoterBlock,
    effective_alpha,
    scoring,
)
from .model import (
    BriberyQuery,
    BriberyWitness,
    EntryFlip,
    ManipulationQuery,
    QueryError,
    Rewrite,
)


@dataclass(frozen=True)
class PartitionInstance:
    """A sequence of nonnegative integers to split into two equal-sum halves."""

    values: tuple[int, ...]

    def __post_init__(self):
        if any(v < 0 for v in self.values):
            raise QueryError("partition values must be nonnegative")

    @property
    def total(self) -> int:
        return sum(self.values)

    @property
    def is_legal(self) -> bool:
        return self.total % 2 == 0

    @property
    def half(self) -> int:
        return self.total // 2

    def satisfies_size_floor(self) -> bool:
        """Every value is at least total/(2+n), the restricted variant's bound."""
        n = len(self.values)
        return all(v * (2 + n) >= self.total for v in self.values)


@dataclass(frozen=True)
class X3CInstance:
    """Ground set {0..3t-1} plus a family of 3-element subsets."""

    ground_size: int
    sets: tuple[frozenset[int], ...]

    @property
    def t(self) -> int:
        return self.ground_size // 3

    @property
    def is_legal(self) -> bool:
        if self.ground_size <= 0 or self.ground_size % 3 != 0:
            return False
        for s in self.sets:
            if len(s) != 3 or any(not 0 <= b < self.ground_size for b in s):
                return False
        return len(self.sets) >= self.t


def has_partition(inst: PartitionInstance) -> bool:
    """Brute-force membership test for the partition problem."""
    if not inst.is_legal:
        return False
    sums = {0}
    for v in inst.values:
        sums |= {s + v for s in sums}
    return inst.half in sums


def has_partition_prime(inst: PartitionInstance) -> bool:
    return inst.is_legal and inst.satisfies_size_floor() and has_partition(inst)


def has_exact_cover(inst: X3CInstance) -> bool:
    """Brute-force membership test for exact cover by 3-sets."""
    if not inst.is_legal:
        return False
    ground = frozenset(range(inst.ground_size))
    for picked in itertools.combinations(range(len(inst.sets)), inst.t):
        union = set()
        size = 0
        for i in picked:
            union |= inst.sets[i]
            size += 3
        if size == len(union) and union == ground:
            return True
    return False


NO_INSTANCE_PARTITION_PRIME = PartitionInstance((2, 2, 2))


def partition_prime_transform(inst: PartitionInstance) -> PartitionInstance:
    """Pad a partition instance so every split uses equally many elements and
    every value clears the size floor, preserving yes/no membership.

    Interleaves pair values 3**(i-1) + 3**n * s_i and 3**(i-1), then adds the
    common half-sum to each, doubling the element count.
    """
    if not inst.is_legal:
        return NO_INSTANCE_PARTITION_PRIME
    n = len(inst.values)
    if n == 0:
        return NO_INSTANCE_PARTITION_PRIME
    half = inst.half
    pow3 = 3**n
    shifted = half * pow3 + (pow3 - 1) // 2
    out = []
    for i, s in enumerate(inst.values, start=1):
        out.append(3 ** (i - 1) + pow3 * s + shifted)
        out.append(3 ** (i - 1) + shifted)
    return PartitionInstance(tuple(out))


def fixed_no_instance(
    *,
    priced: bool = False,
    weighted: bool = False,
    negative: bool = False,
    approval_flip: bool = False,
    unique: bool = False,
) -> BriberyQuery:
    """Two candidates, one unbribable voter for the rival, zero budget."""
    if approval_flip:
        voter = VoterBlock((False, True), flip_prices=(1, 1))
        e = Election(("p", "c"), (voter,), APPROVALS)
        rule = APPROVAL
    else:
        e = Election(("p", "c"), (VoterBlock((1, 0)),), ORDERS)
        rule = PLURALITY
    return BriberyQuery(
        e,
        rule,
        0,
        0,
        priced=priced,
        weighted=weighted,
        negative=negative,
        approval_flip=approval_flip,
        unique=unique,
    )


def partition_to_weighted_dollar_plurality(
    inst: PartitionInstance, unique: bool = False
) -> BriberyQuery:
    """Two candidates; each value becomes a rival voter with that weight and
    price; budget is the half-sum.  The unique variant adds one free
    weight-1 supporter of the target."""
    if not inst.is_legal:
        return fixed_no_instance(priced=True, weighted=True, unique=unique)
    voters = [VoterBlock((1, 0), price=s, weight=s) for s in inst.values]
    if unique:
        voters.append(VoterBlock((0, 1), price=0, weight=1))
    e = Election(("p", "c"), tuple(voters), ORDERS)
    return BriberyQuery(e, PLURALITY, 0, inst.half, priced=True, weighted=True, unique=unique)


def partition_witness_weighted_dollar(inst: PartitionInstance, picked) -> BriberyWitness:
    return BriberyWitness(rewrites=tuple(Rewrite(i, 1, (0, 1)) for i in sorted(picked)))


def partition_to_negative_weighted(inst: PartitionInstance) -> BriberyQuery:
    """Three candidates; the target holds half the weight, the rival all of
    it; success requires shifting exactly half the rival's weight sideways."""
    if not inst.is_legal:
        return fixed_no_instance(weighted=True, negative=True)
    voters = [VoterBlock((0, 1, 2), weight=inst.half)]
    voters += [VoterBlock((1, 2, 0), weight=s) for s in inst.values]
    e = Election(("p", "c1", "c2"), tuple(voters), ORDERS)
    return BriberyQuery(
        e, PLURALITY, 0, len(inst.values) + 1, weighted=True, negative=True
    )


def partition_witness_negative(inst: PartitionInstance, picked) -> BriberyWitness:
    return BriberyWitness(rewrites=tuple(Rewrite(i + 1, 1, (2, 0, 1)) for i in sorted(picked)))


def x3c_to_approval(inst: X3CInstance) -> BriberyQuery:
    """Set voters approve their triples; fillers push every ground candidate
    exactly one approval above the target's reachable score."""
    if not inst.is_legal:
        return fixed_no_instance()
    g, m, t = inst.ground_size, len(inst.sets), inst.t
    names = tuple(f"b{i}" for i in range(g)) + ("p",)
    p = g
    voters = [
        VoterBlock(tuple(c in s for c in range(g + 1))) for s in inst.sets
    ]
    for b in range(g):
        ell = sum(1 for s in inst.sets if b in s)
        voters.append(
            VoterBlock(tuple(c == b for c in range(g + 1)), multiplicity=m - ell + 1)
        )
    if m - t > 0:
        voters.append(VoterBlock(tuple(c == p for c in range(g + 1)), multiplicity=m - t))
    e = Election(names, tuple(voters), APPROVALS)
    return BriberyQuery(e, APPROVAL, p, t)


def x3c_witness(inst: X3CInstance, cover) -> BriberyWitness:
    only_p = tuple(c == inst.ground_size for c in range(inst.ground_size + 1))
    return BriberyWitness(rewrites=tuple(Rewrite(i, 1, only_p) for i in sorted(cover)))


def partition_to_approval_flip_weighted(inst: PartitionInstance) -> BriberyQuery:
    """Two candidates; gaining the target a value's approval costs exactly
    that value, everything else is priced out of reach."""
    if not inst.is_legal:
        return fixed_no_instance(priced=True, weighted=True, approval_flip=True)
    blocker = 2 * inst.total + 1
    voters = [VoterBlock((True, False), weight=inst.half, flip_prices=(blocker, blocker))]
    voters += [
        VoterBlock((False, True), weight=s, flip_prices=(s, blocker)) for s in inst.values
    ]
    e = Election(("p", "c"), tuple(voters), APPROVALS)
    return BriberyQuery(
        e, APPROVAL, 0, inst.half, priced=True, weighted=True, approval_flip=True
    )


def partition_witness_approval_flip(inst: PartitionInstance, picked) -> BriberyWitness:
    return BriberyWitness(
        flips=tuple(EntryFlip(i + 1, 1, frozenset({0})) for i in sorted(picked))
    )


def _fixed_ballot_p_last(m: int, p: int) -> tuple[int, ...]:
    return tuple(c for c in range(m) if c != p) + (p,)


def manipulation_to_dollar_bribery(mq: ManipulationQuery) -> BriberyQuery:
    """Zero budget, free manipulators, everyone else priced: the bribable set
    is exactly the coalition, so the problems coincide."""
    if mq.election.ballot_kind != ORDERS:
        raise QueryError("the embedding takes preference-order manipulation queries")
    e = mq.election
    voters = [VoterBlock(v.ballot, 1, v.weight, v.multiplicity) for v in e.voters]
    fixed = _fixed_ballot_p_last(e.m, mq.target)
    voters += [VoterBlock(fixed, 0, w) for w in mq.manipulator_weights]
    weighted = any(v.weight != 1 for v in voters)
    bribed = Election(e.candidates, tuple(voters), ORDERS)
    return BriberyQuery(
        bribed, mq.rule, mq.target, 0, priced=True, weighted=weighted, unique=mq.unique
    )


def manipulation_witness(mq: ManipulationQuery, ballots) -> BriberyWitness:
    """Map a manipulation certificate ((weight, ballot) pairs) onto rewrites of
    the embedded query's free voters."""
    base = len(mq.election.voters)
    remaining = list(ballots)
    rewrites = []
    for j, w in enumerate(mq.manipulator_weights):
        hit = next(i for i, (bw, _) in enumerate(remaining) if bw == w)
        _, ballot = remaining.pop(hit)
        if ballot != _fixed_ballot_p_last(mq.election.m, mq.target):
            rewrites.append(Rewrite(base + j, 1, ballot))
    return BriberyWitness(rewrites=tuple(rewrites))


def bribery_to_manipulation_dtt(q: BriberyQuery, kcap: int = 4) -> list[ManipulationQuery]:
    """One manipulation query per at-most-k-voter sub-multiset; the bribery is
    feasible iff at least one output query is."""
    if q.priced:
        raise QueryError("the subset translation takes unpriced queries only")
    if q.negative or q.approval_flip:
        raise QueryError("restricted bribe shapes have no manipulation analogue here")
    if q.budget > kcap:
        raise QueryError(f"budget {q.budget} exceeds the constant cap {kcap}")
    e = q.election
    k = min(q.budget, e.total_voters)
    out = []
    mults = [v.multiplicity for v in e.voters]

    def rec(i, left, taken):
        if i == len(mults):
            yield tuple(taken)
            return
        for take in range(min(mults[i], left) + 1):
            taken.append(take)
            yield from rec(i + 1, left - take, taken)
            taken.pop()

    for removal in rec(0, k, []):
        kept = []
        weights = []
        for v, take in zip(e.voters, removal):
            if v.multiplicity - take > 0:
                kept.append(VoterBlock(v.ballot, v.price, v.weight, v.multiplicity - take))
            weights.extend([v.weight] * take)
        out.append(
            ManipulationQuery(
                Election(e.candidates, tuple(kept), e.ballot_kind),
                q.rule,
                tuple(weights),
                q.target,
                q.unique,
            )
        )
    return out


def manipulation_prime_to_bribery(mq: ManipulationQuery) -> BriberyQuery:
    """Weighted manipulation with a dominant coalition becomes plain weighted
    bribery: the coalition joins the electorate on a throwaway ballot and the
    bribe limit equals its size.

    The weight restriction (every manipulator at least twice the heaviest
    regular voter) makes bribing outside the coalition pointless; violating
    inputs map to the fixed no-instance.
    """
    if mq.election.ballot_kind != ORDERS or not mq.rule.is_score_based:
        raise QueryError("the coalition reduction takes scoring-rule manipulation queries")
    e = mq.election
    heaviest = max((v.weight for v in e.voters), default=0)
    if any(w < 2 * heaviest for w in mq.manipulator_weights):
        return fixed_no_instance(weighted=True, unique=mq.unique)
    alpha = effective_alpha(mq.rule, e.m)
    alpha = tuple(a - alpha[-1] for a in alpha)
    fixed = _fixed_ballot_p_last(e.m, mq.target)
    voters = [VoterBlock(v.ballot, 1, v.weight, v.multiplicity) for v in e.voters]
    voters += [VoterBlock(fixed, 1, w) for w in mq.manipulator_weights]
    bribed = Election(e.candidates, tuple(voters), ORDERS)
    return BriberyQuery(
        bribed,
        scoring(alpha),
        mq.target,
        len(mq.manipulator_weights),
        weighted=True,
        unique=mq.unique,
    )
