"""Core election data model and winner computation.

Candidates are dense integer ids 0..m-1; display names exist only in the
file-format layer.  All arithmetic uses Python's arbitrary-precision
integers because reduction-generated weights grow like 3**n.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

ORDERS = "orders"
APPROVALS = "approvals"

SCORE_RULE_KINDS = ("plurality", "approval", "veto", "kapproval", "scoring")
CONDORCET_RULE_KINDS = ("dodgson", "young", "kemeny")
RULE_KINDS = SCORE_RULE_KINDS + CONDORCET_RULE_KINDS

# Engine limits for the breadth-first Dodgson search; larger instances must
# go through the integer-model route in bribery.ilp.
DODGSON_BFS_MAX_BALLOTS = 8
DODGSON_BFS_MAX_CANDIDATES = 4


class ElectionError(ValueError):
    """Raised for structurally invalid elections, rules, or arguments."""


@dataclass(frozen=True)
class Rule:
    """An election rule identifier plus its parameters.

    ``alpha`` is set for ``scoring``, ``k`` for ``kapproval``; both are
    None otherwise.
    """

    kind: str
    alpha: tuple[int, ...] | None = None
    k: int | None = None

    def __post_init__(self):
        if self.kind not in RULE_KINDS:
            raise ElectionError(f"unknown rule kind {self.kind!r}")
        if self.kind == "scoring":
            if not self.alpha:
                raise ElectionError("scoring rule needs a score vector")
            validate_scoring_vector(self.alpha)
        elif self.alpha is not None:
            raise ElectionError(f"rule {self.kind!r} takes no score vector")
        if self.kind == "kapproval":
            if self.k is None or self.k < 0:
                raise ElectionError("kapproval needs a nonnegative k")
        elif self.k is not None:
            raise ElectionError(f"rule {self.kind!r} takes no k")

    @property
    def is_score_based(self) -> bool:
        return self.kind in SCORE_RULE_KINDS

    @property
    def ballot_kind(self) -> str:
        return APPROVALS if self.kind == "approval" else ORDERS


PLURALITY = Rule("plurality")
APPROVAL = Rule("approval")
VETO = Rule("veto")
DODGSON = Rule("dodgson")
YOUNG = Rule("young")
KEMENY = Rule("kemeny")


def scoring(alpha) -> Rule:
    return Rule("scoring", alpha=tuple(alpha))


def kapproval(k: int) -> Rule:
    return Rule("kapproval", k=k)


def validate_scoring_vector(alpha) -> None:
    if any(a < 0 for a in alpha):
        raise ElectionError("score vector entries must be nonnegative")
    if any(alpha[i] < alpha[i + 1] for i in range(len(alpha) - 1)):
        raise ElectionError("score vector must be nonincreasing")


def effective_alpha(rule: Rule, m: int) -> tuple[int, ...]:
    """Expand a score-based rule over orders into its length-m score vector."""
    if rule.kind == "plurality":
        return (1,) + (0,) * (m - 1)
    if rule.kind == "veto":
        return (1,) * (m - 1) + (0,)
    if rule.kind == "kapproval":
        if rule.k > m:
            raise ElectionError(f"kapproval k={rule.k} exceeds {m} candidates")
        return (1,) * rule.k + (0,) * (m - rule.k)
    if rule.kind == "scoring":
        if len(rule.alpha) != m:
            raise ElectionError(
                f"score vector has length {len(rule.alpha)}, election has {m} candidates"
            )
        return rule.alpha
    raise ElectionError(f"rule {rule.kind!r} has no score vector")


@dataclass(frozen=True)
class VoterBlock:
    """One ballot with its price, weight, and multiplicity.

    ``ballot`` is a candidate-id permutation (orders) or a tuple of booleans
    (approvals).  ``flip_prices`` gives the per-entry cost of toggling an
    approval bit; it is only meaningful for priced entry-flip queries.
    Dropped prices and weights default to 1 so that priced and unpriced
    variants can be handled uniformly.
    """

    ballot: tuple
    price: int = 1
    weight: int = 1
    multiplicity: int = 1
    flip_prices: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.price < 0 or self.weight < 0:
            raise ElectionError("prices and weights must be nonnegative")
        if self.multiplicity < 1:
            raise ElectionError("multiplicity must be positive")
        if self.flip_prices is not None and any(c < 0 for c in self.flip_prices):
            raise ElectionError("flip prices must be nonnegative")


@dataclass(frozen=True)
class Election:
    """A candidate list plus voter blocks sharing one ballot kind."""

    candidates: tuple[str, ...]
    voters: tuple[VoterBlock, ...] = ()
    ballot_kind: str = ORDERS

    def __post_init__(self):
        if not self.candidates:
            raise ElectionError("election needs at least one candidate")
        if len(set(self.candidates)) != len(self.candidates):
            raise ElectionError("duplicate candidate names")
        if self.ballot_kind not in (ORDERS, APPROVALS):
            raise ElectionError(f"unknown ballot kind {self.ballot_kind!r}")
        m = len(self.candidates)
        for v in self.voters:
            if len(v.ballot) != m:
                raise ElectionError(f"ballot {v.ballot!r} has wrong length for m={m}")
            if self.ballot_kind == ORDERS:
                if sorted(v.ballot) != list(range(m)):
                    raise ElectionError(f"ballot {v.ballot!r} is not a permutation")
            else:
                if not all(isinstance(b, bool) for b in v.ballot):
                    raise ElectionError("approval ballots must be boolean tuples")
            if v.flip_prices is not None and len(v.flip_prices) != m:
                raise ElectionError("flip price vector has wrong length")

    @property
    def m(self) -> int:
        return len(self.candidates)

    @property
    def total_voters(self) -> int:
        return sum(v.multiplicity for v in self.voters)

    @property
    def total_weight(self) -> int:
        return sum(v.weight * v.multiplicity for v in self.voters)

    def units(self) -> list[VoterBlock]:
        """Expand multiplicity blocks into unit voters."""
        out = []
        for v in self.voters:
            unit = VoterBlock(v.ballot, v.price, v.weight, 1, v.flip_prices)
            out.extend([unit] * v.multiplicity)
        return out


def score_table(e: Election, rule: Rule) -> dict[int, int]:
    """Weighted scores (with multiplicities) under a score-based rule."""
    if not rule.is_score_based:
        raise ElectionError(f"rule {rule.kind!r} is not score-based")
    if rule.ballot_kind != e.ballot_kind:
        raise ElectionError(f"rule {rule.kind!r} needs {rule.ballot_kind} ballots")
    scores = {c: 0 for c in range(e.m)}
    if rule.kind == "approval":
        for v in e.voters:
            wm = v.weight * v.multiplicity
            for c, approved in enumerate(v.ballot):
                if approved:
                    scores[c] += wm
        return scores
    alpha = effective_alpha(rule, e.m)
    for v in e.voters:
        wm = v.weight * v.multiplicity
        for pos, c in enumerate(v.ballot):
            scores[c] += alpha[pos] * wm
    return scores


def score_winners(scores: dict[int, int]) -> set[int]:
    top = max(scores.values())
    return {c for c, s in scores.items() if s == top}


def pairwise_weight(e: Election, a: int, b: int) -> tuple[int, int]:
    """Total vote weight preferring a over b and b over a."""
    wa = wb = 0
    for v in e.voters:
        wm = v.weight * v.multiplicity
        if v.ballot.index(a) < v.ballot.index(b):
            wa += wm
        else:
            wb += wm
    return wa, wb


def beats(e: Election, a: int, b: int) -> bool:
    """Strict weighted pairwise majority of a over b; ties never count."""
    wa, wb = pairwise_weight(e, a, b)
    return wa > wb


def condorcet_winner(e: Election) -> int | None:
    """The unique candidate strictly beating every other, if any."""
    if e.ballot_kind != ORDERS:
        raise ElectionError("Condorcet winners need preference-order ballots")
    if e.m == 1:
        return 0
    for c in range(e.m):
        if all(beats(e, c, q) for q in range(e.m) if q != c):
            return c
    return None


def _is_condorcet(units: list[tuple[tuple, int]], c: int, m: int) -> bool:
    # units: (order, weight) pairs
    if m == 1:
        return True
    for q in range(m):
        if q == c:
            continue
        margin = 0
        for order, w in units:
            if order.index(c) < order.index(q):
                margin += w
            else:
                margin -= w
        if margin <= 0:
            return False
    return True


def dodgson_score(e: Election, c: int) -> int | None:
    """Minimum number of adjacent switches making c a Condorcet winner.

    Breadth-first search over swap-distance layers; this is the independent
    oracle that the integer models are checked against.  Returns None when
    no swap sequence can help, which happens exactly when the electorate
    carries no positive vote weight (and m >= 2).
    """
    if e.ballot_kind != ORDERS:
        raise ElectionError("Dodgson scores need preference-order ballots")
    if not 0 <= c < e.m:
        raise ElectionError(f"no candidate {c}")
    if e.m == 1:
        return 0
    units = [(v.ballot, v.weight) for v in e.voters for _ in range(v.multiplicity)]
    if sum(w for _, w in units) == 0:
        return None
    if len(units) > DODGSON_BFS_MAX_BALLOTS or e.m > DODGSON_BFS_MAX_CANDIDATES:
        raise ElectionError(
            "instance too large for the swap search; use the integer model"
        )
    start = tuple(sorted(units))
    if _is_condorcet(list(start), c, e.m):
        return 0
    seen = {start}
    frontier = [start]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for state in frontier:
            ballots = list(state)
            for i, (order, w) in enumerate(ballots):
                for pos in range(e.m - 1):
                    swapped = list(order)
                    swapped[pos], swapped[pos + 1] = swapped[pos + 1], swapped[pos]
                    cand = ballots[:i] + [(tuple(swapped), w)] + ballots[i + 1 :]
                    key = tuple(sorted(cand))
                    if key in seen:
                        continue
                    if _is_condorcet(cand, c, e.m):
                        return depth
                    seen.add(key)
                    nxt.append(key)
        frontier = nxt
    return None


def _removal_choices(type_counts: list[tuple[tuple, int, int]], r: int):
    # yield per-type removal counts summing to r
    if not type_counts:
        if r == 0:
            yield []
        return
    (_, _, avail), rest = type_counts[0], type_counts[1:]
    for take in range(min(avail, r) + 1):
        for tail in _removal_choices(rest, r - take):
            yield [take] + tail


def young_score(e: Election, c: int) -> int | None:
    """Minimum number of removed voters (with multiplicity) making c Condorcet.

    Brute force over removal multisets in increasing size.  A zero-voter
    election has no strict pairwise victories, so for m >= 2 removal of
    everyone never succeeds and the result may be None.
    """
    if e.ballot_kind != ORDERS:
        raise ElectionError("Young scores need preference-order ballots")
    if not 0 <= c < e.m:
        raise ElectionError(f"no candidate {c}")
    if e.m == 1:
        return 0
    counts = Counter((v.ballot, v.weight) for v in e.voters for _ in range(v.multiplicity))
    types = [(ballot, w, n) for (ballot, w), n in sorted(counts.items())]
    total = sum(n for _, _, n in types)
    for r in range(total + 1):
        for removal in _removal_choices(types, r):
            remaining = [
                (ballot, w)
                for (ballot, w, n), take in zip(types, removal)
                for _ in range(n - take)
            ]
            if _is_condorcet(remaining, c, e.m):
                return r
    return None


def agree(o1: tuple[int, ...], o2: tuple[int, ...]) -> int:
    """Number of unordered candidate pairs ranked identically by both orders."""
    if len(o1) != len(o2):
        raise ElectionError("orders have different lengths")
    pos1 = {c: i for i, c in enumerate(o1)}
    pos2 = {c: i for i, c in enumerate(o2)}
    m = len(o1)
    return sum(
        1
        for a, b in itertools.combinations(range(m), 2)
        if (pos1[a] < pos1[b]) == (pos2[a] < pos2[b])
    )


def switches(o1: tuple[int, ...], o2: tuple[int, ...]) -> int:
    """Minimum adjacent-swap distance between two orders (Kendall distance)."""
    m = len(o1)
    return m * (m - 1) // 2 - agree(o1, o2)


def kemeny_winners(e: Election) -> set[int]:
    """Top candidates over all consensus orders maximizing weighted agreement."""
    if e.ballot_kind != ORDERS:
        raise ElectionError("Kemeny winners need preference-order ballots")
    units = [(v.ballot, v.weight * v.multiplicity) for v in e.voters]
    best = None
    tops: set[int] = set()
    for order in itertools.permutations(range(e.m)):
        total = sum(w * agree(order, ballot) for ballot, w in units)
        if best is None or total > best:
            best = total
            tops = {order[0]}
        elif total == best:
            tops.add(order[0])
    return tops


def winners(e: Election, rule: Rule) -> set[int]:
    """Winner set of the election under the given rule."""
    if rule.ballot_kind != e.ballot_kind:
        raise ElectionError(f"rule {rule.kind!r} needs {rule.ballot_kind} ballots")
    if rule.is_score_based:
        return score_winners(score_table(e, rule))
    if rule.kind == "kemeny":
        return kemeny_winners(e)
    scorer = dodgson_score if rule.kind == "dodgson" else young_score
    scores = {c: scorer(e, c) for c in range(e.m)}
    finite = {c: s for c, s in scores.items() if s is not None}
    if not finite:
        return set()
    best = min(finite.values())
    return {c for c, s in finite.items() if s == best}
