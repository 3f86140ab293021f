"""Bounded integer feasibility and the fixed-candidate bribery models.

The engine is a depth-first search over bounded integer variables with
interval propagation after every assignment: exact and complete within the
bounds, which the model builders derive from voter counts and budgets.  The
four model families cover count-based bribery under a scoring vector,
bribery to a Dodgson or Young score target, and Kemeny bribery (one model
per consensus order topped by the target).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field, replace

from .elections import (
    Election,
    ElectionError,
    ORDERS,
    VoterBlock,
    agree,
    effective_alpha,
    switches,
    validate_scoring_vector,
)
from .model import BriberyQuery, BriberyWitness, QueryError, Rewrite, SolveResult

LE, EQ, GE = "<=", "==", ">="

M_MODEL_CAP = 3


@dataclass
class IlpModel:
    """Integer variables with inclusive bounds and linear constraints.

    Strict inequalities are the caller's job: encode ``lhs > rhs`` as
    ``lhs >= rhs + 1``, which is exact because all terms are integers.
    """

    variables: list = field(default_factory=list)  # (name, lo, hi)
    constraints: list = field(default_factory=list)  # (coeffs dict, rel, rhs)

    def add_var(self, name: str, lo: int, hi: int) -> int:
        if lo is None or hi is None:
            raise ElectionError(f"variable {name} must be bounded on both sides")
        self.variables.append((name, lo, hi))
        return len(self.variables) - 1

    def add(self, coeffs: dict[int, int], rel: str, rhs: int) -> None:
        if rel not in (LE, EQ, GE):
            raise ElectionError(f"unknown relation {rel!r}")
        self.constraints.append(({v: c for v, c in coeffs.items() if c}, rel, rhs))


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _propagate(items_list, los, his) -> bool:
    changed = True
    while changed:
        changed = False
        for items, rel, rhs in items_list:
            mn = mx = 0
            for v, cf in items:
                if cf > 0:
                    mn += cf * los[v]
                    mx += cf * his[v]
                else:
                    mn += cf * his[v]
                    mx += cf * los[v]
            if rel in (LE, EQ) and mn > rhs:
                return False
            if rel in (GE, EQ) and mx < rhs:
                return False
            for v, cf in items:
                if cf > 0:
                    vmin, vmax = cf * los[v], cf * his[v]
                else:
                    vmin, vmax = cf * his[v], cf * los[v]
                if rel in (LE, EQ):
                    lim = rhs - (mn - vmin)  # cf*x <= lim
                    if cf > 0:
                        nb = lim // cf
                        if nb < his[v]:
                            his[v] = nb
                            changed = True
                    else:
                        nb = _ceil_div(-lim, -cf)
                        if nb > los[v]:
                            los[v] = nb
                            changed = True
                if rel in (GE, EQ):
                    lim = rhs - (mx - vmax)  # cf*x >= lim
                    if cf > 0:
                        nb = _ceil_div(lim, cf)
                        if nb > los[v]:
                            los[v] = nb
                            changed = True
                    else:
                        nb = (-lim) // (-cf)
                        if nb < his[v]:
                            his[v] = nb
                            changed = True
                if los[v] > his[v]:
                    return False
    return True


def ilp_feasible(model: IlpModel) -> dict[int, int] | None:
    """An integer point satisfying every constraint, or None if none exists."""
    los = [lo for _, lo, _ in model.variables]
    his = [hi for _, _, hi in model.variables]
    if any(lo > hi for lo, hi in zip(los, his)):
        return None
    items_list = [(tuple(coeffs.items()), rel, rhs) for coeffs, rel, rhs in model.constraints]

    def search(los, his):
        if not _propagate(items_list, los, his):
            return None
        open_vars = [(his[v] - los[v], v) for v in range(len(los)) if his[v] > los[v]]
        if not open_vars:
            return dict(enumerate(los))
        _, pick = min(open_vars)
        for val in range(los[pick], his[pick] + 1):
            nlo, nhi = los[:], his[:]
            nlo[pick] = nhi[pick] = val
            found = search(nlo, nhi)
            if found is not None:
                return found
        return None

    return search(los, his)


class OrderTables:
    """All m! preference orders with position, pairwise, agreement, and
    adjacent-swap-distance tables."""

    def __init__(self, m: int):
        self.m = m
        self.orders = tuple(itertools.permutations(range(m)))
        self.index = {o: i for i, o in enumerate(self.orders)}
        self.wh = [
            {c: o.index(c) for c in range(m)} for o in self.orders
        ]
        self.agree = [
            [agree(a, b) for b in self.orders] for a in self.orders
        ]
        self.switches = [
            [switches(a, b) for b in self.orders] for a in self.orders
        ]

    def who(self, r: int, q: int, i: int) -> int:
        """+1 if r strictly defeats q in order i, else -1."""
        return 1 if self.wh[i][r] < self.wh[i][q] else -1


@functools.lru_cache(maxsize=8)
def order_tables(m: int) -> OrderTables:
    return OrderTables(m)


def _succinct_groups(e: Election, tables: OrderTables) -> tuple[list[int], list[list[int]]]:
    """Per-order voter counts (with multiplicity) and the block ids behind them."""
    counts = [0] * len(tables.orders)
    blocks: list[list[int]] = [[] for _ in tables.orders]
    for bi, v in enumerate(e.voters):
        i = tables.index[v.ballot]
        counts[i] += v.multiplicity
        blocks[i].append(bi)
    return counts, blocks


def _check_model_query(q: BriberyQuery, m_cap: int) -> OrderTables:
    e = q.election
    if e.ballot_kind != ORDERS:
        raise QueryError("the integer models take preference-order ballots")
    if e.m > m_cap:
        raise ElectionError(f"{e.m} candidates exceed the model cap {m_cap}")
    if q.priced or q.weighted:
        raise QueryError("the integer models take count-based, unweighted queries")
    return order_tables(e.m)


def build_scoring_bribery_model(
    q: BriberyQuery, alpha=None, m_cap: int = M_MODEL_CAP
) -> IlpModel:
    """Switch-count variables s[i][j]: voters moving from order i to order j."""
    tables = _check_model_query(q, m_cap)
    if alpha is None:
        alpha = effective_alpha(q.rule, q.election.m)
    validate_scoring_vector(alpha)
    counts, _ = _succinct_groups(q.election, tables)
    nord = len(tables.orders)
    model = IlpModel()
    s = [[model.add_var(f"s[{i}][{j}]", 0, counts[i]) for j in range(nord)] for i in range(nord)]
    for i in range(nord):
        model.add({s[i][j]: 1 for j in range(nord)}, EQ, counts[i])
    model.add({s[i][j]: 1 for i in range(nord) for j in range(nord) if i != j}, LE, q.budget)
    for rival in range(q.election.m):
        if rival == q.target:
            continue
        coeffs: dict[int, int] = {}
        for j in range(nord):
            gap = alpha[tables.wh[j][q.target]] - alpha[tables.wh[j][rival]]
            if gap:
                for i in range(nord):
                    coeffs[s[i][j]] = coeffs.get(s[i][j], 0) + gap
        model.add(coeffs, GE, 1 if q.unique else 0)
    return model


def _decode_moves(q: BriberyQuery, tables: OrderTables, moved) -> BriberyWitness:
    """Turn per-(i,j) move counts into block-level rewrites, low blocks first."""
    e = q.election
    _, blocks = _succinct_groups(e, tables)
    remaining = {bi: e.voters[bi].multiplicity for bi in range(len(e.voters))}
    rewrites = []
    for (i, j), cnt in sorted(moved.items()):
        for bi in blocks[i]:
            if cnt == 0:
                break
            take = min(cnt, remaining[bi])
            if take:
                rewrites.append(Rewrite(bi, take, tables.orders[j]))
                remaining[bi] -= take
                cnt -= take
        if cnt:
            raise QueryError("assignment moves more voters than exist")
    return BriberyWitness(rewrites=tuple(rewrites))


def decode_scoring_assignment(q: BriberyQuery, assignment: dict[int, int]) -> BriberyWitness:
    tables = order_tables(q.election.m)
    nord = len(tables.orders)
    moved = {}
    for i in range(nord):
        for j in range(nord):
            val = assignment[i * nord + j]
            if i != j and val:
                moved[(i, j)] = val
    return _decode_moves(q, tables, moved)


def solve_scoring_ilp(q: BriberyQuery, alpha=None, m_cap: int = M_MODEL_CAP) -> SolveResult:
    model = build_scoring_bribery_model(q, alpha, m_cap)
    assignment = ilp_feasible(model)
    if assignment is None:
        return SolveResult(False, None, "ilp-scoring")
    return SolveResult(True, decode_scoring_assignment(q, assignment), "ilp-scoring")


def build_dodgson_score_bribery_model(
    q: BriberyQuery, t: int, m_cap: int = M_MODEL_CAP
) -> IlpModel:
    """Bribery variables b[i][j] feeding a swap phase s[i][j] of total
    adjacent-switch cost at most t, after which the target is Condorcet."""
    tables = _check_model_query(q, m_cap)
    counts, _ = _succinct_groups(q.election, tables)
    nord = len(tables.orders)
    n = q.election.total_voters
    model = IlpModel()
    b = [[model.add_var(f"b[{i}][{j}]", 0, counts[i]) for j in range(nord)] for i in range(nord)]
    s = [[model.add_var(f"s[{i}][{j}]", 0, n) for j in range(nord)] for i in range(nord)]
    for i in range(nord):
        model.add({b[i][j]: 1 for j in range(nord)}, EQ, counts[i])
    model.add({b[i][j]: 1 for i in range(nord) for j in range(nord) if i != j}, LE, q.budget)
    for i in range(nord):
        coeffs = {b[j][i]: 1 for j in range(nord)}
        for k in range(nord):
            coeffs[s[i][k]] = coeffs.get(s[i][k], 0) - 1
        model.add(coeffs, EQ, 0)
    for rival in range(q.election.m):
        if rival == q.target:
            continue
        model.add(
            {
                s[i][j]: tables.who(q.target, rival, j)
                for i in range(nord)
                for j in range(nord)
            },
            GE,
            1,
        )
    model.add(
        {
            s[i][j]: tables.switches[i][j]
            for i in range(nord)
            for j in range(nord)
            if tables.switches[i][j]
        },
        LE,
        t,
    )
    return model


def build_young_score_bribery_model(
    q: BriberyQuery, t: int, m_cap: int = M_MODEL_CAP
) -> IlpModel:
    """Bribery variables b[i][j] plus removals r[i] of at most t voters,
    after which the target is Condorcet."""
    tables = _check_model_query(q, m_cap)
    counts, _ = _succinct_groups(q.election, tables)
    nord = len(tables.orders)
    n = q.election.total_voters
    model = IlpModel()
    b = [[model.add_var(f"b[{i}][{j}]", 0, counts[i]) for j in range(nord)] for i in range(nord)]
    r = [model.add_var(f"r[{i}]", 0, n) for i in range(nord)]
    for i in range(nord):
        model.add({b[i][j]: 1 for j in range(nord)}, EQ, counts[i])
    model.add({b[i][j]: 1 for i in range(nord) for j in range(nord) if i != j}, LE, q.budget)
    for j in range(nord):
        coeffs = {b[i][j]: -1 for i in range(nord)}
        coeffs[r[j]] = 1
        model.add(coeffs, LE, 0)
    for rival in range(q.election.m):
        if rival == q.target:
            continue
        coeffs = {}
        for j in range(nord):
            w = tables.who(q.target, rival, j)
            for i in range(nord):
                coeffs[b[i][j]] = coeffs.get(b[i][j], 0) + w
            coeffs[r[j]] = coeffs.get(r[j], 0) - w
        model.add(coeffs, GE, 1)
    model.add({r[i]: 1 for i in range(nord)}, LE, t)
    return model


def build_kemeny_bribery_models(
    q: BriberyQuery, m_cap: int = M_MODEL_CAP
) -> list[tuple[int, IlpModel]]:
    """One model per consensus order topped by the target; the query is
    feasible iff any member of the family is."""
    tables = _check_model_query(q, m_cap)
    counts, _ = _succinct_groups(q.election, tables)
    nord = len(tables.orders)
    models = []
    for h in range(nord):
        if tables.orders[h][0] != q.target:
            continue
        model = IlpModel()
        b = [
            [model.add_var(f"b[{i}][{j}]", 0, counts[i]) for j in range(nord)]
            for i in range(nord)
        ]
        for i in range(nord):
            model.add({b[i][j]: 1 for j in range(nord)}, EQ, counts[i])
        model.add({b[i][j]: 1 for i in range(nord) for j in range(nord) if i != j}, LE, q.budget)
        for ell in range(nord):
            coeffs = {}
            for i in range(nord):
                gap = tables.agree[i][h] - tables.agree[i][ell]
                if gap:
                    for j in range(nord):
                        coeffs[b[j][i]] = coeffs.get(b[j][i], 0) + gap
            # ties are fine among orders that also top the target; in unique
            # mode any other order must agree strictly less than o_h
            strict = q.unique and tables.orders[ell][0] != q.target
            model.add(coeffs, GE, 1 if strict else 0)
        models.append((h, model))
    return models


def decode_bribery_assignment(
    q: BriberyQuery, assignment: dict[int, int], nord: int
) -> BriberyWitness:
    """Decode the leading b[i][j] variables of a score/Kemeny model."""
    tables = order_tables(q.election.m)
    moved = {}
    for i in range(nord):
        for j in range(nord):
            val = assignment[i * nord + j]
            if i != j and val:
                moved[(i, j)] = val
    return _decode_moves(q, tables, moved)


def solve_kemeny_ilp(q: BriberyQuery, m_cap: int = M_MODEL_CAP) -> SolveResult:
    if q.rule.kind != "kemeny":
        raise QueryError("solve_kemeny_ilp takes Kemeny queries")
    nord = len(order_tables(q.election.m).orders)
    for _, model in build_kemeny_bribery_models(q, m_cap):
        assignment = ilp_feasible(model)
        if assignment is not None:
            return SolveResult(True, decode_bribery_assignment(q, assignment, nord), "ilp-kemeny")
    return SolveResult(False, None, "ilp-kemeny")


def _score_model(q: BriberyQuery, kind: str, t: int, m_cap: int) -> IlpModel:
    if kind == "dodgson":
        return build_dodgson_score_bribery_model(q, t, m_cap)
    if kind == "young":
        return build_young_score_bribery_model(q, t, m_cap)
    raise QueryError(f"no score model for rule {kind!r}")


def score_bribery_feasible(q: BriberyQuery, kind: str, t: int, m_cap: int = M_MODEL_CAP) -> bool:
    return ilp_feasible(_score_model(q, kind, t, m_cap)) is not None


def _score_query(e: Election, rule_kind: str, c: int, budget: int) -> BriberyQuery:
    from .elections import DODGSON, YOUNG

    rule = DODGSON if rule_kind == "dodgson" else YOUNG
    return BriberyQuery(e, rule, c, budget)


def _max_score(e: Election, kind: str) -> int:
    n = e.total_voters
    if kind == "young":
        return n
    return n * (e.m * (e.m - 1) // 2)


def score_via_model(e: Election, kind: str, c: int, m_cap: int = M_MODEL_CAP) -> int | None:
    """Dodgson/Young score of c through the integer model: least feasible
    target at zero bribes, by binary search over the monotone target."""
    q = _score_query(e, kind, c, 0)
    hi = _max_score(e, kind)
    if not score_bribery_feasible(q, kind, hi, m_cap):
        return None
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if score_bribery_feasible(q, kind, mid, m_cap):
            hi = mid
        else:
            lo = mid + 1
    return lo


def min_bribe_for_score(
    q: BriberyQuery, t: int, m_cap: int = M_MODEL_CAP
) -> int | None:
    """Least budget making the score target reachable; binary search over the
    monotone budget axis.  None when even bribing everyone fails."""
    kind = q.rule.kind
    n = q.election.total_voters
    if not score_bribery_feasible(replace(q, budget=n), kind, t, m_cap):
        return None
    lo, hi = 0, n
    while lo < hi:
        mid = (lo + hi) // 2
        if score_bribery_feasible(replace(q, budget=mid), kind, t, m_cap):
            hi = mid
        else:
            lo = mid + 1
    return lo


def dodgson_prime_winners(e: Election, m_cap: int = M_MODEL_CAP) -> set[int]:
    """Candidates needing the fewest whole-ballot rewrites to become Condorcet."""
    costs = {}
    for c in range(e.m):
        k = min_bribe_for_score(_score_query(e, "dodgson", c, 0), 0, m_cap)
        if k is not None:
            costs[c] = k
    if not costs:
        return set()
    best = min(costs.values())
    return {c for c, k in costs.items() if k == best}


def solve_full_dodgson_or_young_bribery(
    q: BriberyQuery, m_cap: int = M_MODEL_CAP
) -> SolveResult:
    """Dodgson/Young bribery by enumerating bribery shapes, testing winnership
    of each resulting electorate through the per-candidate score models."""
    kind = q.rule.kind
    if kind not in ("dodgson", "young"):
        raise QueryError("this solver takes Dodgson or Young queries")
    tables = _check_model_query_priced_ok(q, m_cap)
    e, p = q.election, q.target
    nord = len(tables.orders)
    groups: list[list[tuple[int, int]]] = [[] for _ in tables.orders]  # (price, block)
    for bi, v in enumerate(e.voters):
        groups[tables.index[v.ballot]].extend([(v.price, bi)] * v.multiplicity)
    for g in groups:
        g.sort()
    sizes = [len(g) for g in groups]
    prefix_cost = [[0] for _ in groups]
    for g, pc in zip(groups, prefix_cost):
        for price, _ in g:
            pc.append(pc[-1] + price)

    verdict_cache: dict[tuple[int, ...], bool] = {}

    def p_wins(counts: tuple[int, ...]) -> bool:
        if counts in verdict_cache:
            return verdict_cache[counts]
        blocks = tuple(
            VoterBlock(tables.orders[j], multiplicity=c) for j, c in enumerate(counts) if c
        )
        bribed = Election(e.candidates, blocks, ORDERS)
        scores = {c: score_via_model(bribed, kind, c, m_cap) for c in range(e.m)}
        sp = scores[p]
        if sp is None:
            ok = False
        else:
            # a rival with no reachable score counts as infinitely bad
            rivals = [scores[c] for c in range(e.m) if c != p]
            if q.unique:
                ok = all(s is None or sp < s for s in rivals)
            else:
                ok = all(s is None or sp <= s for s in rivals)
        verdict_cache[counts] = ok
        return ok

    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    for bvec in itertools.product(*[range(s + 1) for s in sizes]):
        cost = sum(prefix_cost[i][b] for i, b in enumerate(bvec))
        if q.priced:
            if cost > q.budget:
                continue
        elif sum(bvec) > q.budget:
            continue
        total_b = sum(bvec)
        for dvec in compositions(total_b, nord):
            counts = tuple(sizes[j] - bvec[j] + dvec[j] for j in range(nord))
            if not p_wins(counts):
                continue
            bribed = [blk for i, b in enumerate(bvec) for _, blk in groups[i][:b]]
            moves = []
            it = iter(bribed)
            for j, d in enumerate(dvec):
                for _ in range(d):
                    moves.append((next(it), tables.orders[j]))
            tally = {}
            for block, ballot in moves:
                tally[(block, ballot)] = tally.get((block, ballot), 0) + 1
            w = BriberyWitness(
                rewrites=tuple(Rewrite(b, n, o) for (b, o), n in sorted(tally.items()))
            )
            return SolveResult(True, w, f"ilp-{kind}-full")
    return SolveResult(False, None, f"ilp-{kind}-full")


def _check_model_query_priced_ok(q: BriberyQuery, m_cap: int) -> OrderTables:
    e = q.election
    if e.ballot_kind != ORDERS:
        raise QueryError("the integer models take preference-order ballots")
    if e.m > m_cap:
        raise ElectionError(f"{e.m} candidates exceed the model cap {m_cap}")
    if q.weighted:
        raise QueryError("Dodgson/Young bribery is defined for unweighted voters here")
    return order_tables(e.m)
