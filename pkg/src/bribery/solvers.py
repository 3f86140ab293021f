"""Polynomial-time bribery algorithms and the scoring-protocol dichotomy.

Every solver returns a SolveResult whose witness, when feasible, passes
oracle.verify_witness for the same query.  Greedy tie-breaking is by lowest
candidate id, then lowest voter-block index, so witnesses are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import knapsack
from .elections import (
    ORDERS,
    Election,
    ElectionError,
    PLURALITY,
    Rule,
    effective_alpha,
    score_table,
    validate_scoring_vector,
)
from .model import BriberyQuery, BriberyWitness, EntryFlip, QueryError, Rewrite, SolveResult

M_FACTORIAL_CAP = 3


class NoSolverError(ValueError):
    """Raised when no polynomial solver matches a query's variant."""


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise NoSolverError(msg)


def _top_ballot(m: int, top: int, last: int | None = None) -> tuple[int, ...]:
    rest = [c for c in range(m) if c != top and c != last]
    ballot = [top] + rest
    if last is not None and last != top:
        ballot.append(last)
    return tuple(ballot)


def _merge_rewrites(moves) -> tuple[Rewrite, ...]:
    tally = {}
    for block, ballot in moves:
        tally[(block, ballot)] = tally.get((block, ballot), 0) + 1
    return tuple(
        Rewrite(block, n, ballot) for (block, ballot), n in sorted(tally.items())
    )


def _plurality_unit_scores(e: Election) -> list[int]:
    scores = [0] * e.m
    for v in e.voters:
        scores[v.ballot[0]] += v.multiplicity
    return scores


def solve_plurality_basic(q: BriberyQuery) -> SolveResult:
    """Unpriced, unweighted plurality: repeatedly bribe a current winner's voter."""
    _require(q.rule.kind == "plurality" and not q.priced and not q.weighted, "plurality basic")
    _require(not q.negative, "negative queries use the partition check")
    e, p = q.election, q.target
    scores = _plurality_unit_scores(e)
    remaining = [v.multiplicity for v in e.voters]
    replacement = _top_ballot(e.m, p)
    moves = []

    def p_wins() -> bool:
        others = [s for c, s in enumerate(scores) if c != p]
        if not others:
            return True
        return scores[p] > max(others) if q.unique else scores[p] >= max(others)

    while len(moves) < q.budget and not p_wins():
        others = [(s, c) for c, s in enumerate(scores) if c != p]
        top_score, victim = max(others, key=lambda sc: (sc[0], -sc[1]))
        block = next(
            (i for i, v in enumerate(e.voters) if v.ballot[0] == victim and remaining[i] > 0),
            None,
        )
        if block is None:
            break
        remaining[block] -= 1
        scores[victim] -= 1
        scores[p] += 1
        moves.append((block, replacement))
    if p_wins():
        return SolveResult(True, BriberyWitness(rewrites=_merge_rewrites(moves)), "greedy")
    return SolveResult(False, None, "greedy")


def _sorted_supporters(e: Election, key) -> dict[int, list[tuple[int, int, int]]]:
    pools: dict[int, list] = {c: [] for c in range(e.m)}
    for i, v in enumerate(e.voters):
        pools[v.ballot[0]].extend([(v.price, v.weight, i)] * v.multiplicity)
    for c in pools:
        pools[c].sort(key=key)
    return pools


def solve_plurality_priced(q: BriberyQuery) -> SolveResult:
    """Priced, unweighted plurality: sweep every post-bribery score threshold."""
    _require(q.rule.kind == "plurality" and q.priced and not q.weighted, "plurality priced")
    _require(not q.negative, "negative queries use the partition check")
    e, p = q.election, q.target
    base = _plurality_unit_scores(e)
    pools = _sorted_supporters(e, key=lambda u: (u[0], u[2]))
    replacement = _top_ballot(e.m, p)
    n = e.total_voters
    for r in range(n + 1):
        cap = r - 1 if q.unique else r
        cost = 0
        moves = []
        leftovers = []
        ok = True
        for c in range(e.m):
            if c == p:
                continue
            need = base[c] - cap
            if need > 0:
                if cap < 0:
                    ok = False
                    break
                chosen = pools[c][:need]
                cost += sum(u[0] for u in chosen)
                moves.extend(chosen)
                leftovers.extend(pools[c][need:])
            else:
                leftovers.extend(pools[c])
        if not ok:
            continue
        gained = base[p] + len(moves)
        leftovers.sort(key=lambda u: (u[0], u[2]))
        for u in leftovers:
            if gained >= r:
                break
            moves.append(u)
            cost += u[0]
            gained += 1
        if gained < r or cost > q.budget:
            continue
        w = BriberyWitness(rewrites=_merge_rewrites((u[2], replacement) for u in moves))
        return SolveResult(True, w, "price-sweep")
    return SolveResult(False, None, "price-sweep")


def solve_plurality_weighted(q: BriberyQuery) -> SolveResult:
    """Unpriced, weighted plurality: thresholds are heaviest-prefix leftovers."""
    _require(q.rule.kind == "plurality" and q.weighted and not q.priced, "plurality weighted")
    _require(not q.negative, "negative weighted bribery is intractable; use the oracle")
    e, p = q.election, q.target
    if e.m == 1:
        return SolveResult(True, BriberyWitness(), "weight-sweep")
    base = score_table(e, PLURALITY)
    pools = _sorted_supporters(e, key=lambda u: (-u[1], u[2]))
    replacement = _top_ballot(e.m, p)
    thresholds = set()
    for c in range(e.m):
        if c == p:
            continue
        left = base[c]
        thresholds.add(left)
        for _, w, _ in pools[c]:
            left -= w
            thresholds.add(left)
    for r in sorted(thresholds, reverse=True):
        target = r + 1 if q.unique else r
        moves = []
        leftovers = []
        ok = True
        for c in range(e.m):
            if c == p:
                continue
            left = base[c]
            idx = 0
            while left > r:
                if idx >= len(pools[c]):
                    ok = False
                    break
                unit = pools[c][idx]
                moves.append(unit)
                left -= unit[1]
                idx += 1
            if not ok:
                break
            leftovers.extend(pools[c][idx:])
        if not ok or len(moves) > q.budget:
            continue
        gained = base[p] + sum(u[1] for u in moves)
        leftovers.sort(key=lambda u: (-u[1], u[2]))
        for u in leftovers:
            if gained >= target or len(moves) >= q.budget:
                break
            moves.append(u)
            gained += u[1]
        if gained < target or len(moves) > q.budget:
            continue
        w = BriberyWitness(rewrites=_merge_rewrites((u[2], replacement) for u in moves))
        return SolveResult(True, w, "weight-sweep")
    return SolveResult(False, None, "weight-sweep")


def solve_plurality_negative_priced(q: BriberyQuery) -> SolveResult:
    """Negative priced plurality: exact room-below/cost-above feasibility check.

    Feasible iff the votes that must leave over-threshold candidates fit in
    the slack under the target's score, and buying each such candidate's
    cheapest surplus voters is within budget.
    """
    _require(q.rule.kind == "plurality" and q.negative and not q.weighted, "negative priced")
    e, p = q.election, q.target
    base = _plurality_unit_scores(e)
    cap = base[p] - 1 if q.unique else base[p]
    if e.m == 1:
        return SolveResult(True, BriberyWitness(), "negative-check")
    need = sum(max(0, base[c] - cap) for c in range(e.m) if c != p)
    if need == 0:
        return SolveResult(True, BriberyWitness(), "negative-check")
    if cap < 0:
        return SolveResult(False, None, "negative-check")
    room = sum(max(0, cap - base[c]) for c in range(e.m) if c != p)
    if need > room:
        return SolveResult(False, None, "negative-check")
    pools = _sorted_supporters(e, key=lambda u: (u[0], u[2]))
    chosen = []
    cost = 0
    for c in range(e.m):
        if c == p or base[c] <= cap:
            continue
        take = pools[c][: base[c] - cap]
        cost += sum(u[0] for u in take)
        chosen.extend(take)
    if cost > q.budget:
        return SolveResult(False, None, "negative-check")
    moves = []
    it = iter(chosen)
    for c in range(e.m):
        if c == p:
            continue
        for _ in range(max(0, cap - base[c])):
            unit = next(it, None)
            if unit is None:
                break
            moves.append((unit[2], _top_ballot(e.m, c)))
    w = BriberyWitness(rewrites=_merge_rewrites(moves))
    return SolveResult(True, w, "negative-check")


def _bribe_everything_witness(q: BriberyQuery) -> BriberyWitness:
    e, p = q.election, q.target
    replacement = _top_ballot(e.m, p)
    moves = [
        Rewrite(i, v.multiplicity, replacement)
        for i, v in enumerate(e.voters)
        if v.ballot[0] != p
    ]
    return BriberyWitness(rewrites=tuple(moves))


def solve_plurality_unary_prices(q: BriberyQuery) -> SolveResult:
    """Priced+weighted plurality, unary prices: pivot/sub-budget sweep over
    the heaviest-weight knapsack tables."""
    _require(q.rule.kind == "plurality" and q.priced and q.weighted, "plurality priced+weighted")
    _require(not q.negative, "negative weighted bribery is intractable; use the oracle")
    e, p = q.election, q.target
    if e.m == 1:
        return SolveResult(True, BriberyWitness(), "dp-prices")
    total_price = sum(v.price * v.multiplicity for v in e.voters)
    if not q.unique and q.budget >= total_price:
        return SolveResult(True, _bribe_everything_witness(q), "dp-prices")
    scores = score_table(e, PLURALITY)
    others = [c for c in range(e.m) if c != p]
    replacement = _top_ballot(e.m, p)
    for c in others:
        pool_c = knapsack.supporter_pool(e, c)
        items_c = [(pr, w) for pr, w, _ in pool_c]
        rest = [d for d in others if d != c]
        for b in range(min(q.budget, sum(pr for pr, _ in items_c)) + 1):
            w_pivot, picked_c = knapsack.heaviest_pick(items_c, b)
            r = scores[c] - w_pivot
            w_rest, splits = knapsack.heaviest_across_pick(e, rest, q.budget - b, r)
            if w_rest is None:
                continue
            target = r + 1 if q.unique else r
            if scores[p] + w_rest + w_pivot < target:
                continue
            moves = [(pool_c[i][2], replacement) for i in picked_c]
            for d in rest:
                pool_d = knapsack.supporter_pool(e, d)
                _, picked_d = knapsack.heaviest_pick(
                    [(pr, w) for pr, w, _ in pool_d], splits[d]
                )
                moves.extend((pool_d[i][2], replacement) for i in picked_d)
            w = BriberyWitness(rewrites=_merge_rewrites(moves))
            return SolveResult(True, w, "dp-prices")
    return SolveResult(False, None, "dp-prices")


def solve_plurality_unary_weights(q: BriberyQuery) -> SolveResult:
    """Priced+weighted plurality, unary weights: pivot/weight sweep over the
    cheapest-price knapsack tables."""
    _require(q.rule.kind == "plurality" and q.priced and q.weighted, "plurality priced+weighted")
    _require(not q.negative, "negative weighted bribery is intractable; use the oracle")
    e, p = q.election, q.target
    if e.m == 1:
        return SolveResult(True, BriberyWitness(), "dp-weights")
    scores = score_table(e, PLURALITY)
    others = [c for c in range(e.m) if c != p]
    replacement = _top_ballot(e.m, p)
    for c in others:
        pool_c = knapsack.supporter_pool(e, c)
        items_c = [(pr, w) for pr, w, _ in pool_c]
        rest = [d for d in others if d != c]
        for w_pivot in range(sum(w for _, w in items_c) + 1):
            b, picked_c = knapsack.cheapest_pick(items_c, w_pivot)
            if b is None or b > q.budget:
                continue
            r = scores[c] - w_pivot
            target = r + 1 if q.unique else r
            need = target - (scores[p] + w_pivot)
            b_rest, splits = knapsack.cheapest_across_pick(e, rest, need, r)
            if b_rest is None or b + b_rest > q.budget:
                continue
            moves = [(pool_c[i][2], replacement) for i in picked_c]
            for d in rest:
                pool_d = knapsack.supporter_pool(e, d)
                need_d = max(splits[d], scores[d] - r, 0)
                _, picked_d = knapsack.cheapest_pick(
                    [(pr, w) for pr, w, _ in pool_d], need_d
                )
                moves.extend((pool_d[i][2], replacement) for i in picked_d)
            w = BriberyWitness(rewrites=_merge_rewrites(moves))
            return SolveResult(True, w, "dp-weights")
    return SolveResult(False, None, "dp-weights")


def _flip_price(q: BriberyQuery, v, c: int) -> int:
    return v.flip_prices[c] if q.priced else 1


def solve_approval_flip(q: BriberyQuery, axis: str = "prices") -> SolveResult:
    """Entry-flip approval bribery: try every gain for the target, then strip
    rivals down to it with cheapest flips.  ``axis`` picks the unary side."""
    _require(q.rule.kind == "approval" and q.approval_flip, "entry-flip approval")
    if axis not in ("prices", "weights"):
        raise QueryError(f"unknown axis {axis!r}")
    e, p = q.election, q.target
    solver = f"flip-dp-{axis}"
    scores = score_table(e, q.rule)
    total_price = sum(
        v.multiplicity * sum(_flip_price(q, v, c) for c in range(e.m)) for v in e.voters
    )
    if not q.unique and q.budget >= total_price:
        moves = []
        for i, v in enumerate(e.voters):
            entries = frozenset(
                c for c in range(e.m) if v.ballot[c] != (c == p)
            )
            if entries:
                moves.append(EntryFlip(i, v.multiplicity, entries))
        return SolveResult(True, BriberyWitness(flips=tuple(moves)), solver)
    gain_pool = []  # (flip price of p's entry, weight, block)
    for i, v in enumerate(e.voters):
        if not v.ballot[p]:
            gain_pool.extend([(_flip_price(q, v, p), v.weight, i)] * v.multiplicity)
    gain_items = [(pr, w) for pr, w, _ in gain_pool]
    if axis == "prices":
        sweep = [("budget", b) for b in range(min(q.budget, sum(p0 for p0, _ in gain_items)) + 1)]
    else:
        sweep = [("weight", w) for w in range(sum(w0 for _, w0 in gain_items) + 1)]
    for kind, value in sweep:
        if kind == "budget":
            gained, picked = knapsack.heaviest_pick(gain_items, value)
            spent = sum(gain_items[i][0] for i in picked)
            r = scores[p] + gained
        else:
            spent, picked = knapsack.cheapest_pick(gain_items, value)
            if spent is None or spent > q.budget:
                continue
            r = scores[p] + value
        left = q.budget - spent
        cap = r - 1 if q.unique else r
        flips: dict[tuple[int, int], set[int]] = {}
        copy_use: dict[int, int] = {}
        for i in picked:
            block = gain_pool[i][2]
            copy = copy_use.get(block, 0)
            copy_use[block] = copy + 1
            flips.setdefault((block, copy), set()).add(p)
        ok = True
        for c in range(e.m):
            if c == p or scores[c] <= cap:
                continue
            strip_pool = []
            for i, v in enumerate(e.voters):
                if v.ballot[c]:
                    strip_pool.extend([(_flip_price(q, v, c), v.weight, i)] * v.multiplicity)
            cost_c, picked_c = knapsack.cheapest_pick(
                [(pr, w) for pr, w, _ in strip_pool], scores[c] - cap
            )
            if cost_c is None:
                ok = False
                break
            left -= cost_c
            if left < 0:
                ok = False
                break
            per_block: dict[int, int] = {}
            for i in picked_c:
                block = strip_pool[i][2]
                copy = per_block.get(block, 0)
                per_block[block] = copy + 1
                flips.setdefault((block, copy), set()).add(c)
        if not ok or left < 0:
            continue
        tally = {}
        for (block, _), entries in flips.items():
            key = (block, frozenset(entries))
            tally[key] = tally.get(key, 0) + 1
        w = BriberyWitness(
            flips=tuple(
                EntryFlip(block, n, entries)
                for (block, entries), n in sorted(tally.items(), key=repr)
            )
        )
        return SolveResult(True, w, solver)
    return SolveResult(False, None, solver)


def _order_index(e: Election) -> tuple[list[tuple[int, ...]], dict[tuple[int, ...], int]]:
    orders = list(itertools.permutations(range(e.m)))
    return orders, {o: i for i, o in enumerate(orders)}


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def solve_scoring_priced(q: BriberyQuery, alpha=None, m_cap: int = M_FACTORIAL_CAP) -> SolveResult:
    """Priced (or plain) unweighted fixed-m scoring bribery: enumerate how many
    voters leave each preference order and how many land on each."""
    _require(q.rule.is_score_based and q.rule.ballot_kind == ORDERS, "orders scoring rule")
    _require(not q.weighted, "weighted queries use the split dynamic program")
    e, p = q.election, q.target
    if e.m > m_cap:
        raise ElectionError(f"{e.m} candidates exceed the m!-enumeration cap {m_cap}")
    alpha = tuple(alpha) if alpha is not None else effective_alpha(q.rule, e.m)
    validate_scoring_vector(alpha)
    orders, order_of = _order_index(e)
    groups: list[list[tuple[int, int]]] = [[] for _ in orders]  # (price, block)
    for i, v in enumerate(e.voters):
        groups[order_of[v.ballot]].extend([(v.price, i)] * v.multiplicity)
    for g in groups:
        g.sort()
    sizes = [len(g) for g in groups]
    prefix_cost = [[0] for _ in groups]
    for g, pc in zip(groups, prefix_cost):
        for price, _ in g:
            pc.append(pc[-1] + price)
    contrib = [[0] * e.m for _ in orders]
    for j, order in enumerate(orders):
        for pos, c in enumerate(order):
            contrib[j][c] = alpha[pos]
    n = e.total_voters

    def p_ok(counts) -> bool:
        sp = sum(counts[j] * contrib[j][p] for j in range(len(orders)))
        for c in range(e.m):
            if c == p:
                continue
            sc = sum(counts[j] * contrib[j][c] for j in range(len(orders)))
            if sc > sp or (q.unique and sc == sp):
                return False
        return True

    for bvec in itertools.product(*[range(s + 1) for s in sizes]):
        cost = sum(prefix_cost[i][b] for i, b in enumerate(bvec))
        if cost > q.budget:
            continue
        total_b = sum(bvec)
        for dvec in _compositions(total_b, len(orders)):
            if any(d > n for d in dvec):
                continue
            counts = [sizes[j] - bvec[j] + dvec[j] for j in range(len(orders))]
            if not p_ok(counts):
                continue
            bribed = [blk for i, b in enumerate(bvec) for _, blk in groups[i][:b]]
            moves = []
            it = iter(bribed)
            for j, d in enumerate(dvec):
                for _ in range(d):
                    moves.append((next(it), orders[j]))
            w = BriberyWitness(rewrites=_merge_rewrites(moves))
            return SolveResult(True, w, "enum")
    return SolveResult(False, None, "enum")


def solve_scoring_unary_weights(
    q: BriberyQuery, alpha=None, m_cap: int = M_FACTORIAL_CAP
) -> SolveResult:
    """Weighted fixed-m scoring bribery with unary-scale weights.

    Per preference order, a forward pass of the split dynamic program yields
    the cheapest way to scatter that order's vote weight onto all orders;
    the per-order splits are then folded keeping one minimum cost per
    reachable total weight vector.
    """
    _require(q.rule.is_score_based and q.rule.ballot_kind == ORDERS, "orders scoring rule")
    _require(q.weighted, "unweighted queries use the plain enumeration")
    e, p = q.election, q.target
    if e.m > m_cap:
        raise ElectionError(f"{e.m} candidates exceed the m!-enumeration cap {m_cap}")
    alpha = tuple(alpha) if alpha is not None else effective_alpha(q.rule, e.m)
    validate_scoring_vector(alpha)
    orders, order_of = _order_index(e)
    nord = len(orders)
    groups: list[list[tuple[int, int, int]]] = [[] for _ in orders]  # (price, weight, block)
    for i, v in enumerate(e.voters):
        groups[order_of[v.ballot]].extend([(v.price, v.weight, i)] * v.multiplicity)
    zero = tuple([0] * nord)

    # per-order splits: weight vector -> (cost, assignment trace)
    per_order = []
    for i, g in enumerate(groups):
        layers = [{zero: (0, None, None)}]
        for u, (price, weight, _) in enumerate(g):
            nxt: dict = {}
            for vec, (cost, _, _) in layers[-1].items():
                for j in range(nord):
                    step = cost if j == i else cost + price
                    if step > q.budget:
                        continue
                    new = list(vec)
                    new[j] += weight
                    key = tuple(new)
                    if key not in nxt or step < nxt[key][0]:
                        nxt[key] = (step, vec, j)
            layers.append(nxt)
        per_order.append((g, layers))

    # fold orders, keeping the cheapest way to reach each total weight vector;
    # folds[i] maps reachable totals after orders 0..i-1 to (cost, prev, vec)
    folds = [{zero: (0, None, None)}]
    for _, layers in per_order:
        nxt = {}
        for total, (cost, _, _) in folds[-1].items():
            for vec, (c2, _, _) in layers[-1].items():
                cost2 = cost + c2
                if cost2 > q.budget:
                    continue
                key = tuple(t + v for t, v in zip(total, vec))
                if key not in nxt or cost2 < nxt[key][0]:
                    nxt[key] = (cost2, total, vec)
        folds.append(nxt)

    contrib = [[0] * e.m for _ in orders]
    for j, order in enumerate(orders):
        for pos, c in enumerate(order):
            contrib[j][c] = alpha[pos]

    def p_ok(total) -> bool:
        sp = sum(total[j] * contrib[j][p] for j in range(nord))
        for c in range(e.m):
            if c == p:
                continue
            sc = sum(total[j] * contrib[j][c] for j in range(nord))
            if sc > sp or (q.unique and sc == sp):
                return False
        return True

    winner = next((t for t in sorted(folds[-1]) if p_ok(t)), None)
    if winner is None:
        return SolveResult(False, None, "g-dp")
    moves = []
    total = winner
    for i in range(nord - 1, -1, -1):
        _, prev_total, vec = folds[i + 1][total]
        g, layers = per_order[i]
        at = vec
        for u in range(len(g) - 1, -1, -1):
            _, prev_vec, j = layers[u + 1][at]
            if j != i:
                moves.append((g[u][2], orders[j]))
            at = prev_vec
        total = prev_total
    w = BriberyWitness(rewrites=_merge_rewrites(moves))
    return SolveResult(True, w, "g-dp")


def solve_veto(q: BriberyQuery) -> SolveResult:
    """Unpriced, unweighted veto bribery.

    Nonunique: re-point the target's vetoes at currently least-vetoed rivals.
    Unique: that greedy is incomplete when the target is tied at zero vetoes,
    so enumerate the target's final veto count and schedule the cheapest
    transfer plan for each.
    """
    _require(q.rule.kind == "veto" and not q.priced and not q.weighted, "plain veto")
    e, p = q.election, q.target
    if e.m == 1:
        return SolveResult(True, BriberyWitness(), "veto-greedy")
    vetoes = [0] * e.m
    for v in e.voters:
        vetoes[v.ballot[-1]] += v.multiplicity
    remaining = [v.multiplicity for v in e.voters]

    def winner_now(vs) -> bool:
        others = [vs[c] for c in range(e.m) if c != p]
        return vs[p] < min(others) if q.unique else vs[p] <= min(others)

    if not q.unique:
        moves = []
        vs = vetoes[:]
        while len(moves) < q.budget and not winner_now(vs):
            block = next(
                (i for i, v in enumerate(e.voters) if v.ballot[-1] == p and remaining[i] > 0),
                None,
            )
            if block is None:
                break
            target = min(
                (c for c in range(e.m) if c != p), key=lambda c: (vs[c], c)
            )
            remaining[block] -= 1
            vs[p] -= 1
            vs[target] += 1
            moves.append((block, _top_ballot(e.m, p, last=target)))
        if winner_now(vs):
            return SolveResult(True, BriberyWitness(rewrites=_merge_rewrites(moves)), "veto-greedy")
        return SolveResult(False, None, "veto-greedy")

    n = e.total_voters
    vp = vetoes[p]
    others = [c for c in range(e.m) if c != p]
    for x in range(vp + 1):
        if n - x < (e.m - 1) * (x + 1):
            continue
        deficit = sum(max(0, x + 1 - vetoes[c]) for c in others)
        bribes = (vp - x) + max(0, deficit - (vp - x))
        if bribes > q.budget:
            continue
        moves = []
        vs = vetoes[:]
        remaining = [v.multiplicity for v in e.voters]

        def take_vetoer(of: int) -> int | None:
            for i, v in enumerate(e.voters):
                if v.ballot[-1] == of and remaining[i] > 0:
                    remaining[i] -= 1
                    return i
            return None

        def needy() -> int | None:
            cands = [c for c in others if vs[c] < x + 1]
            return min(cands) if cands else None

        for _ in range(vp - x):
            block = take_vetoer(p)
            dest = needy()
            if dest is None:
                dest = min(others)
            vs[p] -= 1
            vs[dest] += 1
            moves.append((block, _top_ballot(e.m, p, last=dest)))
        dest = needy()
        while dest is not None:
            donor = max(
                (c for c in others if vs[c] > x + 1), key=lambda c: (vs[c], -c), default=None
            )
            if donor is None:
                break
            block = take_vetoer(donor)
            vs[donor] -= 1
            vs[dest] += 1
            moves.append((block, _top_ballot(e.m, p, last=dest)))
            dest = needy()
        if winner_now(vs) and len(moves) <= q.budget:
            return SolveResult(True, BriberyWitness(rewrites=_merge_rewrites(moves)), "veto-greedy")
    return SolveResult(False, None, "veto-greedy")


@dataclass(frozen=True)
class DichotomyVerdict:
    complexity: str  # "P" or "NP-complete"
    justification: str


def classify_dichotomy(
    alpha, *, priced: bool, weighted: bool, weights_unary: bool = False
) -> DichotomyVerdict:
    """Complexity class of bribery under a scoring protocol, per voter variant."""
    alpha = tuple(alpha)
    validate_scoring_vector(alpha)
    if not weighted:
        return DichotomyVerdict("P", "fixed-m-order-enumeration")
    if weights_unary:
        return DichotomyVerdict("P", "unary-weight-split-dp")
    if priced:
        if alpha[0] == alpha[-1]:
            return DichotomyVerdict("P", "all-positions-tied")
        return DichotomyVerdict("NP-complete", "equal-price-weight-subset-selection")
    if all(a == alpha[1] for a in alpha[1:]):
        if alpha[0] == alpha[-1]:
            return DichotomyVerdict("P", "all-positions-tied")
        return DichotomyVerdict("P", "plurality-threshold-sweep")
    return DichotomyVerdict("NP-complete", "weighted-coalition-embedding")


def _flat_alpha_result(q: BriberyQuery, solver: str) -> SolveResult:
    # every candidate always ties; the target wins iff not in unique mode or m == 1
    if q.unique and q.election.m > 1:
        return SolveResult(False, None, solver)
    return SolveResult(True, BriberyWitness(), solver)


def auto_solver(q: BriberyQuery):
    """Pick the polynomial solver matching the query's variant, or None."""
    kind = q.rule.kind
    if kind == "plurality":
        if q.negative:
            if not q.weighted:
                return "negative-check", solve_plurality_negative_priced
            return None
        if not q.priced and not q.weighted:
            return "greedy", solve_plurality_basic
        if q.priced and not q.weighted:
            return "price-sweep", solve_plurality_priced
        if q.weighted and not q.priced:
            return "weight-sweep", solve_plurality_weighted
        if q.prices_unary:
            return "dp-prices", solve_plurality_unary_prices
        if q.weights_unary:
            return "dp-weights", solve_plurality_unary_weights
        return None
    if kind == "approval":
        if not q.approval_flip:
            return None
        if q.weights_unary and not q.prices_unary:
            return "flip-dp-weights", lambda qq: solve_approval_flip(qq, axis="weights")
        if not q.priced or q.prices_unary:
            return "flip-dp-prices", lambda qq: solve_approval_flip(qq, axis="prices")
        return None
    if q.rule.is_score_based:
        alpha = effective_alpha(q.rule, q.election.m)
        if not q.weighted:
            if kind == "veto" and not q.priced:
                return "veto-greedy", solve_veto
            return "enum", solve_scoring_priced
        if q.weights_unary:
            return "g-dp", solve_scoring_unary_weights
        if alpha[0] == alpha[-1]:
            return "flat-alpha", lambda qq: _flat_alpha_result(qq, "flat-alpha")
        if not q.priced and all(a == alpha[1] for a in alpha[1:]):
            return "weight-sweep", _solve_pluralitylike_weighted
        return None
    return None


def _solve_pluralitylike_weighted(q: BriberyQuery) -> SolveResult:
    # scoring rules with alpha_1 > alpha_2 = ... = alpha_m elect exactly the
    # plurality winners, so the plurality threshold sweep applies verbatim
    plq = BriberyQuery(
        q.election,
        PLURALITY,
        q.target,
        q.budget,
        priced=q.priced,
        weighted=q.weighted,
        unique=q.unique,
    )
    res = solve_plurality_weighted(plq)
    return SolveResult(res.feasible, res.witness, "weight-sweep")
