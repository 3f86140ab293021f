"""Knapsack tables for buying vote weight off candidates.

A pool is a sequence of (price, weight) pairs drawn from one candidate's
supporters.  The single-pool functions answer "most weight for at most b
dollars" and "least money for at least w weight"; the *_across functions
extend them to a set of candidates under a common post-bribery score
threshold, combining per-candidate tables by convolution over the budget
(or weight) axis.  Tables always index the full 0..sum range; unary-scale
encodings keep that linear in the input.
"""

from __future__ import annotations

from .elections import Election, ElectionError, PLURALITY, score_table

UNDEF = None
_INF = float("inf")


def _heaviest_grid(pool):
    total = sum(p for p, _ in pool)
    grid = [[0] * (total + 1)]
    for price, weight in pool:
        prev = grid[-1]
        row = prev[:]
        for b in range(price, total + 1):
            gain = prev[b - price] + weight
            if gain > row[b]:
                row[b] = gain
        grid.append(row)
    return grid


def heaviest(pool, budget: int) -> int:
    """Max total weight of a sub-pool costing at most ``budget``."""
    if budget < 0:
        raise ElectionError("budget must be nonnegative")
    row = _heaviest_grid(pool)[-1]
    return row[min(budget, len(row) - 1)]


def heaviest_pick(pool, budget: int) -> tuple[int, tuple[int, ...]]:
    """Like heaviest, also returning the chosen pool indices."""
    if budget < 0:
        raise ElectionError("budget must be nonnegative")
    grid = _heaviest_grid(pool)
    b = min(budget, len(grid[0]) - 1)
    picked = []
    for i in range(len(pool), 0, -1):
        if grid[i][b] != grid[i - 1][b]:
            picked.append(i - 1)
            b -= pool[i - 1][0]
    return grid[len(pool)][min(budget, len(grid[0]) - 1)], tuple(reversed(picked))


def _cheapest_grid(pool):
    total = sum(w for _, w in pool)
    grid = [[0] + [_INF] * total]
    for price, weight in pool:
        prev = grid[-1]
        row = prev[:]
        if weight:
            for wt in range(weight, total + 1):
                gain = prev[wt - weight] + price
                if gain < row[wt]:
                    row[wt] = gain
        grid.append(row)
    return grid


def cheapest(pool, weight_target: int) -> int | None:
    """Min price of a sub-pool carrying at least ``weight_target`` weight."""
    row = _cheapest_grid(pool)[-1]
    lo = max(weight_target, 0)
    if lo >= len(row):
        return UNDEF
    best = min(row[lo:])
    return int(best) if best < _INF else UNDEF


def cheapest_pick(pool, weight_target: int) -> tuple[int | None, tuple[int, ...]]:
    """Like cheapest, also returning the chosen pool indices."""
    grid = _cheapest_grid(pool)
    row = grid[-1]
    lo = max(weight_target, 0)
    if lo >= len(row):
        return UNDEF, ()
    best = min(row[lo:])
    if best >= _INF:
        return UNDEF, ()
    wt = next(i for i in range(lo, len(row)) if row[i] == best)
    picked = []
    for i in range(len(pool), 0, -1):
        if grid[i][wt] != grid[i - 1][wt]:
            picked.append(i - 1)
            wt -= pool[i - 1][1]
    return int(best), tuple(reversed(picked))


def cheapest_by_budget_scan(pool, weight_target: int) -> int | None:
    """cheapest via its duality with heaviest: min b with heaviest(pool, b) >= w."""
    row = _heaviest_grid(pool)[-1]
    for b, w in enumerate(row):
        if w >= weight_target:
            return b
    return UNDEF


def supporter_pool(e: Election, c: int) -> list[tuple[int, int, int]]:
    """(price, weight, block index) units for voters whose top choice is c."""
    out = []
    for i, v in enumerate(e.voters):
        if v.ballot[0] == c:
            out.extend([(v.price, v.weight, i)] * v.multiplicity)
    return out


def _single_heaviest(e, scores, c, axis, threshold):
    pool = [(p, w) for p, w, _ in supporter_pool(e, c)]
    row = _heaviest_grid(pool)[-1]
    out = []
    for b in range(axis + 1):
        got = row[min(b, len(row) - 1)]
        out.append(got if scores[c] - got <= threshold else UNDEF)
    return out


def _single_cheapest(e, scores, c, axis, threshold):
    pool = [(p, w) for p, w, _ in supporter_pool(e, c)]
    grid_row = _cheapest_grid(pool)[-1]
    total_w = len(grid_row) - 1
    out = []
    for w in range(axis + 1):
        need = max(w, scores[c] - threshold, 0)
        if need > total_w:
            out.append(UNDEF)
            continue
        best = min(grid_row[need:])
        out.append(int(best) if best < _INF else UNDEF)
    return out


def _combine(singles, minimize):
    """Fold per-candidate tables along the shared axis, tracking split points.

    The maximize fold runs over budgets, where unspent budget is fine, so the
    empty prefix scores 0 everywhere; the minimize fold runs over weight
    targets, which the empty prefix cannot absorb.
    """
    axis = len(singles[0]) - 1 if singles else 0
    if minimize:
        cur = [0] + [UNDEF] * axis
    else:
        cur = [0] * (axis + 1)
    parents = []
    for table in singles:
        nxt = [UNDEF] * (axis + 1)
        par = [UNDEF] * (axis + 1)
        for total in range(axis + 1):
            for here in range(total + 1):
                a, b = cur[total - here], table[here]
                if a is UNDEF or b is UNDEF:
                    continue
                val = a + b
                if nxt[total] is UNDEF or (val < nxt[total] if minimize else val > nxt[total]):
                    nxt[total] = val
                    par[total] = here
        cur = nxt
        parents.append(par)
    return cur, parents


def heaviest_across(e: Election, cands, budget: int, threshold: int) -> int | None:
    """Max bribable weight from the candidates' supporters within budget,
    leaving every listed candidate at score <= threshold."""
    value, _ = heaviest_across_pick(e, cands, budget, threshold)
    return value


def heaviest_across_pick(e, cands, budget: int, threshold: int):
    """heaviest_across plus the per-candidate sub-budgets realizing it."""
    cands = list(cands)
    if budget < 0:
        return UNDEF, {}
    if not cands:
        return 0, {}
    scores = score_table(e, PLURALITY)
    axis = sum(p for c in cands for p, _, _ in supporter_pool(e, c))
    b_eval = min(budget, axis)
    singles = [_single_heaviest(e, scores, c, axis, threshold) for c in cands]
    table, parents = _combine(singles, minimize=False)
    if table[b_eval] is UNDEF:
        return UNDEF, {}
    splits = {}
    at = b_eval
    for c, par in zip(reversed(cands), reversed(parents)):
        here = par[at]
        splits[c] = here
        at -= here
    return table[b_eval], splits


def cheapest_across(e: Election, cands, weight_target: int, threshold: int) -> int | None:
    """Min cost of bribing >= weight_target weight off the candidates' supporters,
    leaving every listed candidate at score <= threshold."""
    value, _ = cheapest_across_pick(e, cands, weight_target, threshold)
    return value


def cheapest_across_pick(e, cands, weight_target: int, threshold: int):
    """cheapest_across plus the per-candidate weight targets realizing it."""
    cands = list(cands)
    target = max(weight_target, 0)
    if not cands:
        return (0, {}) if target == 0 else (UNDEF, {})
    scores = score_table(e, PLURALITY)
    axis = sum(w for c in cands for _, w, _ in supporter_pool(e, c))
    if target > axis:
        return UNDEF, {}
    singles = [_single_cheapest(e, scores, c, axis, threshold) for c in cands]
    table, parents = _combine(singles, minimize=True)
    # any final weight >= target is acceptable; take the cheapest such column
    best_w = UNDEF
    for w in range(target, axis + 1):
        if table[w] is not UNDEF and (best_w is UNDEF or table[w] < table[best_w]):
            best_w = w
    if best_w is UNDEF:
        return UNDEF, {}
    splits = {}
    at = best_w
    for c, par in zip(reversed(cands), reversed(parents)):
        here = par[at]
        splits[c] = here
        at -= here
    return table[best_w], splits
