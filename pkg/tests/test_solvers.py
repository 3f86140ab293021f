import random
from dataclasses import replace

import pytest

from bribery.elections import (
    APPROVAL,
    APPROVALS,
    Election,
    ORDERS,
    PLURALITY,
    VETO,
    VoterBlock,
    scoring,
)
from bribery.harness import FAMILIES, CheckCaps, run_check
from bribery.model import BriberyQuery, BriberyWitness, EntryFlip, SolveResult
from bribery.oracle import oracle_bribery, verify_witness
from bribery.solvers import (
    NoSolverError,
    auto_solver,
    classify_dichotomy,
    solve_approval_flip,
    solve_plurality_basic,
    solve_plurality_negative_priced,
    solve_plurality_priced,
    solve_plurality_unary_prices,
    solve_plurality_unary_weights,
    solve_plurality_weighted,
    solve_scoring_priced,
    solve_scoring_unary_weights,
    solve_veto,
)


def orders_election(ballots, weights=None, prices=None, names=None):
    m = len(ballots[0])
    names = names or tuple(f"c{i}" for i in range(m))
    voters = tuple(
        VoterBlock(
            tuple(b),
            price=1 if prices is None else prices[i],
            weight=1 if weights is None else weights[i],
        )
        for i, b in enumerate(ballots)
    )
    return Election(names, voters, ORDERS)


class TestPluralityBasic:
    def test_already_winning_empty_witness(self):
        e = orders_election([(0, 1)])
        r = solve_plurality_basic(BriberyQuery(e, PLURALITY, 0, 0))
        assert r.feasible and r.witness == BriberyWitness()

    def test_one_bribe_suffices(self):
        e = orders_election([(0, 1, 2), (0, 1, 2), (1, 0, 2), (2, 0, 1)])
        q = BriberyQuery(e, PLURALITY, 2, 1)
        r = solve_plurality_basic(q)
        assert r.feasible and verify_witness(q, r.witness)

    def test_three_against_one(self):
        # nonunique: one bribe forces a 2-2 tie, so feasible; unique is not
        e = orders_election([(0, 1), (0, 1), (0, 1), (1, 0)])
        assert solve_plurality_basic(BriberyQuery(e, PLURALITY, 1, 1)).feasible
        assert not solve_plurality_basic(
            BriberyQuery(e, PLURALITY, 1, 1, unique=True)
        ).feasible

    def test_bribe_count_bounded_by_electorate(self):
        rng = random.Random(0)
        for _ in range(40):
            m = rng.randint(1, 3)
            ballots = []
            for _ in range(rng.randint(0, 6)):
                order = list(range(m))
                rng.shuffle(order)
                ballots.append(tuple(order))
            e = (
                orders_election(ballots)
                if ballots
                else Election(tuple("abc"[:m]), (), ORDERS)
            )
            q = BriberyQuery(e, PLURALITY, rng.randrange(m), 50)
            r = solve_plurality_basic(q)
            assert r.feasible
            assert sum(mv.count for mv in r.witness.rewrites) <= e.total_voters


class TestPluralityPriced:
    def test_cheap_voter_wins(self):
        e = orders_election([(0, 1), (0, 1), (1, 0)], prices=[5, 1, 9])
        q = BriberyQuery(e, PLURALITY, 1, 1, priced=True)
        r = solve_plurality_priced(q)
        assert r.feasible and verify_witness(q, r.witness)

    def test_unaffordable(self):
        e = orders_election([(0, 1), (0, 1), (1, 0)], prices=[5, 5, 0])
        assert not solve_plurality_priced(
            BriberyQuery(e, PLURALITY, 1, 4, priced=True)
        ).feasible

    def test_free_voters_always_movable(self):
        e = orders_election([(0, 1), (0, 1), (0, 1)], prices=[0, 0, 0])
        q = BriberyQuery(e, PLURALITY, 1, 0, priced=True)
        assert solve_plurality_priced(q).feasible


class TestPluralityWeighted:
    def test_paper_two_weight4_example(self):
        e = orders_election(
            [(0, 1, 2), (0, 1, 2), (1, 0, 2), (2, 0, 1)], weights=[4, 4, 5, 2]
        )
        q = BriberyQuery(e, PLURALITY, 2, 1, weighted=True)
        r = solve_plurality_weighted(q)
        assert r.feasible
        bribed = {mv.block for mv in r.witness.rewrites}
        assert bribed <= {0, 1}  # a weight-4 voter, never the weight-5 one

    def test_bribe_everyone(self):
        e = orders_election([(0, 1), (0, 1)], weights=[3, 9])
        assert solve_plurality_weighted(
            BriberyQuery(e, PLURALITY, 1, 2, weighted=True)
        ).feasible

    def test_single_heavy_rival_zero_budget(self):
        e = orders_election([(0, 1)], weights=[3])
        assert not solve_plurality_weighted(
            BriberyQuery(e, PLURALITY, 1, 0, weighted=True)
        ).feasible


class TestPluralityNegative:
    def test_already_winning(self):
        e = orders_election([(0, 1)])
        q = BriberyQuery(e, PLURALITY, 0, 0, negative=True)
        r = solve_plurality_negative_priced(q)
        assert r.feasible and r.witness == BriberyWitness()

    def test_no_room_below(self):
        # target 1, rival 3, third candidate at 1: nothing can absorb votes
        e = orders_election(
            [(0, 1, 2)] + [(1, 0, 2)] * 3 + [(2, 0, 1)], names=("p", "a", "b")
        )
        q = BriberyQuery(e, PLURALITY, 0, 4, priced=True, negative=True)
        assert not solve_plurality_negative_priced(q).feasible

    def test_insufficient_room_even_with_budget(self):
        # frozen oracle verdict: b can absorb one vote only, a must shed two
        e = orders_election([(0, 1, 2)] + [(1, 0, 2)] * 3, names=("p", "a", "b"))
        q = BriberyQuery(e, PLURALITY, 0, 2, priced=True, negative=True)
        assert not solve_plurality_negative_priced(q).feasible
        assert not oracle_bribery(q).feasible

    def test_room_and_budget(self):
        e = orders_election(
            [(0, 1, 2)] * 2 + [(1, 0, 2)] * 3, names=("p", "a", "b")
        )
        q = BriberyQuery(e, PLURALITY, 0, 1, priced=True, negative=True)
        r = solve_plurality_negative_priced(q)
        assert r.feasible and verify_witness(q, r.witness)


class TestPluralityUnaryDPs:
    def test_early_accept_on_total_price(self):
        e = orders_election([(0, 1), (0, 1)], weights=[5, 5], prices=[2, 2])
        q = BriberyQuery(
            e, PLURALITY, 1, 4, priced=True, weighted=True, prices_unary=True
        )
        r = solve_plurality_unary_prices(q)
        assert r.feasible and verify_witness(q, r.witness)

    def test_paper_counterexample_pair(self):
        e = orders_election([(0, 1), (0, 1)], weights=[10, 7], prices=[10, 7], names=("c", "p"))
        for k, want in ((10, True), (9, False)):
            q = BriberyQuery(
                e, PLURALITY, 1, k, priced=True, weighted=True,
                prices_unary=True, weights_unary=True,
            )
            assert solve_plurality_unary_prices(q).feasible is want
            assert solve_plurality_unary_weights(q).feasible is want


class TestApprovalFlip:
    def test_early_accept(self):
        e = Election(
            ("a", "b"),
            (VoterBlock((True, False), flip_prices=(1, 1)),),
            APPROVALS,
        )
        q = BriberyQuery(e, APPROVAL, 1, 2, priced=True, approval_flip=True, prices_unary=True)
        r = solve_approval_flip(q)
        assert r.feasible and verify_witness(q, r.witness)

    def test_strip_rival_cheaply(self):
        # the target holds weight 3; the rival's weight-5 approval flips for 2,
        # while gaining the target new approvals costs more than the budget
        e = Election(
            ("p", "c"),
            (
                VoterBlock((True, False), weight=3, flip_prices=(9, 9)),
                VoterBlock((False, True), weight=5, flip_prices=(9, 2)),
            ),
            APPROVALS,
        )
        q = BriberyQuery(
            e, APPROVAL, 0, 2, priced=True, weighted=True, approval_flip=True, prices_unary=True
        )
        r = solve_approval_flip(q)
        assert r.feasible and verify_witness(q, r.witness)
        assert r.witness.flips == (EntryFlip(1, 1, frozenset({1})),)

    def test_nothing_affordable(self):
        e = Election(
            ("p", "c"),
            (
                VoterBlock((False, True), weight=1, flip_prices=(5, 5)),
            ),
            APPROVALS,
        )
        q = BriberyQuery(
            e, APPROVAL, 0, 1, priced=True, weighted=True, approval_flip=True, prices_unary=True
        )
        assert not solve_approval_flip(q).feasible



class TestScoringSolvers:
    def test_flat_alpha_always_ties(self):
        e = orders_election([(0, 1, 2)] * 2)
        q = BriberyQuery(e, scoring((1, 1, 1)), 2, 0)
        assert solve_scoring_priced(q).feasible

    def test_borda_no_bribes_allowed(self):
        e = orders_election([(0, 1, 2), (0, 1, 2)])
        q = BriberyQuery(e, scoring((2, 1, 0)), 2, 0)
        assert not solve_scoring_priced(q).feasible

    def test_borda_single_rewrite(self):
        e = orders_election([(0, 1, 2)], prices=[1])
        q = BriberyQuery(e, scoring((2, 1, 0)), 2, 1, priced=True)
        r = solve_scoring_priced(q)
        assert r.feasible and verify_witness(q, r.witness)

    def test_m_cap_enforced(self):
        e = orders_election([(0, 1, 2, 3)])
        q = BriberyQuery(e, scoring((1, 1, 1, 0)), 0, 0)
        from bribery.elections import ElectionError

        with pytest.raises(ElectionError):
            solve_scoring_priced(q)

    def test_unary_weights_frozen_example(self):
        # frozen from the oracle: infeasible at budget 1, feasible at 3
        e = orders_election([(0, 1), (0, 1)], weights=[2, 1], prices=[3, 1], names=("c", "p"))
        for k, want in ((1, False), (3, True)):
            q = BriberyQuery(
                e, scoring((1, 0)), 1, k, priced=True, weighted=True, weights_unary=True
            )
            assert solve_scoring_unary_weights(q).feasible is want

    def test_unary_weights_all_top_already(self):
        e = orders_election([(1, 0)] * 3, weights=[1, 2, 3], prices=[2, 2, 2])
        q = BriberyQuery(
            e, scoring((1, 0)), 1, 0, priced=True, weighted=True, weights_unary=True
        )
        r = solve_scoring_unary_weights(q)
        assert r.feasible and r.witness == BriberyWitness()


class TestVeto:
    def test_unvetoed_target(self):
        e = orders_election([(0, 2, 1), (2, 0, 1)])
        assert solve_veto(BriberyQuery(e, VETO, 0, 0)).feasible

    def test_two_vetoes_one_bribe(self):
        # vetoes p,p,a,b: one re-pointed veto levels everyone at one veto
        e = orders_election(
            [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1)], names=("a", "b", "p")
        )
        q = BriberyQuery(e, VETO, 2, 1)
        r = solve_veto(q)
        assert r.feasible and verify_witness(q, r.witness)

    def test_two_candidates_cannot_dodge(self):
        e = orders_election([(0, 1), (0, 1), (0, 1)], names=("a", "p"))
        q = BriberyQuery(e, VETO, 1, 1)
        assert not solve_veto(q).feasible

    def test_unique_mode_moves_between_rivals(self):
        # p and a both unvetoed; uniqueness needs a veto moved onto a
        e = orders_election([(1, 2, 0)] * 2, names=("a", "b", "p"))
        q = BriberyQuery(e, VETO, 2, 1, unique=True)
        r = solve_veto(q)
        assert r.feasible and verify_witness(q, r.witness)


class TestDichotomy:
    @pytest.mark.parametrize(
        "alpha,priced,weighted,unary,want",
        [
            ((1, 0), True, True, False, "NP-complete"),
            ((1, 0, 0), False, True, False, "P"),
            ((2, 1, 0), False, True, False, "NP-complete"),
            ((2, 1, 0), True, False, False, "P"),
            ((5, 5, 5), True, True, False, "P"),
            ((3, 1, 0), True, True, True, "P"),
        ],
    )
    def test_examples(self, alpha, priced, weighted, unary, want):
        verdict = classify_dichotomy(
            alpha, priced=priced, weighted=weighted, weights_unary=unary
        )
        assert verdict.complexity == want


class TestAutoSolverDispatch:
    def test_plurality_variants(self):
        e = orders_election([(0, 1)])
        q = BriberyQuery(e, PLURALITY, 0, 0)
        assert auto_solver(q)[0] == "greedy"
        q = BriberyQuery(e, PLURALITY, 0, 0, priced=True)
        assert auto_solver(q)[0] == "price-sweep"
        q = BriberyQuery(e, PLURALITY, 0, 0, weighted=True)
        assert auto_solver(q)[0] == "weight-sweep"
        q = BriberyQuery(e, PLURALITY, 0, 0, priced=True, weighted=True)
        assert auto_solver(q) is None
        q = BriberyQuery(e, PLURALITY, 0, 0, priced=True, weighted=True, prices_unary=True)
        assert auto_solver(q)[0] == "dp-prices"

    def test_scoring_routes(self):
        e = orders_election([(0, 1, 2)])
        q = BriberyQuery(e, scoring((2, 1, 0)), 0, 0, weighted=True)
        assert auto_solver(q) is None  # intractable cell
        q = BriberyQuery(e, scoring((1, 0, 0)), 0, 0, weighted=True)
        assert auto_solver(q)[0] == "weight-sweep"
        q = BriberyQuery(e, scoring((1, 1, 1)), 0, 0, weighted=True)
        assert auto_solver(q)[0] == "flat-alpha"


SOLVERS_FOR_MONOTONE = [
    ("plurality-basic", solve_plurality_basic),
    ("plurality-priced", solve_plurality_priced),
    ("plurality-weighted", solve_plurality_weighted),
    ("plurality-negative", solve_plurality_negative_priced),
    ("plurality-unary", solve_plurality_unary_prices),
    ("veto", solve_veto),
]


class TestCrossProperties:
    def test_oracle_equivalence_sample(self):
        summary = run_check(seed=20240, instances=45, caps=CheckCaps())
        assert not summary.mismatches

    def test_budget_monotone_and_unique_implies_nonunique(self):
        rng = random.Random(77)
        caps = CheckCaps()
        for family in (
            "plurality-basic",
            "plurality-priced",
            "plurality-weighted",
            "plurality-negative",
            "plurality-unary",
            "approval-flip",
            "veto",
            "scoring-plain",
        ):
            for _ in range(6):
                q, routes = FAMILIES[family](rng, caps)
                name, solver = routes[0]
                res = solver(q)
                bigger = solver(replace(q, budget=q.budget + 1))
                if res.feasible:
                    assert bigger.feasible, (family, q)
                res_u = solver(replace(q, unique=True))
                if res_u.feasible:
                    assert solver(q).feasible, (family, q)
