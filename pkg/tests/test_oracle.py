import itertools

import pytest

from bribery.elections import (
    APPROVAL,
    APPROVALS,
    DODGSON,
    Election,
    ORDERS,
    PLURALITY,
    VoterBlock,
    scoring,
)
from bribery.model import (
    BriberyQuery,
    BriberyWitness,
    EntryFlip,
    ManipulationQuery,
    QueryError,
    Rewrite,
    apply_witness,
    witness_cost,
)
from bribery.oracle import (
    OracleBudget,
    OracleCapError,
    enumerate_feasible_witnesses,
    oracle_bribery,
    oracle_manipulation,
    oracle_score_bribery,
    verify_witness,
)


def orders_election(ballots, weights=None, prices=None, mults=None, names=None):
    m = len(ballots[0])
    names = names or tuple(f"c{i}" for i in range(m))
    voters = tuple(
        VoterBlock(
            tuple(b),
            price=1 if prices is None else prices[i],
            weight=1 if weights is None else weights[i],
            multiplicity=1 if mults is None else mults[i],
        )
        for i, b in enumerate(ballots)
    )
    return Election(names, voters, ORDERS)


class TestQueryValidation:
    def test_negative_requires_plurality(self):
        e = orders_election([(0, 1)])
        with pytest.raises(QueryError):
            BriberyQuery(e, scoring((1, 0)), 0, 0, negative=True)

    def test_unpriced_requires_unit_prices(self):
        e = orders_election([(0, 1)], prices=[3])
        with pytest.raises(QueryError):
            BriberyQuery(e, PLURALITY, 0, 0)

    def test_flip_requires_approval(self):
        e = orders_election([(0, 1)])
        with pytest.raises(QueryError):
            BriberyQuery(e, PLURALITY, 0, 0, approval_flip=True)

    def test_priced_flip_needs_entry_prices(self):
        e = Election(("a", "b"), (VoterBlock((True, False)),), APPROVALS)
        with pytest.raises(QueryError):
            BriberyQuery(e, APPROVAL, 0, 0, priced=True, approval_flip=True)


class TestWitnessMechanics:
    def test_cost_counts_voters_when_unpriced(self):
        e = orders_election([(0, 1)], mults=[3])
        q = BriberyQuery(e, PLURALITY, 1, 5)
        w = BriberyWitness(rewrites=(Rewrite(0, 2, (1, 0)),))
        assert witness_cost(q, w) == 2
        bribed = apply_witness(q, w)
        assert sorted((v.ballot, v.multiplicity) for v in bribed.voters) == [
            ((0, 1), 1),
            ((1, 0), 2),
        ]

    def test_flip_cost_uses_entry_prices(self):
        e = Election(
            ("a", "b"), (VoterBlock((True, False), flip_prices=(4, 9)),), APPROVALS
        )
        q = BriberyQuery(e, APPROVAL, 0, 20, priced=True, approval_flip=True)
        w = BriberyWitness(flips=(EntryFlip(0, 1, frozenset({0, 1})),))
        assert witness_cost(q, w) == 13
        assert apply_witness(q, w).voters[0].ballot == (False, True)

    def test_overbribed_block_rejected(self):
        e = orders_election([(0, 1)])
        q = BriberyQuery(e, PLURALITY, 1, 5)
        w = BriberyWitness(rewrites=(Rewrite(0, 2, (1, 0)),))
        with pytest.raises(QueryError):
            witness_cost(q, w)

    def test_bad_block_index_rejected(self):
        e = orders_election([(0, 1)])
        q = BriberyQuery(e, PLURALITY, 1, 5)
        with pytest.raises(QueryError):
            verify_witness(q, BriberyWitness(rewrites=(Rewrite(3, 1, (1, 0)),)))


class TestVerifyWitness:
    def test_empty_witness_when_winning(self):
        e = orders_election([(0, 1)])
        q = BriberyQuery(e, PLURALITY, 0, 0)
        assert verify_witness(q, BriberyWitness())

    def test_budget_overrun_fails(self):
        e = orders_election([(0, 1), (0, 1)])
        q = BriberyQuery(e, PLURALITY, 1, 1)
        w = BriberyWitness(rewrites=(Rewrite(0, 1, (1, 0)), Rewrite(1, 1, (1, 0))))
        assert not verify_witness(q, w)

    def test_negative_witness_cannot_top_target(self):
        e = orders_election([(0, 1, 2), (0, 1, 2), (1, 0, 2)])
        q = BriberyQuery(e, PLURALITY, 2, 2, negative=True)
        w = BriberyWitness(rewrites=(Rewrite(0, 1, (2, 0, 1)),))
        assert not verify_witness(q, w)

    def test_unique_mode_needs_sole_winner(self):
        e = orders_election([(0, 1), (1, 0)])
        q = BriberyQuery(e, PLURALITY, 0, 0, unique=True)
        assert not verify_witness(q, BriberyWitness())


class TestOracleBribery:
    def test_zero_budget_is_winner_test(self):
        e = orders_election([(0, 1), (1, 0), (1, 0)])
        assert not oracle_bribery(BriberyQuery(e, PLURALITY, 0, 0)).feasible
        assert oracle_bribery(BriberyQuery(e, PLURALITY, 1, 0)).feasible

    def test_minimal_witness_returned(self):
        e = orders_election([(0, 1), (0, 1), (1, 0)], prices=[5, 1, 1])
        q = BriberyQuery(e, PLURALITY, 1, 10, priced=True)
        r = oracle_bribery(q)
        assert r.feasible and witness_cost(q, r.witness) == 1
        # no cheaper witness verifies
        for cost, w in [(0, BriberyWitness())]:
            assert not verify_witness(q, w) or cost >= 1

    def test_answer_invariant_under_permutation_and_splitting(self):
        ballots = [(0, 1, 2), (1, 0, 2), (1, 0, 2), (2, 1, 0)]
        e = orders_election(ballots, weights=[2, 1, 1, 3])
        merged = Election(
            e.candidates,
            (
                VoterBlock((0, 1, 2), weight=2),
                VoterBlock((1, 0, 2), weight=1, multiplicity=2),
                VoterBlock((2, 1, 0), weight=3),
            ),
            ORDERS,
        )
        for k in range(3):
            for unique in (False, True):
                verdicts = set()
                for variant in (e, Election(e.candidates, tuple(reversed(e.voters)), ORDERS), merged):
                    q = BriberyQuery(variant, PLURALITY, 0, k, weighted=True, unique=unique)
                    verdicts.add(oracle_bribery(q).feasible)
                assert len(verdicts) == 1

    def test_cap_errors(self):
        e = orders_election([(0, 1)] * 3)
        q = BriberyQuery(e, PLURALITY, 0, 1)
        with pytest.raises(OracleCapError):
            oracle_bribery(q, OracleBudget(max_voters=2))

    def test_partition_reduced_instance(self):
        # weights/prices (1,1,2), budget 2: {2} or {1,1} reach exactly half
        e = orders_election([(1, 0)] * 3, weights=[1, 1, 2], prices=[1, 1, 2], names=("p", "c"))
        q = BriberyQuery(e, PLURALITY, 0, 2, priced=True, weighted=True)
        assert oracle_bribery(q).feasible

    def test_makechange_negative_instance(self):
        def top(i):
            return tuple([i] + [c for c in range(5) if c != i])

        e = Election(
            ("Big", "p", "MakeChange", "SmallOne", "SmallTwo"),
            (
                VoterBlock(top(0), weight=10),
                VoterBlock(top(0), weight=2),
                VoterBlock(top(1), weight=10),
                VoterBlock(top(2), weight=1, multiplicity=10),
                VoterBlock(top(3), weight=9),
                VoterBlock(top(4), weight=9),
            ),
            ORDERS,
        )
        q = BriberyQuery(e, PLURALITY, 1, 3, weighted=True, negative=True)
        r = oracle_bribery(q)
        assert r.feasible
        witnesses = list(enumerate_feasible_witnesses(q))
        assert witnesses
        for w in witnesses:
            involved = any(
                e.voters[mv.block].ballot[0] == 2 or mv.ballot[0] == 2 for mv in w.rewrites
            )
            assert involved


class TestOracleManipulation:
    def test_no_manipulators_is_winner_test(self):
        e = orders_election([(0, 1)])
        assert oracle_manipulation(ManipulationQuery(e, PLURALITY, (), 0))[0]
        assert not oracle_manipulation(ManipulationQuery(e, PLURALITY, (), 1))[0]

    def test_approval_coalition_approves_target_only(self):
        e = Election(
            ("a", "b"), (VoterBlock((True, False)), VoterBlock((True, False))), APPROVALS
        )
        mq = ManipulationQuery(e, APPROVAL, (1, 1), 1)
        feasible, ballots = oracle_manipulation(mq)
        assert feasible
        assert any(b == (False, True) for _, b in ballots)

    def test_borda_single_manipulator(self):
        e = orders_election([(0, 1, 2)])
        mq = ManipulationQuery(e, scoring((2, 1, 0)), (1,), 2)
        assert oracle_manipulation(mq)[0]
        assert not oracle_manipulation(ManipulationQuery(e, scoring((2, 1, 0)), (1,), 2, unique=True))[0]


class TestOracleScoreBribery:
    def test_cycle_score_targets(self):
        cyc = orders_election([(0, 1, 2), (1, 2, 0), (2, 0, 1)])
        q = BriberyQuery(cyc, DODGSON, 0, 0)
        assert oracle_score_bribery(q, 1).feasible
        assert not oracle_score_bribery(q, 0).feasible
        q1 = BriberyQuery(cyc, DODGSON, 0, 1)
        assert oracle_score_bribery(q1, 0).feasible
