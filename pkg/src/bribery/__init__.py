"""Election bribery solvers, hardness-reduction generators, and oracles."""

from .elections import (
    APPROVAL,
    APPROVALS,
    DODGSON,
    KEMENY,
    ORDERS,
    PLURALITY,
    VETO,
    YOUNG,
    Election,
    ElectionError,
    Rule,
    VoterBlock,
    agree,
    condorcet_winner,
    dodgson_score,
    kapproval,
    kemeny_winners,
    score_table,
    scoring,
    switches,
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
    witness_cost,
)
from .oracle import (
    OracleBudget,
    OracleCapError,
    oracle_bribery,
    oracle_manipulation,
    verify_witness,
)
from .solvers import DichotomyVerdict, NoSolverError, auto_solver, classify_dichotomy
