"""Proportional veto core: polynomial-time computation, core-selecting rules,
pessimist manipulation, and Impartial Culture simulations."""

from .flowsolver import UNBOUNDED, FlowNetwork, FlowResult, InternalLimitError, max_flow
from .manipulation import (
    ManipulationOutcome,
    blocked_with_top_set,
    brute_force_manipulation,
    find_pessimist_manipulation,
)
from .montecarlo import SimulationResult, SimulationSpec, render_table, run_simulation, sample_ic_profile
from .prefmodel import Ballot, Candidate, Profile, ProfileParseError, parse_profile, serialize_profile, veto_power
from .rules import ConsumptionTrace, TokenOrder, consumption_trace_render, consumption_winners, tokens_winners
from .vetocore import (
    BlockingCertificate,
    VetoCoefficients,
    blocking_certificate,
    brute_force_core,
    compute_coefficients,
    compute_core,
    is_blocked,
    lemma1_check,
)

__version__ = "0.1.0"
