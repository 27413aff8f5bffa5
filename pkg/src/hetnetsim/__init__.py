"""Deterministic simulator for RAT selection and vertical handover in
heterogeneous wireless access networks (cellular + WLAN hotspots).

The pipeline: a two-region Markov mobility model with an empirical location
predictor, a fuzzy multi-criteria engine scoring candidate networks over
cost, bandwidth, signal strength, user priority and delay, a deterministic
RAT decision table with WLAN-to-cellular capacity fallback, and a
hysteresis-gated handover evaluator, all driven by a seeded discrete-event
loop that reports handover attempts, success rate, per-site signalling load,
blocking and occupancy KPIs.
"""

from .engine import (
    ActiveSession,
    RunResult,
    UnknownParameterError,
    audit_attempts,
    run,
    set_parameter,
    sweep,
    sweep_replay,
    verify_offline,
)
from .events import EventLogError, EventRecord, read_events_csv, write_events_csv
from .fuzzy import (
    CriteriaVector,
    FuzzyConfig,
    FuzzyConfigError,
    FuzzifiedVector,
    MembershipFunction,
    default_fuzzy_config,
    fuzzify,
    membership,
    rank_networks,
    score_network,
)
from .jrrm import (
    AdmissionResult,
    Attempt,
    CellOccupancy,
    HandoverOutcome,
    HysteresisConfig,
    MissingPredictionError,
    RatDecision,
    UnknownCellError,
    UserContext,
    admit,
    evaluate_handover,
    execute_handover,
    replay_attempts,
    select_rat,
)
from .kpi import (
    KpiReport,
    RunMeta,
    collect_kpis,
    collect_kpis_meta,
    kpi_from_json,
    kpi_to_json,
    meta_from_scenario,
)
from .mobility import (
    DegenerateMobilityError,
    LocationPrediction,
    MobilityParams,
    OutsideHotspotError,
    RegionTransition,
    UserState,
    effective_probs,
    initial_user_state,
    leave_probability,
    predict_location,
    stationary_occupancy,
    step_population,
    step_user,
)
from .scenario import (
    Cell,
    CellCriteria,
    Hotspot,
    PopulationSpec,
    Scenario,
    ScenarioError,
    ScenarioSchemaError,
    ScenarioSyntaxError,
    ScenarioValidationError,
    SignallingCostModel,
    Site,
    Violation,
    WorkloadSpec,
    apply_preset,
    parse_scenario,
    scenario_to_dict,
    serialize_scenario,
    validate_scenario,
)

__version__ = "0.1.0"
