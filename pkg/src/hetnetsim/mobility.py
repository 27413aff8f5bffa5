"""Two-region probabilistic user mobility and location prediction.

Each user is a two-state Markov chain over {inside hotspot, outside}: per
epoch they leave the hotspot with probability p_exit and enter it with
probability p_enter. Vehicular users move faster; both probabilities are
scaled by a multiplier and clamped to 1. At equilibrium the expected flows
across the hotspot boundary balance, which fixes the stationary occupancy at
p_enter_eff / (p_enter_eff + p_exit_eff).

The location predictor estimates the chance a user currently inside leaves
within a horizon of h epochs as 1 - (1 - p_exit_hat)^h, where p_exit_hat is
the user's observed per-epoch exit frequency once enough in-hotspot epochs
have been seen, and the configured exit probability before that.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

VEHICULAR = "vehicular"
NON_VEHICULAR = "nonvehicular"
MOBILITY_CLASSES = (VEHICULAR, NON_VEHICULAR)

# Estimator: fall back to the configured prior below this many observed
# in-hotspot epochs; keep at most this many region transitions per user.
MIN_EVIDENCE_EPOCHS = 5
HISTORY_CAPACITY = 64


class DegenerateMobilityError(ValueError):
    """Both effective probabilities are zero: no unique equilibrium."""


class OutsideHotspotError(ValueError):
    """Prediction requested for a user that is not inside a hotspot."""


@dataclass(frozen=True)
class MobilityParams:
    p_exit: float
    p_enter: float
    vehicular_multiplier: float = 4.0


@dataclass(frozen=True)
class RegionTransition:
    epoch: int
    from_region: Optional[str]  # hotspot id, None = outside
    to_region: Optional[str]


@dataclass(frozen=True)
class UserState:
    """One user's mobility state; ``region`` is a hotspot id or None.

    ``inside_epochs_observed`` counts epochs the user started inside a
    hotspot (exit opportunities) and ``exits_observed`` how many of those
    ended in an exit; the predictor's empirical exit frequency is their
    ratio. The newest history entry always matches the current region.
    """

    user_id: str
    mobility_class: str
    region: Optional[str]
    home_hotspot: Optional[str] = None
    history: tuple[RegionTransition, ...] = ()
    session_id: Optional[str] = None
    epoch: int = 0
    inside_epochs_observed: int = 0
    exits_observed: int = 0


@dataclass(frozen=True)
class LocationPrediction:
    verdict: str  # "stay" | "leave"
    estimated_leave_probability: float
    evidence_count: int


def initial_user_state(
    user_id: str,
    mobility_class: str,
    region: Optional[str],
    home_hotspot: Optional[str] = None,
    epoch: int = 0,
) -> UserState:
    """Create a user with a seeded history entry for its starting region."""
    return UserState(
        user_id=user_id,
        mobility_class=mobility_class,
        region=region,
        home_hotspot=home_hotspot if home_hotspot is not None else region,
        history=(RegionTransition(epoch, region, region),),
        epoch=epoch,
    )


def effective_probs(params: MobilityParams, mobility_class: str) -> tuple[float, float]:
    """(p_exit_eff, p_enter_eff) for one mobility class, clamped to 1."""
    if mobility_class == VEHICULAR:
        m = params.vehicular_multiplier
        return (min(1.0, m * params.p_exit), min(1.0, m * params.p_enter))
    return (params.p_exit, params.p_enter)


def step_user(state: UserState, params: MobilityParams, draw: float) -> UserState:
    """Advance one user by one epoch using a single uniform draw in [0, 1).

    Inside -> outside iff draw < p_exit_eff; outside -> inside (back into the
    user's hotspot) iff draw < p_enter_eff. Pure: same inputs, same output.
    """
    p_exit_eff, p_enter_eff = effective_probs(params, state.mobility_class)
    epoch = state.epoch + 1
    was_inside = state.region is not None
    inside_obs = state.inside_epochs_observed + (1 if was_inside else 0)
    exits_obs = state.exits_observed

    if was_inside:
        if draw < p_exit_eff:
            new_region = None
            exits_obs += 1
        else:
            new_region = state.region
    else:
        if draw < p_enter_eff:
            if state.home_hotspot is None:
                raise ValueError(
                    f"user {state.user_id} has no hotspot to enter"
                )
            new_region = state.home_hotspot
        else:
            new_region = None

    if new_region == state.region:
        return replace(
            state,
            epoch=epoch,
            inside_epochs_observed=inside_obs,
            exits_observed=exits_obs,
        )
    entry = RegionTransition(epoch, state.region, new_region)
    history = (state.history + (entry,))[-HISTORY_CAPACITY:]
    return replace(
        state,
        region=new_region,
        history=history,
        epoch=epoch,
        inside_epochs_observed=inside_obs,
        exits_observed=exits_obs,
    )


def step_population(
    inside: np.ndarray,
    p_exit_eff: np.ndarray,
    p_enter_eff: np.ndarray,
    draws: np.ndarray,
) -> np.ndarray:
    """Array form of step_user over a population; returns the new inside mask.

    Element i applies exactly the step_user threshold rule with draw
    ``draws[i]`` and the per-user effective probabilities.
    """
    exits = inside & (draws < p_exit_eff)
    entries = ~inside & (draws < p_enter_eff)
    return (inside & ~exits) | entries


def stationary_occupancy(params: MobilityParams, mobility_class: str) -> float:
    """Equilibrium probability of being inside the hotspot.

    The unique stationary distribution of the two-state chain: boundary flows
    balance when occupancy = p_enter_eff / (p_enter_eff + p_exit_eff).
    """
    p_exit_eff, p_enter_eff = effective_probs(params, mobility_class)
    total = p_exit_eff + p_enter_eff
    if total == 0.0:
        raise DegenerateMobilityError(
            "p_exit and p_enter are both zero; occupancy is not unique"
        )
    return p_enter_eff / total


def leave_probability(p_exit_hat: float, horizon: int) -> float:
    """Chance of at least one exit within ``horizon`` epochs."""
    return 1.0 - (1.0 - p_exit_hat) ** horizon


def predict_location(
    state: UserState,
    remaining_epochs: int,
    params: MobilityParams,
    min_evidence: int = MIN_EVIDENCE_EPOCHS,
) -> LocationPrediction:
    """Predict whether an in-hotspot user stays for the rest of its session.

    Verdict is "leave" only when the estimated leave probability strictly
    exceeds 0.5; a tie predicts "stay" so neutral evidence never triggers a
    handover.
    """
    if state.region is None:
        raise OutsideHotspotError(f"user {state.user_id} is outside any hotspot")
    if remaining_epochs < 1:
        raise ValueError("remaining_epochs must be >= 1")
    evidence = state.inside_epochs_observed
    if evidence >= min_evidence:
        p_exit_hat = state.exits_observed / evidence
    else:
        p_exit_hat, _ = effective_probs(params, state.mobility_class)
    prob = leave_probability(p_exit_hat, remaining_epochs)
    verdict = "leave" if prob > 0.5 else "stay"
    return LocationPrediction(
        verdict=verdict, estimated_leave_probability=prob, evidence_count=evidence
    )
