"""
Copyright 2024 binary butterfly GmbH
Use of this source code is governed by an MIT-style license that can be found in the LICENSE.txt.
"""

import math

from scipy.optimize import brentq

from common.exceptions import UndefinedBoundException
from common.models import Bound, BoundsReport
from sqrac.optimizer import best_beta
from sqrac.protocol import BITS, ProtocolParams, bob_direction, charlie_conditional_vector, p_ac_formula
from sqrac.qcore import BlochVector

ROOT_TOLERANCE = 1e-10
# observed values this close to the attainable maximum count as tangent to it
TANGENT_TOLERANCE = 1e-9


def _clamp(value: float, low: float, high: float) -> Bound:
    if value < low:
        return Bound(value=low, clamped=True)
    if value > high:
        return Bound(value=high, clamped=True)
    return Bound(value=value)


def sharpness_bounds(p_ab: float, p_ac: float) -> tuple[Bound, Bound]:
    eta_low = _clamp(math.sqrt(2) * (2 * p_ab - 1), 0.0, 1.0)

    radicand = (2 + math.sqrt(2) - 4 * p_ac) * (2 * p_ac - 1)
    if radicand < 0:
        eta_up = Bound(value=0.0, clamped=True)
    else:
        eta_up = _clamp(2 * math.sqrt(radicand), 0.0, 1.0)
    return eta_low, eta_up


def bob_biasness_upper(p_ab: float, eta0: float, eta1: float) -> Bound:
    """
    Upper bound on |s0·s1| for Bob's two measurement directions.
    """
    if eta0 + eta1 <= 0:
        raise UndefinedBoundException(uid='s_up', message='sharpness sum vanishes')
    ratio = (8 * p_ab - 4) / (eta0 + eta1)
    radicand = 2 - ratio**2
    clamped = radicand < 0
    bound = _clamp(ratio * math.sqrt(max(0.0, radicand)), 0.0, 1.0)
    return Bound(value=bound.value, clamped=clamped or bound.clamped)


def charlie_biasness_upper(p_ac: float, eta0: float, eta1: float, s_up: float) -> Bound:
    """
    Upper bound on |t0·t1|: Bob's angle is fixed by the biasness bound, then Charlie's angle is the smallest beta
    reproducing the observed P_AC. If no beta reaches the observation, the closest endpoint is used and flagged.
    """
    alpha = math.acos(min(max(s_up, 0.0), 1.0)) / 2

    def residual(beta: float) -> float:
        return float(p_ac_formula(eta0, eta1, alpha, beta)) - p_ac

    peak = best_beta(alpha, eta0, eta1)
    clamped = False
    if residual(peak) <= 0:
        beta = peak
        clamped = residual(peak) < -TANGENT_TOLERANCE
    elif residual(0.0) >= 0:
        beta = 0.0
        clamped = residual(0.0) > TANGENT_TOLERANCE
    else:
        beta = brentq(residual, 0.0, peak, xtol=ROOT_TOLERANCE)

    bound = _clamp(math.cos(2 * beta), 0.0, 1.0)
    return Bound(value=bound.value, clamped=clamped or bound.clamped)


def conditional_state_distance(params: ProtocolParams) -> float:
    """
    Largest distance between Charlie's conditional Bloch vectors for the two outcomes of one Alice setting.
    """
    distances = []
    for x in BITS:
        difference = charlie_conditional_vector(params, x, 0) - charlie_conditional_vector(params, x, 1)
        distances.append(difference.norm)
    return max(distances)


def incompatibility_bounds(p_ab: float, p_ac: float, params: ProtocolParams) -> tuple[Bound, Bound]:
    distance = conditional_state_distance(params)
    if distance <= 0:
        raise UndefinedBoundException(uid='d_t_low', message='conditional states of Charlie coincide')
    return _clamp(8 * p_ab - 6, 0.0, 2.0), _clamp((16 * p_ac - 8) / distance - 2, 0.0, 2.0)


def incompatibility_degree(eta0: float, eta1: float, s0: BlochVector, s1: BlochVector) -> float:
    return (s0.scaled(eta0) + s1.scaled(eta1)).norm + (s0.scaled(eta0) - s1.scaled(eta1)).norm


def p_ab_upper_bound(eta0: float, eta1: float, overlap: float) -> float:
    """
    Largest P_AB reachable with sharpness eta0, eta1 and direction overlap s0·s1, whatever the state.
    """
    mu = 2 * (eta0**2 + eta1**2)
    nu = 4 * eta0 * eta1 * overlap
    return 0.5 + (math.sqrt(max(0.0, 2 * mu + 2 * nu)) + math.sqrt(max(0.0, 2 * mu - 2 * nu))) / 16


def certify(p_ab: float, p_ac: float, params: ProtocolParams) -> BoundsReport:
    """
    All bounds for one observed (P_AB, P_AC) pair. Sharpness values are taken from the nominal setting, which also fixes
    Charlie's conditional-state distance.
    """
    eta_low, eta_up = sharpness_bounds(p_ab, p_ac)
    s_up = bob_biasness_upper(p_ab, params.eta0, params.eta1)
    t_up = charlie_biasness_upper(p_ac, params.eta0, params.eta1, s_up.value)
    d_s_low, d_t_low = incompatibility_bounds(p_ab, p_ac, params)

    bounds = {
        'eta_low': eta_low,
        'eta_up': eta_up,
        's_up': s_up,
        't_up': t_up,
        'd_s_low': d_s_low,
        'd_t_low': d_t_low,
    }
    return BoundsReport(
        **{key: bound.value for key, bound in bounds.items()},
        m=conditional_state_distance(params),
        d_s_nominal=incompatibility_degree(params.eta0, params.eta1, bob_direction(0, params.alpha), bob_direction(1, params.alpha)),
        p_ab_max=p_ab_upper_bound(params.eta0, params.eta1, math.cos(2 * params.alpha)),
        clamped=[key for key, bound in bounds.items() if bound.clamped],
    )

