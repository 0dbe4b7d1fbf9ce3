"""
Copyright 2024 binary butterfly GmbH
Use of this source code is governed by an MIT-style license that can be found in the LICENSE.txt.
"""

import math
from typing import Optional

from common.models import JointDecodingReport, OptimalSetting, RandomnessReport
from sqrac.optimizer import optimize
from sqrac.protocol import (
    BITS,
    ProtocolParams,
    alice_observable,
    bob_observable,
    charlie_observable,
    p_ab_closed,
    p_abc,
    p_ac_closed,
    rho_ac,
    sharpness_from_theta_lambda,
    sign,
)
from sqrac.qcore import TwoQubitState, max_entangled_state, tensor

TSIRELSON_BOUND = 2 * math.sqrt(2)


def chsh_values(params: ProtocolParams, rho_ab: Optional[TwoQubitState] = None) -> tuple[float, float]:
    """
    CHSH values of the Alice-Bob and Alice-Charlie correlations. Bob's observable is the unsharp M_0 - M_1, Charlie sees
    the state left behind by Bob's non-selective measurement.
    """
    state = rho_ab or max_entangled_state()
    channel_state = rho_ac(state, params)

    i_ab = 0.0
    i_ac = 0.0
    for x in BITS:
        alice = alice_observable(x).direction.sigma()
        for y in BITS:
            bob = bob_observable(y, params)
            i_ab += sign(x * y) * state.expectation(tensor(alice, bob.povm(0) - bob.povm(1)))
            charlie = charlie_observable(y, params).direction.sigma()
            i_ac += sign(x * y) * channel_state.expectation(tensor(alice, charlie))
    return i_ab, i_ac


def chsh_closed(params: ProtocolParams) -> tuple[float, float]:
    # both CHSH values are affine in the decoding success: I = 8 P - 4
    return 8 * p_ab_closed(params) - 4, 8 * p_ac_closed(params) - 4


def min_entropy(chsh_value: float) -> float:
    radicand = max(0.0, 2 - chsh_value**2 / 4)
    return max(0.0, 1 - math.log2(1 + math.sqrt(radicand)))


def randomness_report(i_ab: float, i_ac: float) -> RandomnessReport:
    return RandomnessReport(i_ab=i_ab, i_ac=i_ac, hmin_ab=min_entropy(i_ab), hmin_ac=min_entropy(i_ac))


def randomness(params: ProtocolParams) -> RandomnessReport:
    return randomness_report(*chsh_values(params))


def total_min_entropy_sweep(theta_lambdas: list[float]) -> list[tuple[float, float, RandomnessReport]]:
    """
    Certified randomness along the equal-sharpness line with mutually unbiased measurements, one entry
    (theta_lambda, eta, report) per wave plate angle in radians.
    """
    sweep = []
    for theta_lambda in theta_lambdas:
        eta = sharpness_from_theta_lambda(theta_lambda)
        sweep.append((theta_lambda, eta, randomness_report(*chsh_closed(ProtocolParams.unbiased(eta, eta)))))
    return sweep


def joint_decoding_comparison(eta0: float, eta1: float, setting: Optional[OptimalSetting] = None) -> JointDecodingReport:
    """
    Joint success of both decoders at unbiased angles against the maximin optimal ones. An already optimized setting
    for the same sharpness pair can be passed in.
    """
    if setting is None:
        setting = optimize(eta0, eta1)
    return JointDecodingReport(
        eta0=eta0,
        eta1=eta1,
        alpha=setting.alpha,
        beta=setting.beta,
        p_abc_unbiased=p_abc(ProtocolParams.unbiased(eta0, eta1)),
        p_abc_optimized=p_abc(ProtocolParams(eta0=eta0, eta1=eta1, alpha=setting.alpha, beta=setting.beta)),
    )
