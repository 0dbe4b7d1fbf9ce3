"""
Copyright 2024 binary butterfly GmbH
Use of this source code is governed by an MIT-style license that can be found in the LICENSE.txt.
"""

import math
from dataclasses import dataclass, replace
from itertools import product
from typing import Optional

import numpy as np

from common.exceptions import InvalidParameterException
from common.models import Branch, SuccessReport
from sqrac.qcore import (
    IDENTITY,
    STATE_TOLERANCE,
    BlochVector,
    TwoQubitState,
    bloch_vector,
    dagger,
    max_entangled_state,
    partial_trace,
    pauli_expand,
    tensor,
)

BITS = (0, 1)
QUARTER_PI = math.pi / 4
MAX_THETA_LAMBDA = math.pi / 8


def sign(bit: int) -> int:
    return 1 - 2 * bit


@dataclass(frozen=True)
class ProtocolParams:
    eta0: float
    eta1: float
    alpha: float
    beta: float

    def __post_init__(self):
        for name in ('eta0', 'eta1'):
            value = getattr(self, name)
            if not -STATE_TOLERANCE <= value <= 1 + STATE_TOLERANCE:
                raise InvalidParameterException(uid=name, message=f'sharpness {value} outside [0, 1]')
        for name in ('alpha', 'beta'):
            value = getattr(self, name)
            if not -STATE_TOLERANCE <= value <= QUARTER_PI + STATE_TOLERANCE:
                raise InvalidParameterException(uid=name, message=f'angle {value} outside [0, pi/4]')

    @classmethod
    def unbiased(cls, eta0: float, eta1: float) -> 'ProtocolParams':
        return cls(eta0=eta0, eta1=eta1, alpha=QUARTER_PI, beta=QUARTER_PI)

    def sharpness(self, y: int) -> float:
        return self.eta1 if y else self.eta0

    def with_angles(self, alpha: float, beta: float) -> 'ProtocolParams':
        return replace(self, alpha=alpha, beta=beta)


@dataclass(frozen=True, eq=False)
class KrausPair:
    k0: np.ndarray
    k1: np.ndarray

    def __post_init__(self):
        completeness = dagger(self.k0) @ self.k0 + dagger(self.k1) @ self.k1
        if not np.allclose(completeness, IDENTITY, rtol=0, atol=STATE_TOLERANCE):
            raise InvalidParameterException(uid='kraus', message='operators are not complete')

    def operator(self, outcome: int) -> np.ndarray:
        return self.k1 if outcome else self.k0

    def apply_to_second(self, matrix: np.ndarray) -> np.ndarray:
        """
        Non-selective measurement on the second qubit of a two-qubit operator.
        """
        result = np.zeros((4, 4), dtype=complex)
        for kraus in (self.k0, self.k1):
            lifted = tensor(IDENTITY, kraus)
            result += lifted @ matrix @ dagger(lifted)
        return result


@dataclass(frozen=True)
class QubitObservable:
    """
    Dichotomic qubit measurement along `direction` with POVM elements (I ± sharpness · direction·σ)/2.
    """

    direction: BlochVector
    sharpness: float = 1.0

    def __post_init__(self):
        if abs(self.direction.norm - 1) > STATE_TOLERANCE:
            raise InvalidParameterException(uid='direction', message=f'norm {self.direction.norm} is not 1')
        if not -STATE_TOLERANCE <= self.sharpness <= 1 + STATE_TOLERANCE:
            raise InvalidParameterException(uid='sharpness', message=f'sharpness {self.sharpness} outside [0, 1]')

    def projector(self, outcome: int) -> np.ndarray:
        return pauli_expand(self.direction.scaled(sign(outcome)))

    def povm(self, outcome: int) -> np.ndarray:
        return (IDENTITY + sign(outcome) * self.sharpness * self.direction.sigma()) / 2

    def kraus(self, outcome: int) -> np.ndarray:
        sharpness = min(max(self.sharpness, 0.0), 1.0)
        strong = math.sqrt((1 + sharpness) / 2)
        weak = math.sqrt((1 - sharpness) / 2)
        if outcome:
            strong, weak = weak, strong
        return strong * self.projector(0) + weak * self.projector(1)

    def kraus_pair(self) -> KrausPair:
        return KrausPair(k0=self.kraus(0), k1=self.kraus(1))


def sharpness_from_theta_lambda(theta_lambda: float) -> float:
    if not -STATE_TOLERANCE <= theta_lambda <= MAX_THETA_LAMBDA + STATE_TOLERANCE:
        raise InvalidParameterException(
            uid='theta_lambda',
            message=f'wave plate angle {math.degrees(theta_lambda):.4f} deg outside [0, 22.5] deg',
        )
    return math.cos(4 * theta_lambda)


def theta_lambda_from_sharpness(sharpness: float) -> float:
    return math.acos(min(max(sharpness, -1.0), 1.0)) / 4


def wave_plate_angle(vector: BlochVector) -> float:
    """
    Half-wave plate angle turning H polarisation into the pure state with Bloch vector `vector`, with σ3 = H/V and
    σ1 = D/A. Only states in the x-z plane are reachable.
    """
    if abs(vector.y) > STATE_TOLERANCE:
        raise InvalidParameterException(uid='wave_plate', message='vector leaves the x-z plane')
    angle = math.atan2(vector.x, vector.z) / 4
    # plate angles repeat every 90 degrees, report them in (-45, 45]
    if angle <= -QUARTER_PI + STATE_TOLERANCE:
        angle += 2 * QUARTER_PI
    return angle


# Alice


def alice_direction(x: int) -> BlochVector:
    return BlochVector(x=0.0, y=0.0, z=1.0) if x else BlochVector(x=1.0, y=0.0, z=0.0)


def alice_observable(x: int) -> QubitObservable:
    return QubitObservable(direction=alice_direction(x))


def alice_povm(x: int, a: int) -> np.ndarray:
    return alice_observable(x).projector(a)


def alice_encoding_vector(x0: int, x1: int, a: int) -> BlochVector:
    """
    Bloch vector of Bob's qubit after Alice measured setting x0 ⊕ x1 with outcome a on the shared Bell state.
    """
    return alice_direction(x0 ^ x1).scaled(sign(a))


# Bob


def bob_direction(y: int, alpha: float) -> BlochVector:
    return BlochVector(x=math.cos(alpha), y=0.0, z=sign(y) * math.sin(alpha))


def bob_observable(y: int, params: ProtocolParams) -> QubitObservable:
    return QubitObservable(direction=bob_direction(y, params.alpha), sharpness=params.sharpness(y))


def bob_kraus(y: int, b: int, alpha: float, theta_lambda: float) -> np.ndarray:
    """
    K_0 = cos 2θ |φ><φ| + sin 2θ |φ⊥><φ⊥|, K_1 swaps the two coefficients on the same eigenbasis.
    """
    sharpness_from_theta_lambda(theta_lambda)
    observable = QubitObservable(direction=bob_direction(y, alpha))
    first, second = math.cos(2 * theta_lambda), math.sin(2 * theta_lambda)
    if b:
        first, second = second, first
    return first * observable.projector(0) + second * observable.projector(1)


# Charlie


def charlie_direction(z: int, beta: float) -> BlochVector:
    return BlochVector(x=math.cos(beta), y=0.0, z=sign(z) * math.sin(beta))


def charlie_observable(z: int, params: ProtocolParams) -> QubitObservable:
    return QubitObservable(direction=charlie_direction(z, params.beta))


def charlie_povm(z: int, c: int, beta: float) -> np.ndarray:
    return QubitObservable(direction=charlie_direction(z, beta)).projector(c)


def rho_ac(rho_ab: TwoQubitState, params: ProtocolParams) -> TwoQubitState:
    matrix = np.zeros((4, 4), dtype=complex)
    for y in BITS:
        matrix += bob_observable(y, params).kraus_pair().apply_to_second(rho_ab.matrix) / 2
    # rounding can leave a residual anti-hermitian part of order 1e-17
    return TwoQubitState(matrix=(matrix + dagger(matrix)) / 2)


def charlie_conditional_vector(params: ProtocolParams, x: int, a: int, rho_ab: Optional[TwoQubitState] = None) -> BlochVector:
    state = rho_ac(rho_ab or max_entangled_state(), params)
    conditioned = partial_trace(tensor(alice_povm(x, a), IDENTITY) @ state.matrix, keep=1)
    return bloch_vector(conditioned)


def charlie_conditional_vector_closed(params: ProtocolParams, x: int, a: int) -> BlochVector:
    transverse = transverse_sum(params.eta0, params.eta1)
    cos_2alpha, sin_2alpha = math.cos(2 * params.alpha), math.sin(2 * params.alpha)
    skew = (math.sqrt(max(0.0, 1 - params.eta1**2)) - math.sqrt(max(0.0, 1 - params.eta0**2))) / 4 * sin_2alpha
    if x:
        vector = BlochVector(x=skew, y=0.0, z=((2 + transverse) - (2 - transverse) * cos_2alpha) / 4)
    else:
        vector = BlochVector(x=((2 + transverse) + (2 - transverse) * cos_2alpha) / 4, y=0.0, z=skew)
    return vector.scaled(sign(a))


# success probabilities, brute force


def decoded_bit(x0: int, a: int, outcome: int) -> int:
    """
    Decoder guess m1 ⊕ outcome, where m1 = x0 ⊕ a is Alice's classical message.
    """
    return x0 ^ a ^ outcome


def _bob_success(params: ProtocolParams, state: TwoQubitState, target: int) -> float:
    total = 0.0
    observable = bob_observable(target, params)
    for x0, x1, a, b in product(BITS, repeat=4):
        if decoded_bit(x0, a, b) != (x0, x1)[target]:
            continue
        total += state.expectation(tensor(alice_povm(x0 ^ x1, a), observable.povm(b)))
    return total / 4


def _charlie_success(params: ProtocolParams, state: TwoQubitState, target: int) -> float:
    total = 0.0
    for x0, x1, a, c in product(BITS, repeat=4):
        if decoded_bit(x0, a, c) != (x0, x1)[target]:
            continue
        total += state.expectation(tensor(alice_povm(x0 ^ x1, a), charlie_povm(target, c, params.beta)))
    return total / 4


def p_ab_bruteforce(params: ProtocolParams, rho_ab: Optional[TwoQubitState] = None) -> float:
    state = rho_ab or max_entangled_state()
    return sum(_bob_success(params, state, y) for y in BITS) / 2


def p_ac_bruteforce(params: ProtocolParams, rho_ab: Optional[TwoQubitState] = None) -> float:
    state = rho_ac(rho_ab or max_entangled_state(), params)
    return sum(_charlie_success(params, state, z) for z in BITS) / 2


def per_bit_success(params: ProtocolParams, rho_ab: Optional[TwoQubitState] = None) -> dict[str, float]:
    state = rho_ab or max_entangled_state()
    channel_state = rho_ac(state, params)
    return {
        'p_ab_x0': _bob_success(params, state, 0),
        'p_ab_x1': _bob_success(params, state, 1),
        'p_ac_x0': _charlie_success(params, channel_state, 0),
        'p_ac_x1': _charlie_success(params, channel_state, 1),
    }


def outcome_probability(
    params: ProtocolParams,
    x: int,
    y: int,
    z: int,
    a: int,
    b: int,
    c: int,
    rho_ab: Optional[TwoQubitState] = None,
) -> float:
    """
    Probability of outcomes (a, b, c) when Alice measures x, Bob measures y non-destructively and Charlie measures z
    on Bob's post-measurement qubit.
    """
    state = rho_ab or max_entangled_state()
    kraus = bob_observable(y, params).kraus(b)
    effect = dagger(kraus) @ charlie_povm(z, c, params.beta) @ kraus
    return state.expectation(tensor(alice_povm(x, a), effect))


def p_abc_bruteforce(params: ProtocolParams, rho_ab: Optional[TwoQubitState] = None) -> float:
    state = rho_ab or max_entangled_state()
    total = 0.0
    for x0, x1, y in product(BITS, repeat=3):
        z = 1 - y
        bits = (x0, x1)
        for a, b, c in product(BITS, repeat=3):
            if decoded_bit(x0, a, b) != bits[y] or decoded_bit(x0, a, c) != bits[z]:
                continue
            total += outcome_probability(params, x0 ^ x1, y, z, a, b, c, state)
    return total / 8


# success probabilities, closed forms; these accept numpy arrays for grid evaluation


def transverse_sum(eta0, eta1):
    return np.sqrt(np.clip(1 - np.square(eta0), 0, None)) + np.sqrt(np.clip(1 - np.square(eta1), 0, None))


def p_ab_formula(eta0, eta1, alpha):
    return (4 + (eta0 + eta1) * (np.cos(alpha) + np.sin(alpha))) / 8


def p_ac_formula(eta0, eta1, alpha, beta):
    cos_sq, sin_sq = np.square(np.cos(alpha)), np.square(np.sin(alpha))
    aligned = cos_sq * np.cos(beta) + sin_sq * np.sin(beta)
    crossed = cos_sq * np.sin(beta) + sin_sq * np.cos(beta)
    return (4 + 2 * aligned + crossed * transverse_sum(eta0, eta1)) / 8


def p_abc_formula(eta0, eta1, alpha, beta):
    sum_alpha = np.cos(alpha) + np.sin(alpha)
    return (
        0.25
        + np.cos(alpha + beta) * (np.cos(alpha) - np.sin(alpha)) / 8
        + (eta0 + eta1) * sum_alpha / 16
        + transverse_sum(eta0, eta1) * sum_alpha * np.sin(alpha + beta) / 16
    )


def p_ab_closed(params: ProtocolParams) -> float:
    return float(p_ab_formula(params.eta0, params.eta1, params.alpha))


def p_ac_closed(params: ProtocolParams) -> float:
    return float(p_ac_formula(params.eta0, params.eta1, params.alpha, params.beta))


def p_abc(params: ProtocolParams) -> float:
    return float(p_abc_formula(params.eta0, params.eta1, params.alpha, params.beta))


def success_report(params: ProtocolParams, branch: Branch) -> SuccessReport:
    return SuccessReport(
        p_ab=p_ab_closed(params),
        p_ac=p_ac_closed(params),
        p_abc=p_abc(params),
        branch=branch,
    )
