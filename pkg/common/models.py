"""
Copyright 2024 binary butterfly GmbH
Use of this source code is governed by an MIT-style license that can be found in the LICENSE.txt.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from common.exceptions import InvalidParameterException


class Branch(Enum):
    UNBIASED = 'unbiased'
    OPTIMIZED = 'optimized'


class Quantity(Enum):
    P_AB = 'p_ab'
    P_AC = 'p_ac'


class OutputFormat(Enum):
    CSV = 'csv'
    JSON = 'json'


class CellStatus(Enum):
    PASS = 'pass'
    FAIL = 'fail'
    EXCLUDED = 'excluded'
    INFO = 'info'


@dataclass(frozen=True)
class OutputColumn:
    name: str
    # decimals in csv output, None writes the value as it is
    precision: Optional[int] = None


@dataclass(frozen=True)
class SuccessReport:
    p_ab: float
    p_ac: float
    p_abc: float
    branch: Branch

    @property
    def minimum(self) -> float:
        return min(self.p_ab, self.p_ac)


@dataclass(frozen=True)
class OptimalSetting:
    eta0: float
    eta1: float
    alpha: float
    beta: float
    p_equal: float
    branch: Branch

    @property
    def alpha_degrees(self) -> float:
        return math.degrees(self.alpha)

    @property
    def beta_degrees(self) -> float:
        return math.degrees(self.beta)


@dataclass(frozen=True)
class RegionPoint:
    eta0: float
    eta1: float
    setting: OptimalSetting
    report: SuccessReport

    @property
    def violation(self) -> bool:
        return self.report.minimum >= 0.75 - 1e-12


@dataclass
class RegionScan:
    grid: int
    etas: list[float]
    # row-major, eta0 is the slow index
    points: list[RegionPoint]
    boundary: list[tuple[float, float]] = field(default_factory=list)

    def point(self, eta0_index: int, eta1_index: int) -> RegionPoint:
        return self.points[eta0_index * self.grid + eta1_index]

    @property
    def violation_count(self) -> int:
        return sum(1 for point in self.points if point.violation)


@dataclass(frozen=True)
class Bound:
    value: float
    clamped: bool = False


@dataclass
class BoundsReport:
    eta_low: float
    eta_up: float
    s_up: float
    t_up: float
    d_s_low: float
    d_t_low: float
    m: float
    # incompatibility degree of the nominal pair of Bob and the largest P_AB it allows
    d_s_nominal: float
    p_ab_max: float
    clamped: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class RandomnessReport:
    i_ab: float
    i_ac: float
    hmin_ab: float
    hmin_ac: float

    @property
    def hmin_total(self) -> float:
        return self.hmin_ab + self.hmin_ac


@dataclass(frozen=True)
class Trial:
    x: int
    a: int
    y: int
    b: int
    z: int
    c: int
    # half-wave plate angles in radians realising each party's projector
    alice_plate: float
    bob_plate: float
    charlie_plate: float


@dataclass
class TrialSchedule:
    quantity: Quantity
    trials: list[Trial]
    pair_rate: float
    duration: float
    sub_windows: int = 50

    @property
    def trial_count(self) -> int:
        return len(self.trials)


@dataclass(eq=False)
class CountsRecord:
    schedule: TrialSchedule
    # shape (trials, sub_windows)
    sub_counts: np.ndarray
    seed: Optional[int] = None

    def __post_init__(self):
        self.sub_counts = np.asarray(self.sub_counts, dtype=np.int64)
        if self.sub_counts.ndim != 2 or self.sub_counts.shape[0] != self.schedule.trial_count:
            raise InvalidParameterException(
                uid='sub_counts',
                message=f'counts of shape {self.sub_counts.shape} do not match {self.schedule.trial_count} trials',
            )
        if (self.sub_counts < 0).any():
            raise InvalidParameterException(uid='sub_counts', message='counts must be non-negative')

    @property
    def counts(self) -> np.ndarray:
        return self.sub_counts.sum(axis=1)

    @property
    def total(self) -> int:
        return int(self.sub_counts.sum())


@dataclass
class UncertaintyReport:
    quantity: Quantity
    estimate: float
    sd: float
    # keyed by (setting of Alice, setting of the decoder)
    setting_sds: dict[tuple[int, int], float] = field(default_factory=dict)


@dataclass(frozen=True)
class JointDecodingReport:
    eta0: float
    eta1: float
    alpha: float
    beta: float
    p_abc_unbiased: float
    p_abc_optimized: float

    @property
    def increment(self) -> float:
        return self.p_abc_optimized - self.p_abc_unbiased
