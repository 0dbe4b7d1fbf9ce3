"""
Copyright 2024 binary butterfly GmbH
Use of this source code is governed by an MIT-style license that can be found in the LICENSE.txt.
"""

from itertools import product
from typing import Optional

import numpy as np
from decouple import config

from common.exceptions import GroupingException
from common.models import CountsRecord, Quantity, Trial, TrialSchedule, UncertaintyReport
from sqrac.protocol import (
    BITS,
    ProtocolParams,
    alice_direction,
    bob_direction,
    charlie_direction,
    outcome_probability,
    sign,
    wave_plate_angle,
)
from sqrac.qcore import max_entangled_state

# setting combinations per full measurement: (x, y) for P_AB plus (x, y, z) for P_AC
SETTINGS_PER_MEASUREMENT = 4 + 8


def default_duration() -> float:
    return config('SQRAC_MC_DURATION', default=4.0, cast=float)


def calibrated_pair_rate(total_counts: Optional[float] = None, duration: Optional[float] = None) -> float:
    """
    Pair rate per setting combination such that one full measurement, i.e. both schedules, yields `total_counts`
    coincidences on average.
    """
    total_counts = total_counts or config('SQRAC_MC_TOTAL_COUNTS', default=400000.0, cast=float)
    duration = duration or default_duration()
    return total_counts / (SETTINGS_PER_MEASUREMENT * duration)


def spawn_seeds(master_seed: int, count: int) -> list[int]:
    children = np.random.SeedSequence(master_seed).spawn(count)
    return [int(child.generate_state(1)[0]) for child in children]


def _streams(seed: Optional[int]) -> tuple[np.random.Generator, np.random.Generator]:
    simulation, grouping = np.random.SeedSequence(0 if seed is None else seed).spawn(2)
    return np.random.default_rng(simulation), np.random.default_rng(grouping)


def build_schedule(
    quantity: Quantity,
    params: ProtocolParams,
    pair_rate: Optional[float] = None,
    duration: Optional[float] = None,
    sub_windows: Optional[int] = None,
) -> TrialSchedule:
    """
    P_AB needs Alice's and Bob's settings and outcomes plus both of Charlie's outcomes to trace him out, 32 trials.
    P_AC additionally scans Charlie's setting, 64 trials.
    """
    duration = duration or default_duration()
    trials: list[Trial] = []
    for x, a, y, b in product(BITS, repeat=4):
        charlie_settings = BITS if quantity == Quantity.P_AC else (y,)
        for z, c in product(charlie_settings, BITS):
            trials.append(
                Trial(
                    x=x,
                    a=a,
                    y=y,
                    b=b,
                    z=z,
                    c=c,
                    alice_plate=wave_plate_angle(alice_direction(x).scaled(sign(a))),
                    bob_plate=wave_plate_angle(bob_direction(y, params.alpha).scaled(sign(b))),
                    charlie_plate=wave_plate_angle(charlie_direction(z, params.beta).scaled(sign(c))),
                ),
            )
    return TrialSchedule(
        quantity=quantity,
        trials=trials,
        pair_rate=calibrated_pair_rate(duration=duration) if pair_rate is None else pair_rate,
        duration=duration,
        sub_windows=sub_windows or config('SQRAC_MC_GROUPS', default=50, cast=int),
    )


def trial_probabilities(schedule: TrialSchedule, params: ProtocolParams) -> np.ndarray:
    state = max_entangled_state()
    probabilities = [outcome_probability(params, t.x, t.y, t.z, t.a, t.b, t.c, state) for t in schedule.trials]
    return np.clip(np.array(probabilities), 0.0, None)


def simulate_counts(schedule: TrialSchedule, params: ProtocolParams, seed: int) -> CountsRecord:
    """
    Poisson coincidence counts for every trial, recorded per sub-window of the trial's measurement window.
    """
    expected = schedule.pair_rate * schedule.duration * trial_probabilities(schedule, params) / schedule.sub_windows
    generator, _ = _streams(seed)
    sub_counts = generator.poisson(np.repeat(expected[:, np.newaxis], schedule.sub_windows, axis=1))
    return CountsRecord(schedule=schedule, sub_counts=sub_counts, seed=seed)


def _decoder_setting(schedule: TrialSchedule, trial: Trial) -> int:
    return trial.y if schedule.quantity == Quantity.P_AB else trial.z


def _is_success(schedule: TrialSchedule, trial: Trial) -> bool:
    # the decoder guesses x0 ⊕ a ⊕ outcome; for bit 0 that means a = outcome, for bit 1 a ⊕ outcome = x0 ⊕ x1
    outcome = trial.b if schedule.quantity == Quantity.P_AB else trial.c
    setting = _decoder_setting(schedule, trial)
    return (trial.a ^ outcome) == (trial.x if setting else 0)


def _setting_estimates(schedule: TrialSchedule, counts: np.ndarray) -> dict[tuple[int, int], np.ndarray]:
    """
    Conditional success probability per (x, decoder setting). `counts` has trials on the first axis; any further axes
    are carried through.
    """
    success = np.array([_is_success(schedule, trial) for trial in schedule.trials])
    estimates = {}
    for x, setting in product(BITS, repeat=2):
        mask = np.array([trial.x == x and _decoder_setting(schedule, trial) == setting for trial in schedule.trials])
        total = counts[mask].sum(axis=0)
        if np.any(total == 0):
            raise GroupingException(uid=schedule.quantity.value, message=f'no counts for setting x={x}, decoder={setting}')
        estimates[(x, setting)] = counts[mask & success].sum(axis=0) / total
    return estimates


def reconstruct(record: CountsRecord) -> float:
    # each Alice setting x stands for two of the eight equiprobable (x0, x1, y) inputs
    estimates = _setting_estimates(record.schedule, record.counts)
    return float(sum(estimates.values()) / 4)


def estimate_sd(record: CountsRecord, groups: Optional[int] = None) -> UncertaintyReport:
    """
    Shuffles each trial's sub-window counts, splits them into `groups` random groups and evaluates every conditional
    success probability per group. The spread over groups, scaled to the full window, is the standard deviation of
    the full-window estimate; the per-setting deviations are summed linearly.
    """
    groups = groups or config('SQRAC_MC_GROUPS', default=50, cast=int)
    trial_count, sub_windows = record.sub_counts.shape
    if sub_windows < groups:
        raise GroupingException(uid='groups', message=f'{sub_windows} sub-windows cannot form {groups} groups')

    _, generator = _streams(record.seed)
    shuffled = generator.permuted(record.sub_counts, axis=1)
    usable = (sub_windows // groups) * groups
    grouped = shuffled[:, :usable].reshape(trial_count, groups, -1).sum(axis=2)

    setting_sds = {
        key: float(np.std(values, ddof=1) / np.sqrt(groups)) for key, values in _setting_estimates(record.schedule, grouped).items()
    }
    return UncertaintyReport(
        quantity=record.schedule.quantity,
        estimate=reconstruct(record),
        sd=sum(setting_sds.values()) / 4,
        setting_sds=setting_sds,
    )
